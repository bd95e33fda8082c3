// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <complex>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "tiht/errors.hpp"

namespace tiht {

using Index = Eigen::Index;
using Complex = std::complex<double>;

// The two scalar fields supported throughout the library.
template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Complex>;

template <Scalar T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <Scalar T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

enum class Field { Real, Complex };

template <Scalar T>
constexpr Field field_of() {
    return std::is_same_v<T, double> ? Field::Real : Field::Complex;
}

std::string_view to_string(Field f);
Field parse_field(std::string_view s);

// Conjugate for both fields (identity on reals).
template <Scalar T>
inline T conj(T x) {
    if constexpr (std::is_same_v<T, double>) {
        return x;
    } else {
        return std::conj(x);
    }
}

// Tensor extents n_1 x ... x n_d. Modes are 0-based in code.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<Index> dims);
    Shape(std::initializer_list<Index> dims) : Shape(std::vector<Index>(dims)) {}

    Index order() const { return static_cast<Index>(dims_.size()); }
    Index size() const { return size_; }
    Index operator[](Index k) const { return dims_[static_cast<std::size_t>(k)]; }
    const std::vector<Index>& dims() const { return dims_; }

    // Column strides of the colexicographic (first index fastest) layout.
    std::vector<Index> strides() const;

    bool operator==(const Shape& other) const = default;

    // "10x10x10"
    std::string to_string() const;
    static Shape parse(std::string_view text);

private:
    std::vector<Index> dims_;
    Index size_ = 0;
};

// Dense d-way array stored in colexicographic order: the offset of
// (i_1, ..., i_d) is i_1 + n_1 * (i_2 + n_2 * (i_3 + ...)).
template <Scalar T>
class Tensor {
public:
    using value_type = T;

    Tensor() = default;
    explicit Tensor(Shape shape) : shape_(std::move(shape)), data_(static_cast<std::size_t>(shape_.size()), T{0}) {}
    Tensor(Shape shape, std::vector<T> data) : shape_(std::move(shape)), data_(std::move(data)) {
        if (static_cast<Index>(data_.size()) != shape_.size()) {
            throw ArgumentError("tensor data length " + std::to_string(data_.size()) +
                                " does not match shape " + shape_.to_string());
        }
    }

    static Tensor zeros(const Shape& shape) { return Tensor(shape); }

    const Shape& shape() const { return shape_; }
    Index order() const { return shape_.order(); }
    Index size() const { return shape_.size(); }
    bool empty() const { return data_.empty(); }

    std::span<const T> data() const { return data_; }
    std::span<T> data() { return data_; }

    Eigen::Map<const Vector<T>> vec() const { return {data_.data(), size()}; }
    Eigen::Map<Vector<T>> vec() { return {data_.data(), size()}; }

    T& operator[](Index offset) { return data_[static_cast<std::size_t>(offset)]; }
    const T& operator[](Index offset) const { return data_[static_cast<std::size_t>(offset)]; }

    Index offset(std::span<const Index> idx) const;
    T& operator()(std::initializer_list<Index> idx) { return data_[static_cast<std::size_t>(offset(idx))]; }
    const T& operator()(std::initializer_list<Index> idx) const {
        return data_[static_cast<std::size_t>(offset(idx))];
    }
    T& at(std::span<const Index> idx) { return data_[static_cast<std::size_t>(offset(idx))]; }
    const T& at(std::span<const Index> idx) const { return data_[static_cast<std::size_t>(offset(idx))]; }

    Tensor& operator+=(const Tensor& other);
    Tensor& operator-=(const Tensor& other);
    Tensor& operator*=(T alpha);

    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(T alpha, Tensor a) { return a *= alpha; }

    bool operator==(const Tensor& other) const = default;

private:
    Shape shape_;
    std::vector<T> data_;
};

// Real tensor promoted to the complex field.
Tensor<Complex> to_complex(const Tensor<double>& x);
// Entrywise real part.
Tensor<double> real_part(const Tensor<Complex>& x);

// Ordered, strictly increasing, nonempty subset of modes.
class ModeSet {
public:
    explicit ModeSet(std::vector<Index> modes);
    ModeSet(std::initializer_list<Index> modes) : ModeSet(std::vector<Index>(modes)) {}

    // Contiguous range [first, last).
    static ModeSet range(Index first, Index last);

    const std::vector<Index>& modes() const { return modes_; }
    Index size() const { return static_cast<Index>(modes_.size()); }
    bool contains(Index k) const;
    void validate(Index order) const;
    std::vector<Index> complement(Index order) const;

private:
    std::vector<Index> modes_;
};

// S-matricization: rows indexed by the modes of S, columns by its complement,
// both linearized colexicographically.
template <Scalar T>
Matrix<T> matricize(const Tensor<T>& x, const ModeSet& s);

// Inverse of matricize for the same mode set and shape.
template <Scalar T>
Tensor<T> tensorize(const Matrix<T>& m, const ModeSet& s, const Shape& shape);

// Mode-k unfolding, shorthand for matricize(x, {k}).
template <Scalar T>
Matrix<T> unfold(const Tensor<T>& x, Index k) {
    return matricize(x, ModeSet{k});
}

// (X x_k A)(.., j, ..) = sum_i X(.., i, ..) A(j, i).
template <Scalar T>
Tensor<T> mode_product(const Tensor<T>& x, const Matrix<T>& a, Index k);

// <X, Y> = sum conj(X) Y.
template <Scalar T>
T inner_product(const Tensor<T>& x, const Tensor<T>& y);

template <Scalar T>
double frobenius_norm(const Tensor<T>& x) {
    return x.vec().norm();
}

template <Scalar T>
bool all_finite(const Tensor<T>& x) {
    return x.vec().allFinite();
}

}  // namespace tiht
