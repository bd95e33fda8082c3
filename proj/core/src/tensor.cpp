// SPDX-License-Identifier: Apache-2.0
#include "tiht/tensor.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace tiht {

std::string_view to_string(Field f) {
    return f == Field::Real ? "real" : "complex";
}

Field parse_field(std::string_view s) {
    if (s == "real") return Field::Real;
    if (s == "complex") return Field::Complex;
    throw ArgumentError("unknown scalar field '" + std::string(s) + "'");
}

Shape::Shape(std::vector<Index> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ArgumentError("tensor order must be at least 1");
    Index n = 1;
    for (Index e : dims_) {
        if (e < 1) throw ArgumentError("tensor extents must be positive");
        if (n > std::numeric_limits<Index>::max() / e) throw ArgumentError("tensor size overflows Index");
        n *= e;
    }
    size_ = n;
}

std::vector<Index> Shape::strides() const {
    std::vector<Index> s(dims_.size());
    Index acc = 1;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        s[k] = acc;
        acc *= dims_[k];
    }
    return s;
}

std::string Shape::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (k) out += 'x';
        out += std::to_string(dims_[k]);
    }
    return out;
}

Shape Shape::parse(std::string_view text) {
    std::vector<Index> dims;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find_first_of("x,", pos);
        if (next == std::string_view::npos) next = text.size();
        auto token = text.substr(pos, next - pos);
        Index value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
            throw ArgumentError("cannot parse shape '" + std::string(text) + "'");
        }
        dims.push_back(value);
        pos = next + 1;
    }
    return Shape(std::move(dims));
}

template <Scalar T>
Index Tensor<T>::offset(std::span<const Index> idx) const {
    if (static_cast<Index>(idx.size()) != order()) throw ArgumentError("index arity does not match tensor order");
    Index off = 0;
    Index stride = 1;
    for (Index k = 0; k < order(); ++k) {
        Index i = idx[static_cast<std::size_t>(k)];
        if (i < 0 || i >= shape_[k]) throw ArgumentError("tensor index out of range");
        off += i * stride;
        stride *= shape_[k];
    }
    return off;
}

template <Scalar T>
Tensor<T>& Tensor<T>::operator+=(const Tensor& other) {
    if (shape_ != other.shape_) throw ArgumentError("shape mismatch in tensor addition");
    vec() += other.vec();
    return *this;
}

template <Scalar T>
Tensor<T>& Tensor<T>::operator-=(const Tensor& other) {
    if (shape_ != other.shape_) throw ArgumentError("shape mismatch in tensor subtraction");
    vec() -= other.vec();
    return *this;
}

template <Scalar T>
Tensor<T>& Tensor<T>::operator*=(T alpha) {
    vec() *= alpha;
    return *this;
}

Tensor<Complex> to_complex(const Tensor<double>& x) {
    Tensor<Complex> out(x.shape());
    out.vec() = x.vec().cast<Complex>();
    return out;
}

Tensor<double> real_part(const Tensor<Complex>& x) {
    Tensor<double> out(x.shape());
    out.vec() = x.vec().real();
    return out;
}

ModeSet::ModeSet(std::vector<Index> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) throw ArgumentError("mode set must be nonempty");
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i] < 0) throw ArgumentError("mode indices must be nonnegative");
        if (i > 0 && modes_[i] <= modes_[i - 1]) throw ArgumentError("mode set must be strictly increasing");
    }
}

ModeSet ModeSet::range(Index first, Index last) {
    if (last <= first) throw ArgumentError("empty mode range");
    std::vector<Index> m;
    for (Index k = first; k < last; ++k) m.push_back(k);
    return ModeSet(std::move(m));
}

bool ModeSet::contains(Index k) const {
    return std::binary_search(modes_.begin(), modes_.end(), k);
}

void ModeSet::validate(Index order) const {
    if (modes_.back() >= order) {
        throw ArgumentError("mode " + std::to_string(modes_.back()) + " out of range for order " +
                            std::to_string(order));
    }
}

std::vector<Index> ModeSet::complement(Index order) const {
    std::vector<Index> c;
    for (Index k = 0; k < order; ++k)
        if (!contains(k)) c.push_back(k);
    return c;
}

namespace {

// Row/column stride contributed by each tensor mode to a matricization.
struct MatricizationLayout {
    Index rows = 1;
    Index cols = 1;
    std::vector<Index> row_stride;
    std::vector<Index> col_stride;
};

MatricizationLayout layout_for(const Shape& shape, const ModeSet& s) {
    s.validate(shape.order());
    MatricizationLayout l;
    const auto d = static_cast<std::size_t>(shape.order());
    l.row_stride.assign(d, 0);
    l.col_stride.assign(d, 0);
    for (std::size_t k = 0; k < d; ++k) {
        if (s.contains(static_cast<Index>(k))) {
            l.row_stride[k] = l.rows;
            l.rows *= shape.dims()[k];
        } else {
            l.col_stride[k] = l.cols;
            l.cols *= shape.dims()[k];
        }
    }
    return l;
}

// Visits every entry in storage order, passing (offset, row, col).
template <typename F>
void for_each_entry(const Shape& shape, const MatricizationLayout& l, F&& f) {
    const auto d = static_cast<std::size_t>(shape.order());
    std::vector<Index> idx(d, 0);
    Index row = 0;
    Index col = 0;
    const Index n = shape.size();
    for (Index off = 0; off < n; ++off) {
        f(off, row, col);
        for (std::size_t k = 0; k < d; ++k) {
            if (++idx[k] < shape.dims()[k]) {
                row += l.row_stride[k];
                col += l.col_stride[k];
                break;
            }
            row -= l.row_stride[k] * (shape.dims()[k] - 1);
            col -= l.col_stride[k] * (shape.dims()[k] - 1);
            idx[k] = 0;
        }
    }
}

bool is_leading_range(const ModeSet& s) {
    for (std::size_t i = 0; i < s.modes().size(); ++i)
        if (s.modes()[i] != static_cast<Index>(i)) return false;
    return true;
}

}  // namespace

template <Scalar T>
Matrix<T> matricize(const Tensor<T>& x, const ModeSet& s) {
    auto l = layout_for(x.shape(), s);
    if (is_leading_range(s)) {
        // Leading modes as rows is a pure reshape in colexicographic layout.
        return Eigen::Map<const Matrix<T>>(x.data().data(), l.rows, l.cols);
    }
    Matrix<T> m(l.rows, l.cols);
    const T* src = x.data().data();
    for_each_entry(x.shape(), l, [&](Index off, Index r, Index c) { m(r, c) = src[off]; });
    return m;
}

template <Scalar T>
Tensor<T> tensorize(const Matrix<T>& m, const ModeSet& s, const Shape& shape) {
    auto l = layout_for(shape, s);
    if (m.rows() != l.rows || m.cols() != l.cols) {
        throw ArgumentError("matrix of size " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            " does not match matricization of shape " + shape.to_string());
    }
    Tensor<T> x(shape);
    if (is_leading_range(s)) {
        std::copy(m.data(), m.data() + m.size(), x.data().begin());
        return x;
    }
    T* dst = x.data().data();
    for_each_entry(shape, l, [&](Index off, Index r, Index c) { dst[off] = m(r, c); });
    return x;
}

template <Scalar T>
Tensor<T> mode_product(const Tensor<T>& x, const Matrix<T>& a, Index k) {
    if (k < 0 || k >= x.order()) throw ArgumentError("mode index out of range in mode_product");
    const Index nk = x.shape()[k];
    if (a.cols() != nk) {
        throw ArgumentError("mode_product: matrix has " + std::to_string(a.cols()) + " columns, mode " +
                            std::to_string(k) + " has extent " + std::to_string(nk));
    }
    Index left = 1;
    for (Index j = 0; j < k; ++j) left *= x.shape()[j];
    const Index right = x.size() / (left * nk);

    auto dims = x.shape().dims();
    dims[static_cast<std::size_t>(k)] = a.rows();
    Tensor<T> y{Shape(dims)};

    if (left == 1) {
        Eigen::Map<const Matrix<T>> xs(x.data().data(), nk, right);
        Eigen::Map<Matrix<T>> ys(y.data().data(), a.rows(), right);
        ys.noalias() = a * xs;
        return y;
    }
    // Each slab with fixed trailing index is a left x n_k column-major matrix.
    const Index in_slab = left * nk;
    const Index out_slab = left * a.rows();
    for (Index r = 0; r < right; ++r) {
        Eigen::Map<const Matrix<T>> xs(x.data().data() + r * in_slab, left, nk);
        Eigen::Map<Matrix<T>> ys(y.data().data() + r * out_slab, left, a.rows());
        ys.noalias() = xs * a.transpose();
    }
    return y;
}

template <Scalar T>
T inner_product(const Tensor<T>& x, const Tensor<T>& y) {
    if (x.shape() != y.shape()) throw ArgumentError("shape mismatch in inner_product");
    return x.vec().dot(y.vec());  // Eigen's dot conjugates the first argument
}

#define TIHT_INSTANTIATE(T)                                                         \
    template class Tensor<T>;                                                       \
    template Matrix<T> matricize(const Tensor<T>&, const ModeSet&);                 \
    template Tensor<T> tensorize(const Matrix<T>&, const ModeSet&, const Shape&);   \
    template Tensor<T> mode_product(const Tensor<T>&, const Matrix<T>&, Index);     \
    template T inner_product(const Tensor<T>&, const Tensor<T>&);

TIHT_INSTANTIATE(double)
TIHT_INSTANTIATE(Complex)

#undef TIHT_INSTANTIATE

}  // namespace tiht
