// SPDX-License-Identifier: Apache-2.0
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "tiht/measurements.hpp"

namespace tiht {

namespace {

// FFTW's planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct FourierEnsemble::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit Plans(const Shape& shape) {
        // FFTW is row-major (last index fastest); reversing the extents matches
        // the colexicographic layout.
        std::vector<int> n(shape.dims().rbegin(), shape.dims().rend());
        std::vector<Complex> in(static_cast<std::size_t>(shape.size()));
        std::vector<Complex> out(in.size());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        std::lock_guard lock(planner_mutex());
        forward = fftw_plan_dft(static_cast<int>(n.size()), n.data(), as_fftw(in.data()), as_fftw(out.data()),
                                FFTW_FORWARD, flags);
        backward = fftw_plan_dft(static_cast<int>(n.size()), n.data(), as_fftw(in.data()), as_fftw(out.data()),
                                 FFTW_BACKWARD, flags);
        if (!forward || !backward) {
            if (forward) fftw_destroy_plan(forward);
            if (backward) fftw_destroy_plan(backward);
            throw std::runtime_error("FFTW could not create a plan for shape " + shape.to_string());
        }
    }

    ~Plans() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }

    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

namespace {

std::vector<double> draw_signs(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<double> s(static_cast<std::size_t>(n));
    for (auto& e : s) e = coin(rng) ? 1.0 : -1.0;
    return s;
}

std::uint64_t sample_stream(std::uint64_t seed) { return seed ^ 0x9e3779b97f4a7c15ULL; }

}  // namespace

FourierEnsemble::FourierEnsemble(const Shape& shape, Index m, std::uint64_t seed)
    : FourierEnsemble(shape, draw_signs(shape.size(), seed), sample_without_replacement(shape.size(), m, sample_stream(seed))) {}

FourierEnsemble::FourierEnsemble(const Shape& shape, std::vector<double> signs, std::vector<Index> samples)
    : shape_(shape), signs_(std::move(signs)), samples_(std::move(samples)) {
    if (static_cast<Index>(signs_.size()) != shape_.size()) throw ArgumentError("need one sign per tensor entry");
    for (double s : signs_)
        if (s != 1.0 && s != -1.0) throw ArgumentError("signs must be +1 or -1");
    if (samples_.empty()) throw ArgumentError("Fourier ensemble needs at least one sample");
    std::sort(samples_.begin(), samples_.end());
    if (std::adjacent_find(samples_.begin(), samples_.end()) != samples_.end() || samples_.front() < 0 ||
        samples_.back() >= shape_.size()) {
        throw ArgumentError("Fourier samples must be distinct offsets inside the tensor");
    }
    plans_ = std::make_unique<Plans>(shape_);
}

FourierEnsemble::~FourierEnsemble() = default;

Vector<Complex> FourierEnsemble::apply(const Tensor<Complex>& x) const {
    check_input(x);
    const auto n = static_cast<std::size_t>(shape_.size());
    std::vector<Complex> in(n);
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = signs_[i] * x[static_cast<Index>(i)];
    fftw_execute_dft(plans_->forward, as_fftw(in.data()), as_fftw(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(rows()));
    Vector<Complex> y(rows());
    for (Index j = 0; j < rows(); ++j) y(j) = scale * out[static_cast<std::size_t>(samples_[static_cast<std::size_t>(j)])];
    return y;
}

Tensor<Complex> FourierEnsemble::adjoint(const Vector<Complex>& y) const {
    check_input(y);
    const auto n = static_cast<std::size_t>(shape_.size());
    std::vector<Complex> in(n, Complex(0.0));
    std::vector<Complex> out(n);
    for (Index j = 0; j < rows(); ++j) in[static_cast<std::size_t>(samples_[static_cast<std::size_t>(j)])] = y(j);
    // The unnormalized backward transform is the conjugate transpose of F.
    fftw_execute_dft(plans_->backward, as_fftw(in.data()), as_fftw(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(rows()));
    Tensor<Complex> x(shape_);
    for (std::size_t i = 0; i < n; ++i) x[static_cast<Index>(i)] = scale * signs_[i] * out[i];
    return x;
}

}  // namespace tiht
