#pragma once

// Thin RAII wrapper over FFTW's in-place 2-D complex transforms.

#include "helmprop/grid.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace helmprop {

namespace detail {
// FFTW's planner is not re-entrant; execution is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace detail

class Fft2d {
public:
    explicit Fft2d(int n) : n_(n) {
        if (n <= 0)
            throw std::invalid_argument("fft: size must be positive");
        ComplexGrid scratch(n, n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        std::lock_guard lock(detail::fftw_planner_mutex());
        forward_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        backward_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (forward_ == nullptr || backward_ == nullptr)
            throw std::runtime_error("fft: FFTW plan creation failed");
    }

    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;

    ~Fft2d() {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }

    int size() const noexcept { return n_; }

    /// Unnormalized forward transform, in place.
    void forward(ComplexGrid& data) const { execute(forward_, data); }

    /// Inverse transform including the 1/N^2 factor, in place.
    void inverse(ComplexGrid& data) const {
        execute(backward_, data);
        data /= static_cast<double>(n_) * n_;
    }

private:
    void execute(fftw_plan plan, ComplexGrid& data) const {
        if (data.rows() != n_ || data.cols() != n_)
            throw std::invalid_argument("fft: data shape does not match the plan");
        auto* buf = reinterpret_cast<fftw_complex*>(data.data());
        fftw_execute_dft(plan, buf, buf);
    }

    int n_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace helmprop
