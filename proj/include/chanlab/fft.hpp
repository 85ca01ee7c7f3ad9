/// @file fft.hpp
/// @brief Real FFTs along the periodic direction, with split-complex storage.
///
/// A Spectrum holds half-spectrum coefficients of a real Ny x Nx field,
/// normalized so that column m is the amplitude of exp(i kappa_m x1).
/// Plans are cached per transform size; FFTW planning is guarded by a mutex
/// and uses FFTW_ESTIMATE so plan choice (and hence roundoff) is reproducible.
#pragma once

#include <fftw3.h>

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <mutex>

#include "chanlab/common.hpp"

namespace chanlab {

struct Spectrum {
    Eigen::ArrayXXd re, im;  // Ny x (Nx/2+1)
    int nx = 0;              // physical sample count
    double L1 = 0.0;

    int n_modes() const { return static_cast<int>(re.cols()); }
    int ny() const { return static_cast<int>(re.rows()); }
    double kappa(int m) const { return 2.0 * pi * m / L1; }
    bool has_nyquist() const { return nx % 2 == 0; }
};

namespace detail {

struct FftPlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
    int ny = 0;
};

/// One cached plan pair per (nx, ny); plans run on caller buffers.
inline FftPlanPair& fft_plans(int nx, int ny) {
    static std::map<std::pair<int, int>, FftPlanPair> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(nx, ny);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    FftPlanPair p;
    p.ny = ny;
    std::vector<double> rbuf(static_cast<std::size_t>(nx) * ny);
    std::vector<std::complex<double>> cbuf(static_cast<std::size_t>(nx / 2 + 1) * ny);
    int n[] = {nx};
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_many_dft_r2c(1, n, ny, rbuf.data(), nullptr, ny, 1,
                                   reinterpret_cast<fftw_complex*>(cbuf.data()), nullptr, ny, 1,
                                   flags);
    p.inv = fftw_plan_many_dft_c2r(1, n, ny, reinterpret_cast<fftw_complex*>(cbuf.data()),
                                   nullptr, ny, 1, rbuf.data(), nullptr, ny, 1, flags);
    if (!p.fwd || !p.inv) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(key, p).first->second;
}

}  // namespace detail

inline Spectrum fft_forward(const Eigen::ArrayXXd& phys, double L1) {
    const int ny = static_cast<int>(phys.rows());
    const int nx = static_cast<int>(phys.cols());
    const int nk = nx / 2 + 1;
    auto& plans = detail::fft_plans(nx, ny);

    Eigen::ArrayXXd work = phys;  // r2c keeps input, but stay safe with a copy
    Eigen::ArrayXXcd cbuf(ny, nk);
    fftw_execute_dft_r2c(plans.fwd, work.data(),
                         reinterpret_cast<fftw_complex*>(cbuf.data()));
    Spectrum s;
    s.nx = nx;
    s.L1 = L1;
    s.re = cbuf.real() / double(nx);
    s.im = cbuf.imag() / double(nx);
    return s;
}

inline Eigen::ArrayXXd fft_inverse(const Spectrum& s) {
    const int ny = s.ny();
    const int nx = s.nx;
    auto& plans = detail::fft_plans(nx, ny);
    Eigen::ArrayXXcd cbuf(ny, s.n_modes());
    cbuf.real() = s.re;
    cbuf.imag() = s.im;
    Eigen::ArrayXXd out(ny, nx);
    fftw_execute_dft_c2r(plans.inv, reinterpret_cast<fftw_complex*>(cbuf.data()), out.data());
    return out;
}

/// In-place d/dx1: multiply mode m by i*kappa_m. A bare Nyquist mode has no
/// well-defined odd derivative; it is zeroed, as usual.
inline void spectral_ddx1(Spectrum& s) {
    for (int m = 0; m < s.n_modes(); ++m) {
        double k = s.kappa(m);
        Eigen::ArrayXd tmp = s.re.col(m);
        s.re.col(m) = -k * s.im.col(m);
        s.im.col(m) = k * tmp;
    }
    if (s.has_nyquist()) {
        s.re.col(s.n_modes() - 1).setZero();
        s.im.col(s.n_modes() - 1).setZero();
    }
}

/// x1-mean of f^2 as an x2-profile (Parseval over the half spectrum).
inline Eigen::ArrayXd spectral_mean_square_profile(const Spectrum& s) {
    const int nk = s.n_modes();
    Eigen::ArrayXd prof = s.re.col(0).square() + s.im.col(0).square();
    const int last = s.has_nyquist() ? nk - 1 : nk;
    for (int m = 1; m < last; ++m)
        prof += 2.0 * (s.re.col(m).square() + s.im.col(m).square());
    if (s.has_nyquist())
        prof += s.re.col(nk - 1).square() + s.im.col(nk - 1).square();
    return prof;
}

/// Zero-pad (or truncate) the half spectrum to a new physical size.
inline Spectrum spectral_resize(const Spectrum& s, int nx_new) {
    Spectrum out;
    out.nx = nx_new;
    out.L1 = s.L1;
    const int nk_new = nx_new / 2 + 1;
    out.re = Eigen::ArrayXXd::Zero(s.ny(), nk_new);
    out.im = Eigen::ArrayXXd::Zero(s.ny(), nk_new);
    int ncopy = std::min(s.n_modes(), nk_new);
    out.re.leftCols(ncopy) = s.re.leftCols(ncopy);
    out.im.leftCols(ncopy) = s.im.leftCols(ncopy);
    // A shared Nyquist column would need special weighting; sizes produced by
    // next_fast_size keep active modes strictly below it, so just zero it.
    if (out.has_nyquist() && nk_new <= s.n_modes())
        out.im.col(nk_new - 1).setZero();
    return out;
}

/// Largest mode index whose energy exceeds rel_tol * total energy.
inline int max_active_mode(const Spectrum& s, double rel_tol = 1e-26) {
    const int nk = s.n_modes();
    Eigen::ArrayXd energy(nk);
    for (int m = 0; m < nk; ++m)
        energy(m) = (s.re.col(m).square() + s.im.col(m).square()).sum();
    double total = energy.sum();
    if (total <= 0.0) return 0;
    int last = 0;
    for (int m = 0; m < nk; ++m)
        if (energy(m) > rel_tol * total) last = m;
    return last;
}

}  // namespace chanlab
