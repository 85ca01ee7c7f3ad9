/// @file operators.hpp
/// @brief Differential/integral operators, Dirichlet inverse Laplacian and
///        the Leray projector on channel fields.
#pragma once

#include "chanlab/fft.hpp"
#include "chanlab/field.hpp"

namespace chanlab {

inline Spectrum to_spectrum(const ScalarField& f) { return fft_forward(f.values, f.grid->L1()); }

inline ScalarField to_field(GridPtr g, const Spectrum& s) {
    return ScalarField(std::move(g), fft_inverse(s));
}

struct SpecVec {
    Spectrum c1, c2;
};

inline SpecVec to_spectrum(const VectorField& v) {
    return {to_spectrum(v.u1), to_spectrum(v.u2)};
}

inline VectorField to_field(GridPtr g, const SpecVec& s, BcTag tag = BcTag::none) {
    VectorField v;
    v.u1 = to_field(g, s.c1);
    v.u2 = to_field(std::move(g), s.c2);
    v.bc_tag = tag;
    return v;
}

// --- derivatives -------------------------------------------------------------

inline ScalarField derivative_x1(const ScalarField& f) {
    Spectrum s = to_spectrum(f);
    spectral_ddx1(s);
    return to_field(f.grid, s);
}

inline ScalarField derivative_x2(const ScalarField& f) {
    return ScalarField(f.grid, f.grid->deriv_x2(f.values.matrix()).array());
}

/// d/dx2 of a split spectrum, in place.
inline void spectral_ddx2(const ChannelGrid& g, Spectrum& s) {
    s.re = g.deriv_x2(s.re.matrix()).array();
    s.im = g.deriv_x2(s.im.matrix()).array();
}

inline VectorField gradient(const ScalarField& f) {
    VectorField g;
    g.u1 = derivative_x1(f);
    g.u2 = derivative_x2(f);
    g.bc_tag = BcTag::none;
    return g;
}

inline TensorField gradient(const VectorField& v) {
    TensorField t;
    t.g11 = derivative_x1(v.u1);
    t.g12 = derivative_x2(v.u1);
    t.g21 = derivative_x1(v.u2);
    t.g22 = derivative_x2(v.u2);
    return t;
}

inline ScalarField divergence(const VectorField& v) {
    ScalarField d = derivative_x1(v.u1);
    d.values += v.u2.grid->deriv_x2(v.u2.values.matrix()).array();
    return d;
}

/// perp-gradient (-d/dx2, d/dx1): a divergence-free field from a streamfunction.
inline VectorField perp_gradient(const ScalarField& psi) {
    VectorField v;
    v.u1 = derivative_x2(psi);
    v.u1.values = -v.u1.values;
    v.u2 = derivative_x1(psi);
    v.bc_tag = BcTag::none;
    return v;
}

// --- weak Laplacian and its Dirichlet inverse --------------------------------

/// Weak Laplacian companion of solve_helmholtz_dirichlet: per x1 mode,
/// lap = -kappa^2 f - M^{-1} K f. Interior rows invert the Dirichlet solve
/// exactly (wall rows carry the weak boundary flux and are not meaningful).
inline void spectral_weak_laplacian(const ChannelGrid& g, Spectrum& s) {
    auto apply = [&](Eigen::ArrayXXd& part) {
        Eigen::MatrixXd k = g.stiffness(part.matrix());
        k.array().colwise() /= g.weights();
        for (int m = 0; m < part.cols(); ++m) {
            double kap = 2.0 * pi * m / s.L1;
            part.col(m) = -kap * kap * part.col(m) - k.col(m).array();
        }
    };
    apply(s.re);
    apply(s.im);
}

inline ScalarField laplacian(const ScalarField& f) {
    Spectrum s = to_spectrum(f);
    spectral_weak_laplacian(*f.grid, s);
    return to_field(f.grid, s);
}

inline Eigen::ArrayXd kappa2_of(const Spectrum& s) {
    Eigen::ArrayXd k2(s.n_modes());
    for (int m = 0; m < s.n_modes(); ++m) k2(m) = s.kappa(m) * s.kappa(m);
    return k2;
}

/// Solve lap g = f with g(+-1/2) = 0, periodic in x1.
inline Spectrum spectral_inverse_laplacian_dirichlet(const ChannelGrid& g, const Spectrum& f) {
    Spectrum out = f;
    Eigen::ArrayXd k2 = kappa2_of(f);
    out.re = g.solve_helmholtz_dirichlet(f.re.matrix(), k2).array();
    out.im = g.solve_helmholtz_dirichlet(f.im.matrix(), k2).array();
    return out;
}

inline ScalarField inverse_laplacian_dirichlet(const ScalarField& f) {
    Spectrum s = to_spectrum(f);
    s = spectral_inverse_laplacian_dirichlet(*f.grid, s);
    return to_field(f.grid, s);
}

// --- Leray projection ---------------------------------------------------------

/// Project onto weakly divergence-free fields with zero normal wall trace:
/// phi solves the mass-weighted normal equations of |V - grad phi|, which is
/// the Neumann pressure problem; the k = 0 mode keeps (V1, 0) exactly.
inline void spectral_leray_project(const ChannelGrid& g, SpecVec& v) {
    const int nk = v.c1.n_modes();
    const auto& w = g.weights();
    Eigen::ArrayXd k2 = kappa2_of(v.c1);

    // weak rhs: -i kappa M V1 + Dbar^T M V2, split parts
    Eigen::ArrayXXd m2re = v.c2.re.colwise() * w;
    Eigen::ArrayXXd m2im = v.c2.im.colwise() * w;
    Eigen::MatrixXd rhs_re = g.deriv_x2_transpose(m2re.matrix());
    Eigen::MatrixXd rhs_im = g.deriv_x2_transpose(m2im.matrix());
    for (int m = 0; m < nk; ++m) {
        double kap = v.c1.kappa(m);
        rhs_re.col(m).array() += kap * (w * v.c1.im.col(m));
        rhs_im.col(m).array() -= kap * (w * v.c1.re.col(m));
    }
    Eigen::ArrayXd shift = k2;
    shift(0) = 1.0;  // dummy; column 0 is overwritten below
    Eigen::ArrayXXd phi_re = g.solve_helmholtz_neumann(rhs_re, shift).array();
    Eigen::ArrayXXd phi_im = g.solve_helmholtz_neumann(rhs_im, shift).array();

    Eigen::ArrayXXd dphi_re = g.deriv_x2(phi_re.matrix()).array();
    Eigen::ArrayXXd dphi_im = g.deriv_x2(phi_im.matrix()).array();
    for (int m = 1; m < nk; ++m) {
        double kap = v.c1.kappa(m);
        v.c1.re.col(m) += kap * phi_im.col(m);
        v.c1.im.col(m) -= kap * phi_re.col(m);
        v.c2.re.col(m) -= dphi_re.col(m);
        v.c2.im.col(m) -= dphi_im.col(m);
    }
    v.c2.re.col(0).setZero();  // k = 0: divergence-free mean mode is (V1(x2), 0)
    v.c2.im.col(0).setZero();
    v.c1.im.col(0).setZero();
}

/// Discrete compatibility of the k = 0 Neumann problem: volume mean of div V
/// minus the wall flux of V2. Identically zero in the continuum.
inline double leray_k0_defect(const VectorField& v) {
    double mean_div = volume_average(divergence(v));
    Eigen::ArrayXd prof = horizontal_average(v.u2);
    double flux = prof(prof.size() - 1) - prof(0);
    return std::abs(mean_div - flux);
}

inline VectorField leray_project(const VectorField& v, double* k0_defect = nullptr) {
    if (k0_defect) *k0_defect = leray_k0_defect(v);
    SpecVec s = to_spectrum(v);
    spectral_leray_project(*v.grid(), s);
    return to_field(v.grid(), s, BcTag::none);
}

/// <|grad g|^2> of a scalar spectrum (Parseval in x1, quadrature in x2).
inline double spectral_mean_sq_gradient(const ChannelGrid& g, const Spectrum& s) {
    Spectrum dx = s;
    spectral_ddx1(dx);
    Spectrum dy = s;
    spectral_ddx2(g, dy);
    Eigen::ArrayXd prof = spectral_mean_square_profile(dx) + spectral_mean_square_profile(dy);
    return g.profile_mean(prof);
}

/// grad (lap^{-1} (P W)) with the component-wise Dirichlet inverse.
inline TensorField grad_inv_lap_project(const VectorField& w) {
    const ChannelGrid& g = *w.grid();
    SpecVec s = to_spectrum(w);
    spectral_leray_project(g, s);
    Spectrum g1 = spectral_inverse_laplacian_dirichlet(g, s.c1);
    Spectrum g2 = spectral_inverse_laplacian_dirichlet(g, s.c2);
    TensorField t;
    Spectrum tmp = g1;
    spectral_ddx1(tmp);
    t.g11 = to_field(w.grid(), tmp);
    tmp = g1;
    spectral_ddx2(g, tmp);
    t.g12 = to_field(w.grid(), tmp);
    tmp = g2;
    spectral_ddx1(tmp);
    t.g21 = to_field(w.grid(), tmp);
    tmp = g2;
    spectral_ddx2(g, tmp);
    t.g22 = to_field(w.grid(), tmp);
    return t;
}

// --- advection ----------------------------------------------------------------

/// (U . grad) v with 3/2-rule dealiasing of the quadratic product.
inline VectorField advect(const VectorField& u, const VectorField& v, bool dealias = true) {
    const ChannelGrid& g = *u.grid();
    const int nx = g.nx();
    const int nxp = dealias ? next_fast_size((3 * nx) / 2) : nx;

    auto pad_phys = [&](const ScalarField& f) {
        if (nxp == nx) return f.values;
        return fft_inverse(spectral_resize(to_spectrum(f), nxp));
    };
    auto pad_spec_phys = [&](Spectrum s) {
        if (nxp != nx) s = spectral_resize(s, nxp);
        return fft_inverse(s);
    };

    Eigen::ArrayXXd u1p = pad_phys(u.u1), u2p = pad_phys(u.u2);

    auto grad_pair = [&](const ScalarField& f, Eigen::ArrayXXd& fx, Eigen::ArrayXXd& fy) {
        Spectrum s = to_spectrum(f);
        Spectrum sx = s;
        spectral_ddx1(sx);
        fx = pad_spec_phys(sx);
        spectral_ddx2(g, s);
        fy = pad_spec_phys(s);
    };
    Eigen::ArrayXXd v1x, v1y, v2x, v2y;
    grad_pair(v.u1, v1x, v1y);
    grad_pair(v.u2, v2x, v2y);

    Eigen::ArrayXXd w1 = u1p * v1x + u2p * v1y;
    Eigen::ArrayXXd w2 = u1p * v2x + u2p * v2y;

    VectorField out;
    if (nxp == nx) {
        out.u1 = ScalarField(u.grid(), std::move(w1));
        out.u2 = ScalarField(u.grid(), std::move(w2));
    } else {
        out.u1 = to_field(u.grid(), spectral_resize(fft_forward(w1, g.L1()), nx));
        out.u2 = to_field(u.grid(), spectral_resize(fft_forward(w2, g.L1()), nx));
    }
    out.bc_tag = BcTag::none;
    return out;
}

/// Exact mass-weighted adjoint of advect(u, .), needed by symmetric solvers:
/// <advect(u, a), b> = <a, advect_adjoint(u, b)> to machine precision.
inline VectorField advect_adjoint(const VectorField& u, const VectorField& z, bool dealias = true) {
    const ChannelGrid& g = *u.grid();
    const int nx = g.nx();
    const int nxp = dealias ? next_fast_size((3 * nx) / 2) : nx;
    const auto& w = g.weights();

    auto pad_phys = [&](const ScalarField& f) {
        if (nxp == nx) return f.values;
        return fft_inverse(spectral_resize(to_spectrum(f), nxp));
    };
    Eigen::ArrayXXd u1p = pad_phys(u.u1), u2p = pad_phys(u.u2);

    // Per component c: out_c = Grad^* (U .* Pad z_c), with Grad^* the
    // M-adjoint (-i kappa, M^{-1} Dbar^T M) and Pad^* the spectral truncation.
    auto component = [&](const ScalarField& zc) {
        Eigen::ArrayXXd zp = pad_phys(zc);
        Spectrum s1 = fft_forward((u1p * zp).eval(), g.L1());
        Spectrum s2 = fft_forward((u2p * zp).eval(), g.L1());
        if (nxp != nx) {
            s1 = spectral_resize(s1, nx);
            s2 = spectral_resize(s2, nx);
        }
        // -(i kappa)^* s1 = i kappa s1... adjoint of (i kappa .) is (-i kappa .)
        for (int m = 0; m < s1.n_modes(); ++m) {
            double kap = s1.kappa(m);
            double tmp;
            for (int j = 0; j < s1.ny(); ++j) {
                tmp = s1.re(j, m);
                s1.re(j, m) = kap * s1.im(j, m);
                s1.im(j, m) = -kap * tmp;
            }
        }
        if (s1.has_nyquist()) {
            s1.re.col(s1.n_modes() - 1).setZero();
            s1.im.col(s1.n_modes() - 1).setZero();
        }
        Eigen::ArrayXXd m2re = s2.re.colwise() * w;
        Eigen::ArrayXXd m2im = s2.im.colwise() * w;
        s2.re = g.deriv_x2_transpose(m2re.matrix()).array().colwise() / w;
        s2.im = g.deriv_x2_transpose(m2im.matrix()).array().colwise() / w;
        s1.re += s2.re;
        s1.im += s2.im;
        return to_field(zc.grid, s1);
    };

    VectorField out;
    out.u1 = component(z.u1);
    out.u2 = component(z.u2);
    out.u1.values = -out.u1.values;
    out.u2.values = -out.u2.values;
    out.bc_tag = BcTag::none;
    return out;
}

}  // namespace chanlab
