/// @file grid.hpp
/// @brief Channel discretization: Fourier in x1, Gauss-Lobatto-Legendre
///        spectral elements in the wall-normal direction x2.
///
/// The wall-normal mesh is a list of elements whose edges are aligned with
/// whatever thin layers the advecting-field construction owns, so boundary
/// layers are resolved at a node count independent of how thin they get.
///
/// The single global derivative matrix Dbar (one-sided element derivatives,
/// averaged at interfaces) defines every wall-normal operator here:
///   quadrature      <f> = sum_j w_j f_j,   sum w_j = 1
///   stiffness       K   = Dbar^T M Dbar,   M = diag(w)
/// so the weak Laplacian, its inverse, and the Leray projector built on top
/// are exact companions of one discrete gradient.
#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <vector>

#include "chanlab/common.hpp"
#include "chanlab/gll.hpp"

namespace chanlab {

struct ElementSpec {
    double lo, hi;
    int p;  ///< polynomial order (p+1 nodes)
};

class ChannelGrid {
  public:
    ChannelGrid(double L1, int nx, const std::vector<ElementSpec>& spec) : L1_(L1), nx_(nx) {
        if (L1 <= 0.0) throw ConfigError("ChannelGrid: L1 must be positive");
        if (nx < 4 || nx % 2 != 0) throw ConfigError("ChannelGrid: Nx must be even and >= 4");
        if (spec.empty()) throw ConfigError("ChannelGrid: empty element list");
        build_mesh(spec);
        build_operators();
    }

    double L1() const { return L1_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    const Eigen::ArrayXd& x2() const { return x2_; }
    const Eigen::ArrayXd& weights() const { return w_; }
    int n_elements() const { return static_cast<int>(elems_.size()); }

    double kappa(int m) const { return 2.0 * pi * m / L1_; }
    int n_modes() const { return nx_ / 2 + 1; }

    /// Wall-normal derivative of every column, interface values averaged.
    Eigen::MatrixXd deriv_x2(const Eigen::Ref<const Eigen::MatrixXd>& in) const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(in.rows(), in.cols());
        for (const auto& e : elems_) {
            Eigen::MatrixXd tmp = e.deriv * in.middleRows(e.offset, e.p + 1);
            tmp.row(0) *= e.scale_lo;
            tmp.row(e.p) *= e.scale_hi;
            out.middleRows(e.offset, e.p + 1) += tmp;
        }
        return out;
    }

    /// Transpose apply: out = Dbar^T in.
    Eigen::MatrixXd deriv_x2_transpose(const Eigen::Ref<const Eigen::MatrixXd>& in) const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(in.rows(), in.cols());
        for (const auto& e : elems_) {
            Eigen::MatrixXd tmp = in.middleRows(e.offset, e.p + 1);
            tmp.row(0) *= e.scale_lo;
            tmp.row(e.p) *= e.scale_hi;
            out.middleRows(e.offset, e.p + 1).noalias() += e.deriv.transpose() * tmp;
        }
        return out;
    }

    /// Stiffness apply: K f = Dbar^T (M (Dbar f)).
    Eigen::MatrixXd stiffness(const Eigen::Ref<const Eigen::MatrixXd>& in) const {
        Eigen::MatrixXd g = deriv_x2(in);
        g.array().colwise() *= w_;
        return deriv_x2_transpose(g);
    }

    /// Solve d2g/dx2^2 - kappa2 g = rhs weakly with g(+-1/2) = 0, one column
    /// per right-hand side; kappa2 holds the per-column shift.
    Eigen::MatrixXd solve_helmholtz_dirichlet(const Eigen::Ref<const Eigen::MatrixXd>& rhs,
                                              const Eigen::ArrayXd& kappa2) const {
        const int ni = ny_ - 2;
        Eigen::MatrixXd b = rhs.middleRows(1, ni);
        b.array().colwise() *= w_.segment(1, ni);
        Eigen::MatrixXd t(ni, rhs.cols());
        t.noalias() = zd_.transpose() * b;
        for (int c = 0; c < t.cols(); ++c)
            t.col(c).array() /= -(lam_d_ + kappa2(c));
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(ny_, rhs.cols());
        out.middleRows(1, ni).noalias() = zd_ * t;
        return out;
    }

    /// Solve (K + kappa2 M) phi = weak_rhs. All kappa2 entries must be > 0;
    /// the zero-shift Neumann problem is singular and handled by callers.
    Eigen::MatrixXd solve_helmholtz_neumann(const Eigen::Ref<const Eigen::MatrixXd>& weak_rhs,
                                            const Eigen::ArrayXd& kappa2) const {
        Eigen::MatrixXd t(ny_, weak_rhs.cols());
        t.noalias() = zn_.transpose() * weak_rhs;
        for (int c = 0; c < t.cols(); ++c)
            t.col(c).array() /= (lam_n_ + kappa2(c));
        Eigen::MatrixXd out(ny_, weak_rhs.cols());
        out.noalias() = zn_ * t;
        return out;
    }

    // --- 1D profile helpers -------------------------------------------------

    double profile_mean(const Eigen::Ref<const Eigen::ArrayXd>& f) const {
        return (w_ * f).sum();
    }

    Eigen::ArrayXd profile_deriv(const Eigen::Ref<const Eigen::ArrayXd>& f) const {
        return deriv_x2(f.matrix()).array();
    }

    /// Interpolate a nodal profile at an arbitrary x2 (barycentric, local).
    double profile_eval(const Eigen::Ref<const Eigen::ArrayXd>& f, double x) const {
        const auto& e = elems_[element_index(x)];
        return barycentric_eval(e.nodes, e.bary, f.segment(e.offset, e.p + 1), x);
    }

    /// Integral of the interpolant over [a, b] (exact per element).
    double profile_integral(const Eigen::Ref<const Eigen::ArrayXd>& f, double a, double b) const {
        double sign = 1.0;
        if (a > b) { std::swap(a, b); sign = -1.0; }
        double total = 0.0;
        for (const auto& e : elems_) {
            double lo = std::max(a, e.lo), hi = std::min(b, e.hi);
            if (hi <= lo) continue;
            // Map this element's rule onto [lo, hi]; degree p is integrated
            // exactly by the p+1 point rule.
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (int q = 0; q <= e.p; ++q) {
                double xq = mid + half * e.ref_nodes(q);
                total += half * e.ref_weights(q) *
                         barycentric_eval(e.nodes, e.bary, f.segment(e.offset, e.p + 1), xq);
            }
        }
        return sign * total;
    }

    /// Antiderivative of the interpolant, zero at the bottom wall.
    Eigen::ArrayXd profile_antiderivative(const Eigen::Ref<const Eigen::ArrayXd>& f) const {
        Eigen::ArrayXd out(ny_);
        double acc = 0.0;
        for (const auto& e : elems_) {
            const double half = 0.5 * (e.hi - e.lo);
            Eigen::VectorXd loc = f.segment(e.offset, e.p + 1).matrix();
            Eigen::VectorXd anti = half * (e.antideriv * loc);
            for (int q = 0; q <= e.p; ++q) out(e.offset + q) = acc + anti(q);
            acc += anti(e.p);
        }
        return out;
    }

    const Eigen::ArrayXd& dirichlet_eigenvalues() const { return lam_d_; }

  private:
    struct Element {
        double lo, hi;
        int p;
        int offset;
        double scale_lo, scale_hi;    // 0.5 on shared interfaces, 1.0 at walls
        Eigen::ArrayXd nodes;         // global coordinates, p+1 entries
        Eigen::ArrayXd bary;          // barycentric weights on those nodes
        Eigen::ArrayXd ref_nodes, ref_weights;
        Eigen::MatrixXd deriv;        // reference derivative matrix, 2/h applied
        Eigen::MatrixXd antideriv;    // reference antiderivative matrix
    };

    void build_mesh(const std::vector<ElementSpec>& spec) {
        double prev_hi = -0.5;
        int offset = 0;
        std::map<int, GllRule> rules;
        std::map<int, Eigen::MatrixXd> antis;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const auto& s = spec[i];
            if (std::abs(s.lo - prev_hi) > 1e-14)
                throw ConfigError("ChannelGrid: elements must tile [-1/2, 1/2]");
            if (s.hi <= s.lo) throw ConfigError("ChannelGrid: empty element");
            auto it = rules.find(s.p);
            if (it == rules.end()) {
                it = rules.emplace(s.p, gll_rule(s.p)).first;
                antis.emplace(s.p, reference_antiderivative(it->second));
            }
            const GllRule& r = it->second;
            Element e;
            e.lo = s.lo;
            e.hi = s.hi;
            e.p = s.p;
            e.offset = offset;
            e.scale_lo = (i == 0) ? 1.0 : 0.5;
            e.scale_hi = (i + 1 == spec.size()) ? 1.0 : 0.5;
            const double half = 0.5 * (s.hi - s.lo);
            e.nodes = 0.5 * (s.lo + s.hi) + half * r.nodes;
            e.nodes(0) = s.lo;
            e.nodes(s.p) = s.hi;
            e.bary = barycentric_weights(e.nodes);
            e.ref_nodes = r.nodes;
            e.ref_weights = r.weights;
            e.deriv = r.deriv / half;
            e.antideriv = antis.at(s.p);
            elems_.push_back(std::move(e));
            offset += s.p;  // last node shared with the next element
            prev_hi = s.hi;
        }
        if (std::abs(prev_hi - 0.5) > 1e-14)
            throw ConfigError("ChannelGrid: elements must end at x2 = 1/2");
        ny_ = offset + 1;
        if (ny_ < 5) throw ConfigError("ChannelGrid: fewer than 5 wall-normal nodes");

        x2_.resize(ny_);
        w_ = Eigen::ArrayXd::Zero(ny_);
        for (const auto& e : elems_) {
            const double half = 0.5 * (e.hi - e.lo);
            for (int q = 0; q <= e.p; ++q) {
                x2_(e.offset + q) = e.nodes(q);
                w_(e.offset + q) += half * e.ref_weights(q);
            }
        }
        x2_(0) = -0.5;
        x2_(ny_ - 1) = 0.5;
        // total height is 1, so the weights are already mean weights
        double wsum = w_.sum();
        if (std::abs(wsum - 1.0) > 1e-12)
            throw ConfigError("ChannelGrid: quadrature weights do not sum to 1");
        for (int j = 1; j < ny_; ++j)
            if (x2_(j) <= x2_(j - 1)) throw ConfigError("ChannelGrid: nodes not increasing");
    }

    static Eigen::MatrixXd reference_antiderivative(const GllRule& r) {
        // A(m, j) = integral of the j-th Lagrange cardinal from -1 to node m,
        // evaluated with the rule itself on the subinterval (exact, degree p).
        const int n = static_cast<int>(r.nodes.size());
        Eigen::ArrayXd bw = barycentric_weights(r.nodes);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (int m = 1; m < n; ++m) {
            const double lo = -1.0, hi = r.nodes(m);
            const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
            for (int q = 0; q < n; ++q) {
                double xq = c + h * r.nodes(q);
                // cardinal values at xq
                double den = 0.0;
                Eigen::ArrayXd card(n);
                bool hit = false;
                for (int j = 0; j < n; ++j) {
                    double dx = xq - r.nodes(j);
                    if (std::abs(dx) < 1e-300) {
                        card.setZero();
                        card(j) = 1.0;
                        hit = true;
                        break;
                    }
                    card(j) = bw(j) / dx;
                    den += card(j);
                }
                if (!hit) card /= den;
                for (int j = 0; j < n; ++j) a(m, j) += h * r.weights(q) * card(j);
            }
        }
        return a;
    }

    void build_operators() {
        // Dense Dbar only to assemble K; applications stay element-blocked.
        Eigen::MatrixXd dbar = Eigen::MatrixXd::Zero(ny_, ny_);
        for (const auto& e : elems_) {
            Eigen::MatrixXd blk = e.deriv;
            blk.row(0) *= e.scale_lo;
            blk.row(e.p) *= e.scale_hi;
            dbar.block(e.offset, e.offset, e.p + 1, e.p + 1) += blk;
        }
        Eigen::MatrixXd k = dbar.transpose() * w_.matrix().asDiagonal() * dbar;
        k = 0.5 * (k + k.transpose()).eval();

        const int ni = ny_ - 2;
        Eigen::ArrayXd sq_w = w_.sqrt();
        {
            Eigen::MatrixXd b = k.block(1, 1, ni, ni);
            for (int i = 0; i < ni; ++i)
                for (int j = 0; j < ni; ++j) b(i, j) /= (sq_w(i + 1) * sq_w(j + 1));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
            if (es.info() != Eigen::Success)
                throw std::runtime_error("ChannelGrid: Dirichlet eigensolve failed");
            lam_d_ = es.eigenvalues().array().max(0.0);
            zd_ = es.eigenvectors();
            for (int i = 0; i < ni; ++i) zd_.row(i) /= sq_w(i + 1);
        }
        {
            Eigen::MatrixXd b = k;
            for (int i = 0; i < ny_; ++i)
                for (int j = 0; j < ny_; ++j) b(i, j) /= (sq_w(i) * sq_w(j));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
            if (es.info() != Eigen::Success)
                throw std::runtime_error("ChannelGrid: Neumann eigensolve failed");
            lam_n_ = es.eigenvalues().array().max(0.0);
            zn_ = es.eigenvectors();
            for (int i = 0; i < ny_; ++i) zn_.row(i) /= sq_w(i);
        }
    }

    int element_index(double x) const {
        int lo = 0, hi = static_cast<int>(elems_.size()) - 1;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (x > elems_[mid].hi)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    double L1_;
    int nx_;
    int ny_ = 0;
    std::vector<Element> elems_;
    Eigen::ArrayXd x2_, w_;
    Eigen::MatrixXd zd_, zn_;
    Eigen::ArrayXd lam_d_, lam_n_;
};

using GridPtr = std::shared_ptr<const ChannelGrid>;

}  // namespace chanlab
