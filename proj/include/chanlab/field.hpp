/// @file field.hpp
/// @brief Nodal scalar/vector/tensor fields on a ChannelGrid.
#pragma once

#include <Eigen/Dense>
#include <utility>

#include "chanlab/grid.hpp"

namespace chanlab {

/// Wall contract carried by a vector field.
enum class BcTag { couette, homogeneous, none };

inline const char* to_string(BcTag t) {
    switch (t) {
        case BcTag::couette: return "couette";
        case BcTag::homogeneous: return "homogeneous";
        default: return "none";
    }
}

struct ScalarField {
    GridPtr grid;
    Eigen::ArrayXXd values;  // ny x nx, column = one x1 station

    ScalarField() = default;
    explicit ScalarField(GridPtr g) : grid(std::move(g)) {
        values = Eigen::ArrayXXd::Zero(grid->ny(), grid->nx());
    }
    ScalarField(GridPtr g, Eigen::ArrayXXd v) : grid(std::move(g)), values(std::move(v)) {}

    int nx() const { return static_cast<int>(values.cols()); }
    int ny() const { return static_cast<int>(values.rows()); }
    bool finite() const { return all_finite(values.data(), values.size()); }
    double max_abs() const { return values.abs().maxCoeff(); }
};

struct VectorField {
    ScalarField u1, u2;
    BcTag bc_tag = BcTag::none;

    VectorField() = default;
    explicit VectorField(GridPtr g, BcTag tag = BcTag::none)
        : u1(g), u2(std::move(g)), bc_tag(tag) {}

    const GridPtr& grid() const { return u1.grid; }
    bool finite() const { return u1.finite() && u2.finite(); }

    /// Worst deviation from the wall values promised by bc_tag.
    double bc_defect() const {
        const int top = u1.ny() - 1;
        double d = 0.0;
        if (bc_tag == BcTag::couette) {
            d = std::max(d, (u1.values.row(0) + 0.5).abs().maxCoeff());
            d = std::max(d, (u1.values.row(top) - 0.5).abs().maxCoeff());
        } else if (bc_tag == BcTag::homogeneous) {
            d = std::max(d, u1.values.row(0).abs().maxCoeff());
            d = std::max(d, u1.values.row(top).abs().maxCoeff());
        } else {
            return 0.0;
        }
        d = std::max(d, u2.values.row(0).abs().maxCoeff());
        d = std::max(d, u2.values.row(top).abs().maxCoeff());
        return d;
    }
};

/// g_ij = d(component i)/dx_j.
struct TensorField {
    ScalarField g11, g12, g21, g22;

    Eigen::ArrayXXd frobenius_sq() const {
        return g11.values.square() + g12.values.square() + g21.values.square() +
               g22.values.square();
    }
};

// --- averages ---------------------------------------------------------------

inline double volume_average(const ScalarField& f) {
    const auto& w = f.grid->weights();
    double acc = 0.0;
    for (int i = 0; i < f.nx(); ++i) acc += (w * f.values.col(i)).sum();
    return acc / f.nx();
}

inline double volume_average(const Eigen::ArrayXXd& vals, const ChannelGrid& g) {
    const auto& w = g.weights();
    double acc = 0.0;
    for (int i = 0; i < vals.cols(); ++i) acc += (w * vals.col(i)).sum();
    return acc / double(vals.cols());
}

/// Per-x2-node mean over x1.
inline Eigen::ArrayXd horizontal_average(const ScalarField& f) {
    return f.values.rowwise().mean();
}

// --- small field algebra used all over the solvers --------------------------

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField r = a;
    r.u1.values += b.u1.values;
    r.u2.values += b.u2.values;
    return r;
}

inline VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField r = a;
    r.u1.values -= b.u1.values;
    r.u2.values -= b.u2.values;
    return r;
}

inline VectorField operator*(double s, const VectorField& a) {
    VectorField r = a;
    r.u1.values *= s;
    r.u2.values *= s;
    return r;
}

inline void axpy(double alpha, const VectorField& x, VectorField& y) {
    y.u1.values += alpha * x.u1.values;
    y.u2.values += alpha * x.u2.values;
}

/// Mass-weighted L2 inner product of vector fields.
inline double dot(const VectorField& a, const VectorField& b) {
    const auto& w = a.grid()->weights();
    double acc = 0.0;
    for (int i = 0; i < a.u1.nx(); ++i)
        acc += (w * (a.u1.values.col(i) * b.u1.values.col(i) +
                     a.u2.values.col(i) * b.u2.values.col(i)))
                   .sum();
    return acc / a.u1.nx();
}

inline double norm(const VectorField& a) { return std::sqrt(std::max(0.0, dot(a, a))); }

}  // namespace chanlab
