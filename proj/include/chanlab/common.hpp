/// @file common.hpp
/// @brief Shared error types, tolerances and small numeric helpers.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace chanlab {

/// Bad user-supplied configuration (CLI exit status 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A construction failed to satisfy one of its stated properties.
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterative solver did not reach the requested residual.
struct SolverError : std::runtime_error {
    SolverError(const std::string& msg, std::vector<double> history)
        : std::runtime_error(msg), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

/// Hard check failed at run time (CLI exit status 1).
struct CheckError : std::runtime_error {
    explicit CheckError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Default tolerances; every solver/diagnostic accepts an override.
struct Tolerances {
    double linear_solver = 1e-10;    ///< relative residual for linear solves
    double operator_identity = 1e-10;///< projector/inverse identity checks
    double pde_residual = 1e-9;      ///< steady solves, relative to forcing
    double identity_check = 1e-6;    ///< physical identity checks, relative
    double divergence = 1e-10;       ///< admissibility of test fields
    int max_iterations = 4000;
    int gmres_restart = 60;
};

constexpr double pi = 3.14159265358979323846;

inline bool all_finite(const double* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(data[i])) return false;
    return true;
}

/// Smallest 2^a 3^b 5^c 7^d >= n that is even. Transform-friendly sizes.
inline int next_fast_size(int n) {
    if (n < 4) return 4;
    for (int m = n;; ++m) {
        if (m % 2 != 0) continue;
        int r = m;
        for (int p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

inline double relative_diff(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace chanlab
