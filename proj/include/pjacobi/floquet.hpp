#pragma once

#include <cstddef>
#include <vector>

#include "pjacobi/coefficients.hpp"

namespace pjacobi {

/// Dense real symmetric matrix, row-major. Symmetry is kept by set().
class SymMatrix {
public:
    explicit SymMatrix(std::size_t order) : n_(order), v_(order * order, 0.0) {}

    std::size_t order() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return v_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double x) noexcept {
        v_[i * n_ + j] = x;
        v_[j * n_ + i] = x;
    }
    static SymMatrix identity(std::size_t order);

private:
    std::size_t n_;
    std::vector<double> v_;
};

/// Quasimomentum phase of the boundary condition psi_{n+p} = e^{i theta} psi_n.
enum class FloquetPhase { Periodic, Antiperiodic };

/// Restriction of J to theta-quasiperiodic sequences: tridiagonal with
/// corners +a_p (Periodic) or -a_p (Antiperiodic). For p = 1 this is
/// b_1 +/- 2 a_1; for p = 2 corner and off-diagonal add to a_1 +/- a_2.
SymMatrix floquet_matrix(const PeriodicCoefficients& c, FloquetPhase phase);

inline constexpr double kJacobiDefaultTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// tol * (diagonal Frobenius norm + 1). Sorted ascending.
/// Throws NonConvergence after kJacobiMaxSweeps sweeps.
std::vector<double> symmetric_eigenvalues(SymMatrix mat, double tol = kJacobiDefaultTol);

struct OracleEdges {
    std::vector<double> plus;   // Delta = +2, periodic phase
    std::vector<double> minus;  // Delta = -2, antiperiodic phase
    /// Both sets merged and sorted; 2p entries.
    std::vector<double> merged() const;
};

OracleEdges band_edges_oracle(const PeriodicCoefficients& c, double tol = kJacobiDefaultTol);

}  // namespace pjacobi
