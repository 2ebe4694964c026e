#include "pjacobi/floquet.hpp"

#include <algorithm>
#include <cmath>

#include "pjacobi/error.hpp"

namespace pjacobi {

SymMatrix SymMatrix::identity(std::size_t order) {
    SymMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix floquet_matrix(const PeriodicCoefficients& c, FloquetPhase phase) {
    const std::size_t p = c.period();
    const double sign = phase == FloquetPhase::Periodic ? 1.0 : -1.0;
    SymMatrix m(p);
    if (p == 1) {
        m.set(0, 0, c.b_at(0) + 2.0 * sign * c.a_at(0));
        return m;
    }
    for (std::size_t i = 0; i < p; ++i) m.set(i, i, c.b_at(i));
    for (std::size_t i = 0; i + 1 < p; ++i) m.set(i, i + 1, c.a_at(i));
    // Corner coupling psi_p <-> psi_1; accumulates onto (0,1) when p == 2.
    m.set(0, p - 1, m(0, p - 1) + sign * c.a_at(p - 1));
    return m;
}

std::vector<double> symmetric_eigenvalues(SymMatrix m, double tol) {
    const std::size_t n = m.order();
    // Work on a plain array; SymMatrix::set writes both triangles.
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    auto converged = [&] {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diag += at(i, i) * at(i, i);
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
        }
        return std::sqrt(off) <= tol * (std::sqrt(diag) + 1.0);
    };

    int sweep = 0;
    while (!converged()) {
        if (++sweep > kJacobiMaxSweeps) {
            throw Error(ErrorKind::NonConvergence, "Jacobi eigensolver exceeded sweep budget");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double app = at(p, p);
                const double aqq = at(q, q);
                // Rutishauser's stable rotation: t = tan(phi), smaller root.
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;
                const double tau = sn / (1.0 + cs);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = at(r, p);
                    const double arq = at(r, q);
                    at(r, p) = at(p, r) = arp - sn * (arq + tau * arp);
                    at(r, q) = at(q, r) = arq + sn * (arp - tau * arq);
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
    std::ranges::sort(ev);
    return ev;
}

std::vector<double> OracleEdges::merged() const {
    std::vector<double> all = plus;
    all.insert(all.end(), minus.begin(), minus.end());
    std::ranges::sort(all);
    return all;
}

OracleEdges band_edges_oracle(const PeriodicCoefficients& c, double tol) {
    return {symmetric_eigenvalues(floquet_matrix(c, FloquetPhase::Periodic), tol),
            symmetric_eigenvalues(floquet_matrix(c, FloquetPhase::Antiperiodic), tol)};
}

}  // namespace pjacobi
