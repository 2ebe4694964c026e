#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "pjacobi/coefficients.hpp"
#include "pjacobi/polynomial.hpp"

namespace pjacobi {

/// 2x2 matrix over any ring-like T.
template <typename T>
struct Mat2 {
    std::array<T, 4> e{};  // row-major: (0,0) (0,1) (1,0) (1,1)

    T& operator()(int i, int j) { return e[static_cast<std::size_t>(2 * i + j)]; }
    const T& operator()(int i, int j) const { return e[static_cast<std::size_t>(2 * i + j)]; }
    T trace() const { return e[0] + e[3]; }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        Mat2 r;
        for (std::size_t k = 0; k < 4; ++k) r.e[k] = x.e[k] + y.e[k];
        return r;
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        Mat2 r;
        r.e[0] = x.e[0] * y.e[0] + x.e[1] * y.e[2];
        r.e[1] = x.e[0] * y.e[1] + x.e[1] * y.e[3];
        r.e[2] = x.e[2] * y.e[0] + x.e[3] * y.e[2];
        r.e[3] = x.e[2] * y.e[1] + x.e[3] * y.e[3];
        return r;
    }
};

/// A_n(lambda) = [[(lambda - b_n)/a_n, -a_{n-1}/a_n], [1, 0]], mapping
/// (psi_n, psi_{n-1}) to (psi_{n+1}, psi_n).
using TransferMatrix = Mat2<Poly>;

/// Zero-based n in [0, p); a_{-1} := a_{p-1}. Throws IndexOutOfRange.
TransferMatrix transfer_matrix(const PeriodicCoefficients& c, std::size_t n);

/// tr(A_{p-1} ... A_0) expanded in the variable x, where lambda = center + half * x.
/// center = 0, half = 1 gives Delta(lambda) itself.
Poly discriminant_poly(const PeriodicCoefficients& c, double center = 0.0, double half = 1.0);

/// Trace of the numeric monodromy product at t, with power-of-two
/// rescaling so long periods do not overflow intermediate products.
double eval_discriminant_stable(const PeriodicCoefficients& c, double t) noexcept;

/// The same product carried out in long double.
long double eval_discriminant_extended(const PeriodicCoefficients& c, long double t) noexcept;

struct ValueSlope {
    double value;
    double slope;
};
/// Delta(t) and Delta'(t) by forward differentiation of the monodromy product.
ValueSlope eval_discriminant_with_slope(const PeriodicCoefficients& c, double t) noexcept;

/// Above this period the monomial expansion is treated as unreliable.
inline constexpr std::size_t kMonomialPeriodLimit = 30;

struct DiscriminantData {
    DiscriminantData(Poly delta_, PeriodicCoefficients coeffs_)
        : delta(std::move(delta_)), leading(delta.leading()), coeffs(std::move(coeffs_)) {}

    Poly delta;          // Delta(lambda), degree p
    double leading = 0;  // equals 1 / prod a_n
    PeriodicCoefficients coeffs;
    std::vector<double> criticalPoints;  // roots of Delta', sorted, p - 1 of them
    double searchLo = 0;  // Gershgorin interval padded by 1% of its width
    double searchHi = 0;
    bool stablePathOnly = false;        // p > kMonomialPeriodLimit
    std::vector<std::string> warnings;  // downgraded violations when stablePathOnly

    double operator()(double t) const noexcept { return eval_discriminant_stable(coeffs, t); }
};

/// Expands Delta and verifies: degree p, leading coefficient 1/prod a_n,
/// p distinct real roots, |Delta| >= 2 at every critical point.
/// Throws PropertyViolation, except when stablePathOnly where failures
/// land in warnings.
DiscriminantData build_discriminant(const PeriodicCoefficients& c);

}  // namespace pjacobi
