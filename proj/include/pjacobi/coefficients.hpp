#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pjacobi {

/// One period of a periodic Jacobi operator
///   (J psi)_n = a_{n-1} psi_{n-1} + b_n psi_n + a_n psi_{n+1},
/// with a_{n+p} = a_n, b_{n+p} = b_n and a_n > 0. Indices are zero-based;
/// a_{-1} wraps to a_{p-1}.
class PeriodicCoefficients {
public:
    /// Validates and stores the coefficients. Throws Error with
    /// LengthMismatch, NonPositiveOffDiagonal or NonFiniteEntry.
    PeriodicCoefficients(std::vector<double> a, std::vector<double> b);

    std::size_t period() const noexcept { return a_.size(); }
    std::span<const double> a() const noexcept { return a_; }
    std::span<const double> b() const noexcept { return b_; }

    double a_at(std::size_t n) const noexcept { return a_[n % a_.size()]; }
    double b_at(std::size_t n) const noexcept { return b_[n % b_.size()]; }
    /// a_{n-1} with cyclic wrap, so a_prev(0) == a_{p-1}.
    double a_prev(std::size_t n) const noexcept {
        return a_[(n + a_.size() - 1) % a_.size()];
    }

    /// Sum of log a_n; log of the product a_1 ... a_p.
    double log_product_a() const noexcept;

    PeriodicCoefficients rotated(std::size_t offset) const;
    PeriodicCoefficients shifted(double t) const;
    PeriodicCoefficients scaled(double c) const;

    friend bool operator==(const PeriodicCoefficients&, const PeriodicCoefficients&) = default;

private:
    std::vector<double> a_;
    std::vector<double> b_;
};

inline PeriodicCoefficients new_periodic(std::vector<double> a, std::vector<double> b) {
    return PeriodicCoefficients(std::move(a), std::move(b));
}

struct ScalarSummary {
    double A = 0.0;      // geometric mean of a
    double minA = 0.0;
    double maxA = 0.0;
    double m = 0.0;      // max b - min b
    double gershgorinLower = 0.0;
    double gershgorinUpper = 0.0;
    double M = 0.0;      // constant of the Deift-Simon/Last lower estimate
};

ScalarSummary scalar_summary(const PeriodicCoefficients& c);

/// Parses {"a": [...], "b": [...]}. Throws Error(ParseError) on malformed
/// JSON and the validation errors of the constructor otherwise.
PeriodicCoefficients coefficients_from_json_text(const std::string& text);
PeriodicCoefficients load_coefficients(const std::string& path);

}  // namespace pjacobi
