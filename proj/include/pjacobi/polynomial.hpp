#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace pjacobi {

/// Dense real polynomial in the monomial basis; coeffs()[k] multiplies x^k.
/// The highest stored coefficient is nonzero unless the polynomial is zero,
/// in which case nothing is stored.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs);
    Poly(std::initializer_list<double> coeffs) : Poly(std::vector<double>(coeffs)) {}

    static Poly constant(double c) { return Poly({c}); }
    /// c0 + c1 x
    static Poly linear(double c0, double c1) { return Poly({c0, c1}); }

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }
    double coeff(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0.0; }
    std::span<const double> coeffs() const noexcept { return c_; }

    double operator()(double t) const noexcept;

    Poly& operator+=(const Poly& y);
    Poly& operator-=(const Poly& y);
    Poly& operator*=(double s);

    friend Poly operator+(Poly x, const Poly& y) { return x += y; }
    friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
    friend Poly operator*(const Poly& x, const Poly& y);
    friend Poly operator*(Poly x, double s) { return x *= s; }
    friend Poly operator*(double s, Poly x) { return x *= s; }
    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim();
    std::vector<double> c_;
};

enum class PolyOp { Add, Sub, Mul };

Poly poly_arith(const Poly& x, const Poly& y, PolyOp op);
/// Horner evaluation.
double poly_eval(const Poly& x, double t) noexcept;
Poly poly_derivative(const Poly& x);

struct DivResult {
    Poly quotient;
    Poly remainder;
};
/// Euclidean division. The divisor must be nonzero.
DivResult poly_divmod(const Poly& num, const Poly& den);

/// Sturm chain p0 = x, p1 = x', p_{k+1} = -rem(p_{k-1}, p_k); each member is
/// rescaled by a positive factor, which leaves sign counts untouched.
std::vector<Poly> sturm_chain(const Poly& x);
int sign_changes(std::span<const Poly> chain, double t);
/// Number of distinct real roots in (lo, hi].
int sturm_count(std::span<const Poly> chain, double lo, double hi);

struct RealRoot {
    double value = 0.0;
    int multiplicity = 1;
};

/// Sign oracle used to refine isolated simple roots, typically a more
/// stable evaluation of the same function than Horner on the coefficients.
using RefineFn = std::function<double(double)>;

/// Default absolute bracket width: 1e-12 * max(1, |hi - lo|).
double default_root_tol(double lo, double hi) noexcept;

/// All real roots in [lo, hi], sorted. Each root is isolated by Sturm counts
/// on the square-free part and bisected to width <= tol. Repeated roots are
/// reported once with their multiplicity.
/// Throws DegenerateInterval (lo >= hi, tol <= 0, x == 0) or NonConvergence.
std::vector<RealRoot> real_roots_in(const Poly& x, double lo, double hi, double tol,
                                    const RefineFn& refine = {});

}  // namespace pjacobi
