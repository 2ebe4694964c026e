#include "pjacobi/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "pjacobi/error.hpp"

namespace pjacobi {

namespace {

constexpr int kBisectionBudget = 2000;
// Remainders below this (relative to the normalized dividend) end Euclid.
constexpr double kEuclidZero = 1e-10;

double max_abs(std::span<const double> c) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

Poly normalized(const Poly& x) {
    const double s = max_abs(x.coeffs());
    return s > 0.0 ? x * (1.0 / s) : x;
}

// Drops coefficients that are pure cancellation noise relative to `scale`.
Poly chop(const Poly& x, double scale) {
    std::vector<double> c(x.coeffs().begin(), x.coeffs().end());
    for (double& v : c) {
        if (std::abs(v) <= kEuclidZero * scale) v = 0.0;
    }
    return Poly(std::move(c));
}

// Numeric gcd by Euclid with thresholded zero remainders.
Poly numeric_gcd(Poly u, Poly v) {
    u = normalized(u);
    v = normalized(v);
    while (!v.is_zero()) {
        auto [q, r] = poly_divmod(u, v);
        const double scale = std::max(1.0, max_abs(q.coeffs()));
        r = chop(r, scale);
        u = std::move(v);
        v = normalized(r);
        if (v.degree() == 0) return Poly::constant(1.0);
    }
    return u;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Poly::operator()(double t) const noexcept {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
    return r;
}

Poly& Poly::operator+=(const Poly& y) {
    if (y.c_.size() > c_.size()) c_.resize(y.c_.size(), 0.0);
    for (std::size_t k = 0; k < y.c_.size(); ++k) c_[k] += y.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& y) {
    if (y.c_.size() > c_.size()) c_.resize(y.c_.size(), 0.0);
    for (std::size_t k = 0; k < y.c_.size(); ++k) c_[k] -= y.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator*=(double s) {
    for (double& v : c_) v *= s;
    trim();
    return *this;
}

Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<double> c(x.c_.size() + y.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.c_.size(); ++i)
        for (std::size_t j = 0; j < y.c_.size(); ++j) c[i + j] += x.c_[i] * y.c_[j];
    return Poly(std::move(c));
}

Poly poly_arith(const Poly& x, const Poly& y, PolyOp op) {
    switch (op) {
        case PolyOp::Add: return x + y;
        case PolyOp::Sub: return x - y;
        case PolyOp::Mul: return x * y;
    }
    return {};
}

double poly_eval(const Poly& x, double t) noexcept { return x(t); }

Poly poly_derivative(const Poly& x) {
    if (x.degree() < 1) return {};
    std::vector<double> c(static_cast<std::size_t>(x.degree()));
    for (std::size_t k = 1; k <= c.size(); ++k) c[k - 1] = static_cast<double>(k) * x.coeff(k);
    return Poly(std::move(c));
}

DivResult poly_divmod(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw Error(ErrorKind::DegenerateInterval, "division by zero polynomial");
    const int dn = num.degree();
    const int dd = den.degree();
    if (dn < dd) return {Poly{}, num};
    std::vector<double> r(num.coeffs().begin(), num.coeffs().end());
    std::vector<double> q(static_cast<std::size_t>(dn - dd + 1), 0.0);
    const double lead = den.leading();
    for (int k = dn - dd; k >= 0; --k) {
        const double f = r[static_cast<std::size_t>(k + dd)] / lead;
        q[static_cast<std::size_t>(k)] = f;
        for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k + j)] -= f * den.coeff(j);
        r[static_cast<std::size_t>(k + dd)] = 0.0;
    }
    r.resize(static_cast<std::size_t>(dd));
    return {Poly(std::move(q)), Poly(std::move(r))};
}

std::vector<Poly> sturm_chain(const Poly& x) {
    std::vector<Poly> chain;
    if (x.is_zero()) return chain;
    chain.push_back(normalized(x));
    Poly d = poly_derivative(x);
    if (d.is_zero()) return chain;
    chain.push_back(normalized(d));
    while (chain.back().degree() > 0) {
        const Poly& u = chain[chain.size() - 2];
        const Poly& v = chain.back();
        auto [q, r] = poly_divmod(u, v);
        r = chop(r, std::max(1.0, max_abs(q.coeffs())));
        if (r.is_zero()) break;
        chain.push_back(normalized(r * -1.0));
    }
    return chain;
}

int sign_changes(std::span<const Poly> chain, double t) {
    int changes = 0;
    int last = 0;
    for (const Poly& p : chain) {
        const int s = sign_of(p(t));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int sturm_count(std::span<const Poly> chain, double lo, double hi) {
    return sign_changes(chain, lo) - sign_changes(chain, hi);
}

double default_root_tol(double lo, double hi) noexcept {
    return 1e-12 * std::max(1.0, std::abs(hi - lo));
}

namespace {

// Bisects a bracket known to hold exactly one simple root of `sq`.
double refine_simple(const Poly& sq, std::span<const Poly> chain, double lo, double hi,
                     double tol, const RefineFn& refine) {
    auto bisect_sign = [&](auto&& f) -> std::optional<double> {
        // Brackets are half-open (lo, hi]: a zero at lo belongs elsewhere.
        double flo = f(lo);
        double fhi = f(hi);
        if (flo == 0.0) return std::nullopt;
        if (fhi == 0.0) return hi;
        if (sign_of(flo) == sign_of(fhi)) return std::nullopt;
        double l = lo, h = hi;
        for (int it = 0; it < kBisectionBudget; ++it) {
            const double mid = 0.5 * (l + h);
            if (h - l <= tol || mid <= l || mid >= h) return mid;
            const double fm = f(mid);
            if (fm == 0.0) return mid;
            if (sign_of(fm) == sign_of(flo)) {
                l = mid;
                flo = fm;
            } else {
                h = mid;
            }
        }
        throw Error(ErrorKind::NonConvergence, "bisection budget exhausted");
    };
    if (refine) {
        if (auto r = bisect_sign(refine)) return *r;
    }
    if (auto r = bisect_sign([&](double t) { return sq(t); })) return *r;

    // No usable sign change (root sits at a bracket end up to rounding);
    // fall back on Sturm counts, which stay exact for a square-free chain.
    double l = lo, h = hi;
    for (int it = 0; it < kBisectionBudget; ++it) {
        const double mid = 0.5 * (l + h);
        if (h - l <= tol || mid <= l || mid >= h) return mid;
        if (sturm_count(chain, l, mid) >= 1) h = mid;
        else l = mid;
    }
    throw Error(ErrorKind::NonConvergence, "Sturm bisection budget exhausted");
}

std::vector<RealRoot> simple_roots(const Poly& sq, double lo, double hi, double tol,
                                   const RefineFn& refine) {
    std::vector<RealRoot> out;
    if (sq.degree() < 1) return out;
    const auto chain = sturm_chain(sq);
    if (sq(lo) == 0.0) out.push_back({lo, 1});

    struct Bracket {
        double lo, hi;
        int count;
    };
    std::vector<Bracket> work{{lo, hi, sturm_count(chain, lo, hi)}};
    int iterations = 0;
    while (!work.empty()) {
        Bracket br = work.back();
        work.pop_back();
        if (br.count <= 0) continue;
        if (++iterations > kBisectionBudget * std::max(1, sq.degree())) {
            throw Error(ErrorKind::NonConvergence, "root isolation budget exhausted");
        }
        if (br.count == 1) {
            out.push_back({refine_simple(sq, chain, br.lo, br.hi, tol, refine), 1});
            continue;
        }
        double mid = 0.5 * (br.lo + br.hi);
        if (br.hi - br.lo <= tol || mid <= br.lo || mid >= br.hi) {
            // Distinct roots closer than tol: report the cluster once.
            out.push_back({mid, br.count});
            continue;
        }
        const int left = sturm_count(chain, br.lo, mid);
        work.push_back({mid, br.hi, br.count - left});
        work.push_back({br.lo, mid, left});
    }
    std::ranges::sort(out, {}, &RealRoot::value);
    return out;
}

}  // namespace

std::vector<RealRoot> real_roots_in(const Poly& x, double lo, double hi, double tol,
                                    const RefineFn& refine) {
    if (!(lo < hi) || !(tol > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorKind::DegenerateInterval, "need finite lo < hi and tol > 0");
    }
    if (x.is_zero()) throw Error(ErrorKind::DegenerateInterval, "zero polynomial has no isolated roots");
    if (x.degree() == 0) return {};

    const Poly g = numeric_gcd(x, poly_derivative(x));
    if (g.degree() < 1) return simple_roots(x, lo, hi, tol, refine);

    // Square-free part; the refine oracle describes x, not x/g, so it is
    // only used for its sign, which matches x/g wherever g has no root.
    const Poly sq = poly_divmod(normalized(x), g).quotient;
    auto roots = simple_roots(sq, lo, hi, tol, {});
    const auto repeated = real_roots_in(g, lo, hi, tol);
    const double match = 1e-6 * std::max(1.0, hi - lo);
    for (auto& r : roots) {
        for (const auto& gr : repeated) {
            if (std::abs(gr.value - r.value) <= match) {
                r.multiplicity += gr.multiplicity;
                break;
            }
        }
    }
    return roots;
}

}  // namespace pjacobi
