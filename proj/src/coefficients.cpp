#include "pjacobi/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pjacobi/error.hpp"

namespace pjacobi {

PeriodicCoefficients::PeriodicCoefficients(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
    if (a_.empty() || a_.size() != b_.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    "a has " + std::to_string(a_.size()) + " entries, b has " +
                        std::to_string(b_.size()) + " (need equal, nonzero)");
    }
    for (std::size_t n = 0; n < a_.size(); ++n) {
        if (!std::isfinite(a_[n]) || !std::isfinite(b_[n])) {
            throw Error(ErrorKind::NonFiniteEntry, "entry " + std::to_string(n) + " is not finite");
        }
        if (!(a_[n] > 0.0)) {
            throw Error(ErrorKind::NonPositiveOffDiagonal,
                        "a[" + std::to_string(n) + "] must be strictly positive");
        }
    }
}

double PeriodicCoefficients::log_product_a() const noexcept {
    double s = 0.0;
    for (double x : a_) s += std::log(x);
    return s;
}

PeriodicCoefficients PeriodicCoefficients::rotated(std::size_t offset) const {
    std::vector<double> a(a_.size()), b(b_.size());
    for (std::size_t n = 0; n < a_.size(); ++n) {
        a[n] = a_at(n + offset);
        b[n] = b_at(n + offset);
    }
    return {std::move(a), std::move(b)};
}

PeriodicCoefficients PeriodicCoefficients::shifted(double t) const {
    std::vector<double> b = b_;
    for (double& x : b) x += t;
    return {a_, std::move(b)};
}

PeriodicCoefficients PeriodicCoefficients::scaled(double c) const {
    std::vector<double> a = a_, b = b_;
    for (double& x : a) x *= c;
    for (double& x : b) x *= c;
    return {std::move(a), std::move(b)};
}

ScalarSummary scalar_summary(const PeriodicCoefficients& c) {
    const std::size_t p = c.period();
    ScalarSummary s;
    s.A = std::exp(c.log_product_a() / static_cast<double>(p));
    auto [amin, amax] = std::ranges::minmax(c.a());
    auto [bmin, bmax] = std::ranges::minmax(c.b());
    s.minA = amin;
    s.maxA = amax;
    s.m = bmax - bmin;
    // Rounding in exp/log can push A a hair outside [minA, maxA].
    s.A = std::clamp(s.A, amin, amax);

    s.gershgorinLower = c.b_at(0) - c.a_at(0) - c.a_prev(0);
    s.gershgorinUpper = c.b_at(0) + c.a_at(0) + c.a_prev(0);
    for (std::size_t n = 1; n < p; ++n) {
        s.gershgorinLower = std::min(s.gershgorinLower, c.b_at(n) - c.a_at(n) - c.a_prev(n));
        s.gershgorinUpper = std::max(s.gershgorinUpper, c.b_at(n) + c.a_at(n) + c.a_prev(n));
    }
    s.M = std::max(s.gershgorinUpper - bmin, bmax - s.gershgorinLower);
    return s;
}

PeriodicCoefficients coefficients_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j["a"].is_array() ||
        !j["b"].is_array()) {
        throw Error(ErrorKind::ParseError, R"(expected an object {"a": [...], "b": [...]})");
    }
    auto read = [](const nlohmann::json& arr, const char* name) {
        std::vector<double> out;
        out.reserve(arr.size());
        for (const auto& v : arr) {
            if (!v.is_number()) {
                throw Error(ErrorKind::ParseError, std::string("non-numeric entry in ") + name);
            }
            out.push_back(v.get<double>());
        }
        return out;
    };
    return {read(j["a"], "a"), read(j["b"], "b")};
}

PeriodicCoefficients load_coefficients(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return coefficients_from_json_text(ss.str());
}

}  // namespace pjacobi
