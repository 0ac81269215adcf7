#include "jacsob/half_angle.hpp"

#include "jacsob/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jacsob {

HalfAngleExpr::HalfAngleExpr(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

HalfAngleExpr HalfAngleExpr::monomial(double coef, double a, double b) { return HalfAngleExpr({{coef, a, b}}); }

HalfAngleExpr HalfAngleExpr::psi(double alpha, double beta) { return monomial(1.0, alpha + 0.5, beta + 0.5); }

void HalfAngleExpr::normalize() {
    // Exponents built along different arithmetic paths may differ in the last
    // bits, and coefficients that cancel in exact arithmetic leave rounding
    // residue; either would swamp the expression near an endpoint.
    constexpr double kExpTol = 1e-12;
    constexpr double kCancel = 64 * std::numeric_limits<double>::epsilon();
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    std::vector<Term> merged;
    std::vector<double> scale;
    for (const Term& t : terms_) {
        bool found = false;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            if (std::abs(merged[i].a - t.a) <= kExpTol && std::abs(merged[i].b - t.b) <= kExpTol) {
                merged[i].coef += t.coef;
                scale[i] += std::abs(t.coef);
                found = true;
                break;
            }
        }
        if (!found) {
            merged.push_back(t);
            scale.push_back(std::abs(t.coef));
        }
    }
    std::vector<Term> kept;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (std::abs(merged[i].coef) > kCancel * scale[i]) {
            kept.push_back(merged[i]);
        }
    }
    terms_ = std::move(kept);
}

double HalfAngleExpr::operator()(const Angle& t) const {
    const double ls = std::log(t.sin_half());
    const double lc = std::log(t.cos_half());
    double s = 0.0;
    for (const Term& term : terms_) {
        const double e = term.a * ls + term.b * lc;
        if (!std::isfinite(e)) {
            throw DomainError("half-angle expression evaluated at an endpoint");
        }
        s += term.coef * std::exp(e);
    }
    return s;
}

HalfAngleExpr HalfAngleExpr::derivative() const {
    // d/dtheta s^a c^b = (a/2) s^{a-1} c^{b+1} - (b/2) s^{a+1} c^{b-1}
    std::vector<Term> out;
    out.reserve(2 * terms_.size());
    for (const Term& t : terms_) {
        if (t.a != 0.0) {
            out.push_back({0.5 * t.a * t.coef, t.a - 1.0, t.b + 1.0});
        }
        if (t.b != 0.0) {
            out.push_back({-0.5 * t.b * t.coef, t.a + 1.0, t.b - 1.0});
        }
    }
    return HalfAngleExpr(std::move(out));
}

namespace {

// -(2 alpha + 1)/4 cot(theta/2) f + (2 beta + 1)/4 tan(theta/2) f
std::vector<HalfAngleExpr::Term> multiplier_terms(const std::vector<HalfAngleExpr::Term>& terms, const JacobiParams& p) {
    const double ka = -(2.0 * p.alpha() + 1.0) / 4.0;
    const double kb = (2.0 * p.beta() + 1.0) / 4.0;
    std::vector<HalfAngleExpr::Term> out;
    for (const auto& t : terms) {
        out.push_back({ka * t.coef, t.a - 1.0, t.b + 1.0});
        out.push_back({kb * t.coef, t.a + 1.0, t.b - 1.0});
    }
    return out;
}

} // namespace

HalfAngleExpr HalfAngleExpr::apply_D(const JacobiParams& params) const {
    auto out = derivative().terms_;
    const auto m = multiplier_terms(terms_, params);
    out.insert(out.end(), m.begin(), m.end());
    return HalfAngleExpr(std::move(out));
}

HalfAngleExpr HalfAngleExpr::apply_D_star(const JacobiParams& params) const {
    auto out = (derivative() * -1.0).terms_;
    const auto m = multiplier_terms(terms_, params);
    out.insert(out.end(), m.begin(), m.end());
    return HalfAngleExpr(std::move(out));
}

HalfAngleExpr HalfAngleExpr::operator+(const HalfAngleExpr& other) const {
    auto out = terms_;
    out.insert(out.end(), other.terms_.begin(), other.terms_.end());
    return HalfAngleExpr(std::move(out));
}

HalfAngleExpr HalfAngleExpr::operator*(const HalfAngleExpr& other) const {
    std::vector<Term> out;
    for (const Term& x : terms_) {
        for (const Term& y : other.terms_) {
            out.push_back({x.coef * y.coef, x.a + y.a, x.b + y.b});
        }
    }
    return HalfAngleExpr(std::move(out));
}

HalfAngleExpr HalfAngleExpr::operator*(double k) const {
    auto out = terms_;
    for (Term& t : out) {
        t.coef *= k;
    }
    return HalfAngleExpr(std::move(out));
}

} // namespace jacsob
