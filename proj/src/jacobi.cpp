#include "jacsob/jacobi.hpp"

#include "jacsob/errors.hpp"

#include <sstream>
#include <vector>

namespace jacsob {

JacobiParams::JacobiParams(double alpha, double beta)
    : alpha_(alpha), beta_(beta), a_(0.5 * (alpha + beta + 1.0)) {
    if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw ConfigError("Jacobi parameters must satisfy alpha, beta > -1 (got " + to_string() + ")");
    }
}

bool JacobiParams::zero_eigenvalue() const noexcept {
    return std::abs(alpha_ + beta_ + 1.0) <= 1e-14;
}

JacobiParams JacobiParams::shifted(int k) const { return {alpha_ + k, beta_ + k}; }

std::string JacobiParams::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "(" << alpha_ << ", " << beta_ << ")";
    return os.str();
}

std::string ExponentRange::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "(" << lower << ", ";
    if (std::isinf(upper)) {
        os << "inf";
    } else {
        os << upper;
    }
    os << ")";
    return os.str();
}

double pochhammer(double z, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= z + i;
    }
    return r;
}

double pochhammer(long z, int k) {
    // Factors are integers, so the double products below are exact up to
    // 2^53 and a vanishing product is an exact zero.
    for (int i = 0; i < k; ++i) {
        if (z + i == 0) {
            return 0.0;
        }
    }
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= static_cast<double>(z + i);
    }
    return r;
}

void jacobi_poly_all(const JacobiParams& params, double x, std::span<double> out) {
    if (!(std::abs(x) <= 1.0)) {
        throw DomainError("jacobi_poly: |x| must not exceed 1");
    }
    const std::size_t count = out.size();
    if (count == 0) {
        return;
    }
    const double a = params.alpha();
    const double b = params.beta();
    const double ab = a + b;
    out[0] = 1.0;
    if (count == 1) {
        return;
    }
    out[1] = (a + 1.0) + 0.5 * (ab + 2.0) * (x - 1.0);
    const double a2b2 = (a - b) * (a + b);
    for (std::size_t i = 2; i < count; ++i) {
        const double n = static_cast<double>(i);
        const double c = 2.0 * n + ab;
        const double d = 2.0 * n * (n + ab) * (c - 2.0);
        const double e = (c - 1.0) * (c * (c - 2.0) * x + a2b2);
        const double f = 2.0 * (n + a - 1.0) * (n + b - 1.0) * c;
        out[i] = (e * out[i - 1] - f * out[i - 2]) / d;
    }
}

double jacobi_poly(const JacobiParams& params, int n, double x) {
    if (!(std::abs(x) <= 1.0)) {
        throw DomainError("jacobi_poly: |x| must not exceed 1");
    }
    if (n < 0) {
        return 0.0;
    }
    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    jacobi_poly_all(params, x, values);
    return values.back();
}

double norm_constant(const JacobiParams& params, int n) {
    const double a = params.alpha();
    const double b = params.beta();
    // c_n^{-2} = Gamma(n+a+1) Gamma(n+b+1) / ((2n+a+b+1) Gamma(n+1) Gamma(n+a+b+1));
    // at n = 0 the last two factors merge into Gamma(a+b+2), which stays
    // finite when a + b + 1 = 0.
    double log_inv_sq = std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) - std::lgamma(n + 1.0);
    if (n == 0) {
        log_inv_sq -= std::lgamma(a + b + 2.0);
    } else {
        log_inv_sq -= std::log(2.0 * n + a + b + 1.0) + std::lgamma(n + a + b + 1.0);
    }
    return std::exp(-0.5 * log_inv_sq);
}

namespace {

double half_angle_power(double s, double exponent, const char* where) {
    if (s > 0.0) {
        return exponent == 0.0 ? 1.0 : std::exp(exponent * std::log(s));
    }
    if (exponent > 0.0) {
        return 0.0;
    }
    throw DomainError(std::string("psi: singular at the endpoint theta = ") + where);
}

void check_angle(const Angle& t) {
    if (!(t.theta >= 0.0) || !(t.comp >= 0.0)) {
        throw DomainError("theta must lie in [0, pi]");
    }
}

} // namespace

double psi(const JacobiParams& params, const Angle& t) {
    check_angle(t);
    return half_angle_power(t.sin_half(), params.alpha() + 0.5, "0") *
           half_angle_power(t.cos_half(), params.beta() + 0.5, "pi");
}

double psi(const JacobiParams& params, double theta) { return psi(params, Angle::at(theta)); }

void phi_all(const JacobiParams& params, const Angle& t, std::span<double> out) {
    const double w = psi(params, t);
    jacobi_poly_all(params, t.cos(), out);
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] *= w * norm_constant(params, static_cast<int>(n));
    }
}

double phi(const JacobiParams& params, int n, const Angle& t) {
    if (n < 0) {
        return 0.0;
    }
    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    phi_all(params, t, values);
    return values.back();
}

double phi(const JacobiParams& params, int n, double theta) { return phi(params, n, Angle::at(theta)); }

double eigenvalue(const JacobiParams& params, int n) {
    const double v = n + params.A();
    return v * v;
}

double critical_exponent(const JacobiParams& params) {
    const double m = std::min(params.alpha(), params.beta()) + 0.5;
    if (m >= 0.0) {
        return kInf;
    }
    return -1.0 / m;
}

double conjugate_exponent(double p) {
    if (std::isinf(p)) {
        return 1.0;
    }
    if (p == 1.0) {
        return kInf;
    }
    return p / (p - 1.0);
}

ExponentRange exponent_range(const JacobiParams& params) {
    const double upper = critical_exponent(params);
    if (std::isinf(upper)) {
        return {1.0, kInf};
    }
    return {conjugate_exponent(upper), upper};
}

} // namespace jacsob
