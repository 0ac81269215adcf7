#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>

namespace jacsob {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Type parameters (alpha, beta) of the Jacobi setting on (0, pi).
///
/// Both must exceed -1. The derived constant A = (alpha + beta + 1) / 2 is
/// cached; eigenvalues are (n + A)^2.
class JacobiParams {
public:
    JacobiParams(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double A() const noexcept { return a_; }

    /// alpha + beta = -1: zero is an eigenvalue and Riesz potentials are
    /// replaced by Bessel potentials.
    bool zero_eigenvalue() const noexcept;

    /// (alpha + k, beta + k)
    JacobiParams shifted(int k) const;

    std::string to_string() const;

    friend bool operator==(const JacobiParams& a, const JacobiParams& b) noexcept {
        return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
    }

private:
    double alpha_;
    double beta_;
    double a_;
};

/// The exponent range E(alpha, beta) = (lower, upper); upper may be infinite.
struct ExponentRange {
    double lower;
    double upper;

    bool contains(double p) const noexcept { return p > lower && p < upper; }
    std::string to_string() const;
};

/// A point of (0, pi) carried together with its distance to pi, so that
/// nodes clustered at the right endpoint keep full relative precision.
struct Angle {
    double theta;
    double comp; // pi - theta

    static Angle at(double theta) noexcept { return {theta, kPi - theta}; }
    static Angle from_right(double comp) noexcept { return {kPi - comp, comp}; }

    double sin_half() const noexcept { return std::sin(0.5 * theta); }
    double cos_half() const noexcept { return std::sin(0.5 * comp); }
    double cos() const noexcept { return theta <= comp ? std::cos(theta) : -std::cos(comp); }
    double sin() const noexcept { return theta <= comp ? std::sin(theta) : std::sin(comp); }
};

/// Rising factorial (z)_k = z (z+1) ... (z+k-1), (z)_0 = 1.
double pochhammer(double z, int k);

/// Integer path: exact zero whenever the product passes through zero.
double pochhammer(long z, int k);

/// Jacobi polynomial P_n^{(alpha,beta)}(x) in Szego's normalization, by the
/// three-term recurrence. Throws DomainError for |x| > 1.
double jacobi_poly(const JacobiParams& params, int n, double x);

/// Fills out[0..out.size()) with P_0(x) ... P_{size-1}(x).
void jacobi_poly_all(const JacobiParams& params, double x, std::span<double> out);

/// c_n with \int_0^pi (Psi c_n P_n(cos theta))^2 d theta = 1, taken positive.
double norm_constant(const JacobiParams& params, int n);

/// Psi(theta) = sin(theta/2)^{alpha+1/2} cos(theta/2)^{beta+1/2}.
double psi(const JacobiParams& params, double theta);
double psi(const JacobiParams& params, const Angle& t);

/// Jacobi trigonometric function phi_n = Psi c_n P_n(cos theta); zero for n < 0.
double phi(const JacobiParams& params, int n, double theta);
double phi(const JacobiParams& params, int n, const Angle& t);

/// phi_0 ... phi_{size-1} at one point.
void phi_all(const JacobiParams& params, const Angle& t, std::span<double> out);

/// lambda_n = (n + A)^2
double eigenvalue(const JacobiParams& params, int n);

/// p(alpha, beta): infinity when alpha, beta >= -1/2.
double critical_exponent(const JacobiParams& params);

/// E(alpha, beta).
ExponentRange exponent_range(const JacobiParams& params);

/// Conjugate exponent p' with 1/p + 1/p' = 1 (1 <-> infinity).
double conjugate_exponent(double p);

} // namespace jacsob
