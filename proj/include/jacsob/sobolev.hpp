#pragma once

#include "jacsob/half_angle.hpp"
#include "jacsob/quadrature.hpp"
#include "jacsob/report.hpp"
#include "jacsob/spectral_ops.hpp"

#include <span>
#include <vector>

namespace jacsob {

struct SobolevVariant {
    DerivativeVariant kind = DerivativeVariant::variable_index;
    int m = 1;
    double p = 2.0;
};

/// Throws ConfigError, reporting E(alpha, beta), unless p lies in it.
void require_exponent(const JacobiParams& params, double p);

/// sum_{k=0}^m || D^{(k)} f ||_p with the derivative of the chosen kind.
double sobolev_norm(const SpectralCoefficients& c, const SobolevVariant& v, BasisCache& cache);

/// || g ||_p where f = L^{-s/2} g, or (1 + L)^{-s/2} g when zero is an eigenvalue.
double potential_norm(const SpectralCoefficients& c, double s, double p, BasisCache& cache);

/// Psi^{-alpha,-beta} with its derivatives in closed form.
class CounterexampleFunction {
public:
    /// Requires alpha != 0 and beta != 0.
    explicit CounterexampleFunction(const JacobiParams& params);

    const JacobiParams& params() const noexcept { return params_; }

    const HalfAngleExpr& f() const noexcept { return f_; }
    /// D_{alpha,beta} f
    const HalfAngleExpr& first() const noexcept { return d1_; }
    /// D^{(2)} f = D_{alpha+1,beta+1} D_{alpha,beta} f
    const HalfAngleExpr& second() const noexcept { return d2_; }
    /// interlaced order 2: D*_{alpha,beta} D_{alpha,beta} f
    const HalfAngleExpr& interlaced() const noexcept { return dd_; }

    double operator()(const Angle& t) const { return f_(t); }

private:
    JacobiParams params_;
    HalfAngleExpr f_;
    HalfAngleExpr d1_;
    HalfAngleExpr d2_;
    HalfAngleExpr dd_;
};

struct BlowupPoint {
    double eps;   // node-aligned window edge
    double norm;  // || f ||_{L^p(eps, pi - eps)}
    double power; // norm^p
};

struct BlowupResult {
    std::vector<BlowupPoint> points;
    /// Least-squares slope of log norm against log eps.
    double norm_slope;
    /// Least-squares slope of log power against log eps.
    double power_slope;
    /// Exponent s of the singular part of the power, I(eps) ~ C0 + K eps^s,
    /// fitted from increments I(eps_j) - I(eps_{j-1}) over a geometric eps
    /// sequence. s < 0 diverges, s near 0 is logarithmic, s > 0 converges.
    double singular_exponent;

    /// max over points with eps <= eps_max of |norm - norm(eps_min)| / norm(eps_min).
    double cauchy_defect(double eps_max) const;
};

/// Truncated L^p norms over windows (eps, pi - eps) for decreasing eps.
BlowupResult blowup_diagnostic(const PointFunction& f, const GridPtr& grid, double p, std::span<const double> epsilons);

/// Geometric panel edges of the grid in [lo, hi], decreasing.
std::vector<double> geometric_epsilons(const QuadratureGrid& grid, double lo, double hi);

/// Pointwise bounds of the inclusion counterexample, with fitted constants.
ExperimentReport counterexample_bounds_check(const JacobiParams& params, const GridSpec& grid);

} // namespace jacsob
