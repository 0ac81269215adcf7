#pragma once

#include "jacsob/jacobi.hpp"
#include "jacsob/quadrature.hpp"

#include <functional>
#include <span>
#include <vector>

namespace jacsob {

/// f -> sum_n g(n) a_n(f) phi_{n+d} in the target basis.
struct MultiplierOp {
    JacobiParams source;
    JacobiParams target;
    int shift = 0;
    std::function<double(long)> g;
};

/// Output length is input length + max(d, 0); indices n + d < 0 are dropped.
/// Throws BasisMismatch unless c.params == op.source.
SpectralCoefficients apply_multiplier(const MultiplierOp& op, const SpectralCoefficients& c);

enum class DerivativeVariant { variable_index, interlacing };

struct DerivativeKind {
    DerivativeVariant variant = DerivativeVariant::variable_index;
    int order = 1;
};

/// D^{(k)} (variable index) or the interlaced ...D* D D* D of order k.
MultiplierOp derivative_op(const JacobiParams& params, const DerivativeKind& kind);
SpectralCoefficients derivative_spectral(const DerivativeKind& kind, const SpectralCoefficients& c);

/// Basis of the output of derivative_spectral.
JacobiParams derivative_target(const JacobiParams& params, const DerivativeKind& kind);

/// (D^{(k)})*: basis (alpha+k, beta+k) -> (alpha, beta), shift +k.
MultiplierOp adjoint_op(const JacobiParams& params, int k);
SpectralCoefficients adjoint_spectral(const JacobiParams& params, int k, const SpectralCoefficients& c);

/// (D^{(k,j)})*: basis (alpha+k, beta+k) -> (alpha+k-j, beta+k-j), shift +j.
MultiplierOp partial_adjoint_op(const JacobiParams& params, int k, int j);
SpectralCoefficients partial_adjoint_spectral(const JacobiParams& params, int k, int j, const SpectralCoefficients& c);

enum class PotentialKind { riesz, bessel };

/// The Bessel kind when zero is an eigenvalue, Riesz otherwise.
PotentialKind default_potential_kind(const JacobiParams& params);

/// lambda_n^{-sigma} (riesz) or (1 + lambda_n)^{-sigma} (bessel).
SpectralCoefficients potential(const SpectralCoefficients& c, double sigma, PotentialKind kind);

/// lambda_n^{s/2} (riesz) or (1 + lambda_n)^{s/2} (bessel).
SpectralCoefficients potential_inverse(const SpectralCoefficients& c, double s, PotentialKind kind);

enum class PoissonMode { semigroup, integral, spectral_integral, tail };

struct PoissonSpec {
    PoissonMode mode = PoissonMode::integral;
    double value = 0.5; // t for the semigroup, r otherwise
    int l = 0;          // tail: indices <= l are zeroed
};

/// Multiplier of the requested Poisson-type operator on the basis of params.
MultiplierOp poisson_op(const JacobiParams& params, const PoissonSpec& spec);
SpectralCoefficients poisson(const SpectralCoefficients& c, const PoissonSpec& spec);

/// max_n |(U_r c)_n - r^{-A} (U~_r c)_n - (1 - r^{|A|-A}) a_0 delta_{n0}|,
/// with the composed exponent |n+A| - A reduced before exponentiation.
double poisson_relation_residual(const SpectralCoefficients& c, double r);

enum class RieszKind { R1, R2, R1_tilde, R2_tilde };

/// R1 = D^{(k)} L^{-k/2} on basis (alpha, beta); R2 = (D^{(k)})* L_{alpha+k,beta+k}^{-k/2}
/// takes input in basis (alpha+k, beta+k). Tilde kinds use (1 + L) in place of L.
MultiplierOp riesz_op(const JacobiParams& params, int k, RieszKind which);

/// params is the base pair (alpha, beta) in both cases.
SpectralCoefficients riesz_transform(const JacobiParams& params, const SpectralCoefficients& c, int k, RieszKind which);

/// (n+A)^{2k} / ((n-k+1)_k (n+alpha+beta+1)_k) for n >= k, zero below.
MultiplierOp riesz_inverse_op(const JacobiParams& params, int k, bool tilde);
SpectralCoefficients riesz_inverse_T(const SpectralCoefficients& c, int k, bool tilde);

/// A function evaluable anywhere in (0, pi).
using PointFunction = std::function<double(const Angle&)>;

/// sum_n c_n phi_n as a point function.
PointFunction synthesis_function(const SpectralCoefficients& c);

enum class PointwiseMode { D, D_star };

/// Step of the first-order stencil.
inline constexpr double kFdStep = 1e-4 * kPi;
/// Step used inside chains of two or more nested stencils.
inline constexpr double kFdChainStep = 5e-4 * kPi;

/// D or D* of f, with d/dtheta by the 5-point central stencil of step h and
/// the cot/tan terms exact.
PointFunction pointwise_operator(PointFunction f, const JacobiParams& params, PointwiseMode mode, double h = kFdStep);

/// Values on the grid; only nodes inside interior() are reliable, the rest
/// hold 0.
struct PointwiseDerivative {
    SampledFunction values;
    std::vector<bool> reliable;
    Window interior;
};

/// Samples pointwise_operator(f) on the grid interior. Throws ConfigError on
/// grids with fewer than 5 interior nodes.
PointwiseDerivative derivative_pointwise(const PointFunction& f, const GridPtr& grid, const JacobiParams& params,
                                         PointwiseMode mode, double h = kFdStep);

/// Samples an already composed point function on the interior nodes.
PointwiseDerivative sample_interior(const PointFunction& f, const GridPtr& grid);

/// D^{(k)} = D_{alpha+k-1,beta+k-1} ... D_{alpha,beta} as nested stencils.
PointFunction pointwise_chain(PointFunction f, const JacobiParams& params, int k);

enum class MaximalFamily { U_r, U_r_spectral, H_t, partial_sums };

/// r = 1 - 2^{-j}, j = 1..20.
std::vector<double> default_r_family();

/// Pointwise max of |T_s f| over the sampled parameters s (r-values, or
/// t-values for H_t; ignored for partial sums, which run over all N).
SampledFunction maximal_estimate(const SpectralCoefficients& c, MaximalFamily family, BasisCache& cache,
                                 std::span<const double> sampling);
SampledFunction maximal_estimate(const SpectralCoefficients& c, MaximalFamily family, const GridPtr& grid,
                                 std::span<const double> sampling);

/// Pointwise max of |synthesis| over a family of coefficient vectors in one basis.
SampledFunction maximal_over(const std::vector<SpectralCoefficients>& family, BasisCache& cache);

/// Smallest N with r^N N^{2(alpha+beta+2)+1} < 1e-12.
int kernel_required_terms(const JacobiParams& params, double r);

/// sum_{n<N} r^n phi_n(theta) phi_n(varphi). Throws ConfigError, naming the
/// required N, when N is too small for the tail to be negligible.
double kernel_eval(const JacobiParams& params, double r, double theta, double varphi, int N);

/// Kernel on the product of two point sets, one row per theta.
std::vector<std::vector<double>> kernel_matrix(const JacobiParams& params, double r, std::span<const double> thetas,
                                               std::span<const double> varphis, int N);

} // namespace jacsob
