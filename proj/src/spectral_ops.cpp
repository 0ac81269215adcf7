#include "jacsob/spectral_ops.hpp"

#include "jacsob/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jacsob {

namespace {

double sign_pow(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

void require_order(int k) {
    if (k < 0) {
        throw ConfigError("derivative order must be nonnegative, got " + std::to_string(k));
    }
}

void require_nonzero_eigenvalue(const JacobiParams& p, const char* what) {
    if (p.zero_eigenvalue()) {
        throw ConfigError(std::string(what) + " requires alpha + beta != -1 (zero is an eigenvalue for " +
                          p.to_string() + "); use the Bessel/tilde variant");
    }
}

void require_basis(const SpectralCoefficients& c, const JacobiParams& expected) {
    if (!(c.params == expected)) {
        throw BasisMismatch("coefficients are in basis " + c.params.to_string() + ", operator expects " +
                            expected.to_string());
    }
}

// sqrt((n-k+1)_k (n+alpha+beta+1)_k)
double lowering_surd(const JacobiParams& p, long n, int k) {
    const double ab1 = p.alpha() + p.beta() + 1.0;
    const double a = pochhammer(n - k + 1, k);
    if (a == 0.0) {
        return 0.0;
    }
    return std::sqrt(a * pochhammer(static_cast<double>(n) + ab1, k));
}

// sqrt((n+1)_j (n+2k-j+alpha+beta+1)_j)
double raising_surd(const JacobiParams& p, long n, int k, int j) {
    const double ab1 = p.alpha() + p.beta() + 1.0;
    return std::sqrt(pochhammer(n + 1, j) * pochhammer(static_cast<double>(n + 2 * k - j) + ab1, j));
}

double int_pow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

void require_r(double r) {
    if (!(r > 0.0 && r < 1.0)) {
        throw ConfigError("r must lie in (0, 1), got " + std::to_string(r));
    }
}

} // namespace

SpectralCoefficients apply_multiplier(const MultiplierOp& op, const SpectralCoefficients& c) {
    require_basis(c, op.source);
    const long len = static_cast<long>(c.size());
    std::vector<double> out(static_cast<std::size_t>(len + std::max(op.shift, 0)), 0.0);
    for (long n = 0; n < len; ++n) {
        const long m = n + op.shift;
        if (m < 0 || c.coeffs[n] == 0.0) {
            continue;
        }
        out[static_cast<std::size_t>(m)] = op.g(n) * c.coeffs[n];
    }
    return SpectralCoefficients(op.target, std::move(out));
}

JacobiParams derivative_target(const JacobiParams& params, const DerivativeKind& kind) {
    require_order(kind.order);
    if (kind.variant == DerivativeVariant::variable_index) {
        return params.shifted(kind.order);
    }
    return kind.order % 2 == 0 ? params : params.shifted(1);
}

MultiplierOp derivative_op(const JacobiParams& params, const DerivativeKind& kind) {
    const int k = kind.order;
    const JacobiParams target = derivative_target(params, kind);
    if (kind.variant == DerivativeVariant::variable_index) {
        return {params, target, -k, [params, k](long n) { return sign_pow(k) * lowering_surd(params, n, k); }};
    }
    const double ab1 = params.alpha() + params.beta() + 1.0;
    return {params, target, k % 2 == 0 ? 0 : -1, [ab1, k](long n) {
                const double q = static_cast<double>(n) * (static_cast<double>(n) + ab1);
                const double even = int_pow(q, k / 2);
                return sign_pow(k) * (k % 2 == 0 ? even : even * std::sqrt(q));
            }};
}

SpectralCoefficients derivative_spectral(const DerivativeKind& kind, const SpectralCoefficients& c) {
    return apply_multiplier(derivative_op(c.params, kind), c);
}

MultiplierOp adjoint_op(const JacobiParams& params, int k) { return partial_adjoint_op(params, k, k); }

SpectralCoefficients adjoint_spectral(const JacobiParams& params, int k, const SpectralCoefficients& c) {
    return apply_multiplier(adjoint_op(params, k), c);
}

MultiplierOp partial_adjoint_op(const JacobiParams& params, int k, int j) {
    require_order(k);
    if (j < 0 || j > k) {
        throw ConfigError("partial adjoint needs 0 <= j <= k");
    }
    return {params.shifted(k), params.shifted(k - j), j,
            [params, k, j](long n) { return sign_pow(j) * raising_surd(params, n, k, j); }};
}

SpectralCoefficients partial_adjoint_spectral(const JacobiParams& params, int k, int j, const SpectralCoefficients& c) {
    return apply_multiplier(partial_adjoint_op(params, k, j), c);
}

PotentialKind default_potential_kind(const JacobiParams& params) {
    return params.zero_eigenvalue() ? PotentialKind::bessel : PotentialKind::riesz;
}

namespace {

MultiplierOp power_of_eigenvalue(const JacobiParams& p, double exponent, PotentialKind kind) {
    if (kind == PotentialKind::riesz) {
        require_nonzero_eigenvalue(p, "the Riesz potential");
    }
    const double shift = kind == PotentialKind::bessel ? 1.0 : 0.0;
    return {p, p, 0, [p, exponent, shift](long n) { return std::pow(shift + eigenvalue(p, static_cast<int>(n)), exponent); }};
}

} // namespace

SpectralCoefficients potential(const SpectralCoefficients& c, double sigma, PotentialKind kind) {
    if (!(sigma > 0.0)) {
        throw ConfigError("potential order sigma must be positive");
    }
    return apply_multiplier(power_of_eigenvalue(c.params, -sigma, kind), c);
}

SpectralCoefficients potential_inverse(const SpectralCoefficients& c, double s, PotentialKind kind) {
    if (!(s > 0.0)) {
        throw ConfigError("potential order s must be positive");
    }
    return apply_multiplier(power_of_eigenvalue(c.params, 0.5 * s, kind), c);
}

MultiplierOp poisson_op(const JacobiParams& params, const PoissonSpec& spec) {
    const double A = params.A();
    switch (spec.mode) {
    case PoissonMode::semigroup: {
        const double t = spec.value;
        if (!(t > 0.0)) {
            throw ConfigError("semigroup time t must be positive");
        }
        return {params, params, 0, [t, A](long n) { return std::exp(-t * std::abs(static_cast<double>(n) + A)); }};
    }
    case PoissonMode::integral: {
        const double r = spec.value;
        require_r(r);
        return {params, params, 0, [r](long n) { return std::pow(r, static_cast<double>(n)); }};
    }
    case PoissonMode::spectral_integral:
    case PoissonMode::tail: {
        const double r = spec.value;
        require_r(r);
        const long l = spec.mode == PoissonMode::tail ? spec.l : -1;
        if (spec.mode == PoissonMode::tail && spec.l < 0) {
            throw ConfigError("tail index l must be nonnegative");
        }
        const double lr = std::log(r);
        return {params, params, 0, [lr, A, l](long n) {
                    return n <= l ? 0.0 : std::exp(lr * std::abs(static_cast<double>(n) + A));
                }};
    }
    }
    throw ConfigError("unknown Poisson mode");
}

SpectralCoefficients poisson(const SpectralCoefficients& c, const PoissonSpec& spec) {
    return apply_multiplier(poisson_op(c.params, spec), c);
}

double poisson_relation_residual(const SpectralCoefficients& c, double r) {
    require_r(r);
    const auto u = poisson(c, {PoissonMode::integral, r, 0});
    const double A = c.params.A();
    double worst = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        // r^{-A} r^{|n+A|} = r^{|n+A|-A}
        const double x = static_cast<double>(n) + A;
        const double e = x >= 0.0 ? static_cast<double>(n) : -static_cast<double>(n) - 2.0 * A;
        double rhs = std::pow(r, e) * c.coeffs[n];
        if (n == 0) {
            const double q = std::pow(r, std::abs(A) - A);
            rhs = (std::pow(r, e) + (1.0 - q)) * c.coeffs[0];
        }
        worst = std::max(worst, std::abs(u.coeffs[n] - rhs));
    }
    return worst;
}

MultiplierOp riesz_op(const JacobiParams& params, int k, RieszKind which) {
    require_order(k);
    const bool tilde = which == RieszKind::R1_tilde || which == RieszKind::R2_tilde;
    if (!tilde) {
        require_nonzero_eigenvalue(params, "the Riesz transform");
    }
    const double A = params.A();
    const double one = tilde ? 1.0 : 0.0;
    if (which == RieszKind::R1 || which == RieszKind::R1_tilde) {
        return {params, params.shifted(k), -k, [params, k, A, one](long n) {
                    const double x = static_cast<double>(n) + A;
                    return sign_pow(k) * lowering_surd(params, n, k) * std::pow(one + x * x, -0.5 * k);
                }};
    }
    return {params.shifted(k), params, k, [params, k, A, one](long n) {
                const double x = static_cast<double>(n) + A + k;
                return sign_pow(k) * raising_surd(params, n, k, k) * std::pow(one + x * x, -0.5 * k);
            }};
}

SpectralCoefficients riesz_transform(const JacobiParams& params, const SpectralCoefficients& c, int k, RieszKind which) {
    return apply_multiplier(riesz_op(params, k, which), c);
}

MultiplierOp riesz_inverse_op(const JacobiParams& params, int k, bool tilde) {
    require_order(k);
    if (!tilde) {
        require_nonzero_eigenvalue(params, "the inverse operator T");
    }
    const double A = params.A();
    const double ab1 = params.alpha() + params.beta() + 1.0;
    const double one = tilde ? 1.0 : 0.0;
    return {params, params, 0, [k, A, ab1, one](long n) {
                if (n < k) {
                    return 0.0;
                }
                const double x = static_cast<double>(n) + A;
                return int_pow(one + x * x, k) /
                       (pochhammer(n - k + 1, k) * pochhammer(static_cast<double>(n) + ab1, k));
            }};
}

SpectralCoefficients riesz_inverse_T(const SpectralCoefficients& c, int k, bool tilde) {
    return apply_multiplier(riesz_inverse_op(c.params, k, tilde), c);
}

PointFunction synthesis_function(const SpectralCoefficients& c) {
    std::vector<double> w(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        w[n] = c.coeffs[n] * norm_constant(c.params, static_cast<int>(n));
    }
    return [params = c.params, w = std::move(w)](const Angle& t) {
        thread_local std::vector<double> buf;
        buf.resize(w.size());
        jacobi_poly_all(params, t.cos(), buf);
        double s = 0.0;
        for (std::size_t n = 0; n < w.size(); ++n) {
            s += w[n] * buf[n];
        }
        return psi(params, t) * s;
    };
}

PointFunction pointwise_operator(PointFunction f, const JacobiParams& params, PointwiseMode mode, double h) {
    const double ka = (2.0 * params.alpha() + 1.0) / 4.0;
    const double kb = (2.0 * params.beta() + 1.0) / 4.0;
    const double sign = mode == PointwiseMode::D ? 1.0 : -1.0;
    // Difference f / rho rather than f, rho = Psi of the input basis: the quotient
    // is smooth for band-limited input, so nested stencils stay accurate near the
    // endpoints. The cot/tan terms then act on f / rho through rho'/rho.
    const JacobiParams in = mode == PointwiseMode::D ? params : params.shifted(1);
    const double ra = (in.alpha() + 0.5) / 2.0;
    const double rb = (in.beta() + 0.5) / 2.0;
    return [f = std::move(f), in, ka, kb, ra, rb, sign, h](const Angle& t) {
        const auto at = [&](double d) {
            const Angle u{t.theta + d, t.comp - d};
            return f(u) / psi(in, u);
        };
        const double dg = (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
        const double s = t.sin_half();
        const double c = t.cos_half();
        const double rho = psi(in, t);
        const double log_rho = ra * c / s - rb * s / c;
        const double mult = -ka * c / s + kb * s / c;
        return rho * (sign * dg + (sign * log_rho + mult) * (f(t) / rho));
    };
}

PointwiseDerivative sample_interior(const PointFunction& f, const GridPtr& grid) {
    const Window w = grid->interior();
    if (w.end < w.begin + 5) {
        throw ConfigError("grid too coarse: fewer than 5 interior nodes for finite differences");
    }
    std::vector<double> v(grid->size(), 0.0);
    std::vector<bool> ok(grid->size(), false);
    for (std::size_t i = w.begin; i < w.end; ++i) {
        v[i] = f(grid->nodes()[i]);
        ok[i] = true;
    }
    return {SampledFunction(grid, std::move(v)), std::move(ok), w};
}

PointwiseDerivative derivative_pointwise(const PointFunction& f, const GridPtr& grid, const JacobiParams& params,
                                         PointwiseMode mode, double h) {
    return sample_interior(pointwise_operator(f, params, mode, h), grid);
}

PointFunction pointwise_chain(PointFunction f, const JacobiParams& params, int k) {
    require_order(k);
    const double h = k >= 2 ? kFdChainStep : kFdStep;
    for (int j = 0; j < k; ++j) {
        f = pointwise_operator(std::move(f), params.shifted(j), PointwiseMode::D, h);
    }
    return f;
}

std::vector<double> default_r_family() {
    std::vector<double> r;
    for (int j = 1; j <= 20; ++j) {
        r.push_back(1.0 - std::ldexp(1.0, -j));
    }
    return r;
}

SampledFunction maximal_over(const std::vector<SpectralCoefficients>& family, BasisCache& cache) {
    if (family.empty()) {
        throw ConfigError("maximal estimate over an empty family");
    }
    const JacobiParams& p = family.front().params;
    std::size_t len = 0;
    for (const auto& c : family) {
        require_basis(c, p);
        len = std::max(len, c.size());
    }
    Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(len), static_cast<Eigen::Index>(family.size()));
    for (std::size_t j = 0; j < family.size(); ++j) {
        for (std::size_t n = 0; n < family[j].size(); ++n) {
            coeffs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) = family[j].coeffs[n];
        }
    }
    const Eigen::MatrixXd values = cache.table(p, static_cast<int>(len)).synthesize_many(coeffs);
    std::vector<double> out(cache.grid()->size());
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        out[static_cast<std::size_t>(i)] = values.row(i).cwiseAbs().maxCoeff();
    }
    return SampledFunction(cache.grid(), std::move(out));
}

SampledFunction maximal_estimate(const SpectralCoefficients& c, MaximalFamily family, BasisCache& cache,
                                 std::span<const double> sampling) {
    if (family == MaximalFamily::partial_sums) {
        const BasisTable& table = cache.table(c.params, static_cast<int>(c.size()));
        const auto& B = table.matrix();
        std::vector<double> out(cache.grid()->size(), 0.0);
        for (Eigen::Index i = 0; i < B.rows(); ++i) {
            double s = 0.0;
            double best = 0.0;
            for (std::size_t n = 0; n < c.size(); ++n) {
                s += c.coeffs[n] * B(i, static_cast<Eigen::Index>(n));
                best = std::max(best, std::abs(s));
            }
            out[static_cast<std::size_t>(i)] = best;
        }
        return SampledFunction(cache.grid(), std::move(out));
    }
    if (sampling.empty()) {
        throw ConfigError("maximal estimate over an empty parameter family");
    }
    std::vector<SpectralCoefficients> members;
    members.reserve(sampling.size());
    for (double s : sampling) {
        PoissonSpec spec;
        spec.value = s;
        spec.mode = family == MaximalFamily::U_r           ? PoissonMode::integral
                    : family == MaximalFamily::U_r_spectral ? PoissonMode::spectral_integral
                                                            : PoissonMode::semigroup;
        members.push_back(poisson(c, spec));
    }
    return maximal_over(members, cache);
}

SampledFunction maximal_estimate(const SpectralCoefficients& c, MaximalFamily family, const GridPtr& grid,
                                 std::span<const double> sampling) {
    BasisCache cache(grid);
    return maximal_estimate(c, family, cache, sampling);
}

int kernel_required_terms(const JacobiParams& params, double r) {
    require_r(r);
    const double e = 2.0 * (params.alpha() + params.beta() + 2.0) + 1.0;
    const double lr = std::log(r);
    // r^N N^e is unimodal in N with its peak at e / (-log r)
    int n = std::max(1, static_cast<int>(std::ceil(e / -lr)));
    while (n * lr + e * std::log(static_cast<double>(n)) >= std::log(1e-12)) {
        ++n;
    }
    return n;
}

namespace {

void require_terms(const JacobiParams& params, double r, int N) {
    const int need = kernel_required_terms(params, r);
    if (N < need) {
        throw ConfigError("kernel truncation N = " + std::to_string(N) + " too small at r = " + std::to_string(r) +
                          "; need N >= " + std::to_string(need));
    }
}

} // namespace

double kernel_eval(const JacobiParams& params, double r, double theta, double varphi, int N) {
    require_terms(params, r, N);
    std::vector<double> a(static_cast<std::size_t>(N));
    std::vector<double> b(static_cast<std::size_t>(N));
    phi_all(params, Angle::at(theta), a);
    phi_all(params, Angle::at(varphi), b);
    double s = 0.0;
    double rn = 1.0;
    for (int n = 0; n < N; ++n) {
        s += rn * (a[n] * b[n]);
        rn *= r;
    }
    return s;
}

std::vector<std::vector<double>> kernel_matrix(const JacobiParams& params, double r, std::span<const double> thetas,
                                               std::span<const double> varphis, int N) {
    require_terms(params, r, N);
    const auto table = [&](std::span<const double> pts) {
        std::vector<std::vector<double>> t(pts.size(), std::vector<double>(static_cast<std::size_t>(N)));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            phi_all(params, Angle::at(pts[i]), t[i]);
        }
        return t;
    };
    const auto a = table(thetas);
    const auto b = table(varphis);
    std::vector<double> rn(static_cast<std::size_t>(N));
    rn[0] = 1.0;
    for (int n = 1; n < N; ++n) {
        rn[n] = rn[n - 1] * r;
    }
    std::vector<std::vector<double>> out(thetas.size(), std::vector<double>(varphis.size()));
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        for (std::size_t j = 0; j < varphis.size(); ++j) {
            double s = 0.0;
            for (int n = 0; n < N; ++n) {
                s += rn[n] * (a[i][n] * b[j][n]);
            }
            out[i][j] = s;
        }
    }
    return out;
}

} // namespace jacsob
