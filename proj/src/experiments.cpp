#include "jacsob/experiments.hpp"

#include "jacsob/errors.hpp"
#include "jacsob/half_angle.hpp"
#include "jacsob/sobolev.hpp"
#include "jacsob/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jacsob {

std::vector<JacobiParams> default_parameter_set() {
    return {{-0.5, -0.5}, {0, 0}, {0.25, 0.25}, {2.5, 0.7}, {-0.75, 0}, {-0.9, -0.6}, {-0.25, -0.75}};
}

std::vector<SpectralCoefficients> test_family(const JacobiParams& params, int N, std::uint64_t seed, int count) {
    std::vector<SpectralCoefficients> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out.push_back(random_test_function(params, N, family_seed(seed, i)));
    }
    return out;
}

namespace {

// Largest eps used for window norms and Cauchy checks.
constexpr double kCauchyEps = 1e-4;
// Largest eps entering exponent fits.
constexpr double kFitEps = 1e-6;

double rel_change(double now, double before) { return std::abs(now - before) / std::abs(before); }

GridPtr checked_grid(const GridSpec& spec) { return build_grid(spec); }

void check_band_limit(int N, const GridSpec& spec, int minimum, bool doubling) {
    if (N < minimum) {
        throw ConfigError("N must be at least " + std::to_string(minimum) + ", got " + std::to_string(N));
    }
    if (doubling && N % 2 != 0) {
        throw ConfigError("N must be even: stability is measured between N/2 and N");
    }
    const int resolved = max_resolved_degree(*checked_grid(spec));
    if (N > resolved) {
        throw ConfigError("N = " + std::to_string(N) + " exceeds what the grid resolves (" + std::to_string(resolved) +
                          "); refine --grid-panels or --grid-nodes");
    }
}

void check_order(int m) {
    if (m < 1 || m > 8) {
        throw ConfigError("order m must lie in 1..8, got " + std::to_string(m));
    }
}

ExperimentReport make_report(const std::string& name, const JacobiParams& params, const GridSpec& grid) {
    ExperimentReport r;
    r.name = name;
    r.params = {params};
    r.settings.grid = grid;
    return r;
}

// sup |got - want| / max(sup |want|, sup |input|) over the interior nodes
struct RelSup {
    double err = 0.0;
    double scale = 0.0;

    void add(double got, double want, double input) {
        err = std::max(err, std::abs(got - want));
        scale = std::max({scale, std::abs(want), std::abs(input)});
    }
    double value() const { return scale > 0.0 ? err / scale : err; }
};

// (1/sin theta) d/dtheta by the 5-point stencil
PointFunction sin_derivative(PointFunction f, double h) {
    return [f = std::move(f), h](const Angle& t) {
        const auto at = [&](double d) { return f(Angle{t.theta + d, t.comp - d}); };
        return (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h) / t.sin();
    };
}

PointFunction sin_derivative_power(PointFunction f, int k) {
    const double h = k >= 2 ? kFdChainStep : kFdStep;
    for (int i = 0; i < k; ++i) {
        f = sin_derivative(std::move(f), h);
    }
    return f;
}

double int_pow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

} // namespace

void check_identity_suite(const JacobiParams&, int N, const GridSpec& grid) { check_band_limit(N, grid, 8, false); }

ExperimentReport run_identity_suite(const JacobiParams& params, int N, const GridSpec& spec) {
    check_identity_suite(params, N, spec);
    const GridPtr g = build_grid(spec);
    ExperimentReport r = make_report("identities", params, spec);
    r.settings.N = N;

    {
        const BasisTable table(g, params, 41);
        const auto& B = table.matrix();
        double defect = 0.0;
        std::vector<double> v(g->size());
        for (int n = 0; n <= 40; ++n) {
            for (int m = 0; m <= n; ++m) {
                for (std::size_t i = 0; i < g->size(); ++i) {
                    v[i] = B(static_cast<Eigen::Index>(i), n) * B(static_cast<Eigen::Index>(i), m);
                }
                defect = std::max(defect, std::abs(integrate(SampledFunction(g, v)) - (n == m ? 1.0 : 0.0)));
            }
        }
        r.add_le("orthonormality: max |<phi_n, phi_m> - delta_nm|, n, m <= 40", defect, 1e-8);
    }

    const Window w = g->interior();
    const int nmax = std::min(20, N - 1);
    const auto& nodes = g->nodes();

    for (int k = 1; k <= 3; ++k) {
        RelSup worst_d;
        double worst = 0.0;
        for (int n = 0; n <= nmax; ++n) {
            const auto e = SpectralCoefficients::unit(params, n, n + 1);
            const PointFunction f = synthesis_function(e);
            const auto pw = sample_interior(pointwise_chain(f, params, k), g);
            const auto sp = synthesize(derivative_spectral({DerivativeVariant::variable_index, k}, e), g);
            RelSup rs;
            for (std::size_t i = w.begin; i < w.end; ++i) {
                rs.add(pw.values.values[i], sp.values[i], f(nodes[i]));
            }
            worst = std::max(worst, rs.value());
        }
        r.add_le("D^(" + std::to_string(k) + ") phi_n: spectral vs pointwise relative sup error, n <= 20", worst, 1e-6);

        double worst_adj = 0.0;
        for (int j = 1; j <= k; ++j) {
            const double h = j >= 2 ? kFdChainStep : kFdStep;
            for (int n = 0; n <= nmax; ++n) {
                const auto e = SpectralCoefficients::unit(params.shifted(k), n, n + 1);
                const PointFunction f = synthesis_function(e);
                PointFunction chain = f;
                for (int i = k - 1; i >= k - j; --i) {
                    chain = pointwise_operator(std::move(chain), params.shifted(i), PointwiseMode::D_star, h);
                }
                const auto pw = sample_interior(chain, g);
                const auto sp = synthesize(partial_adjoint_spectral(params, k, j, e), g);
                RelSup rs;
                for (std::size_t i = w.begin; i < w.end; ++i) {
                    rs.add(pw.values.values[i], sp.values[i], f(nodes[i]));
                }
                worst_adj = std::max(worst_adj, rs.value());
            }
        }
        r.add_le("(D^(" + std::to_string(k) + ",j))* phi_n, j <= k: spectral vs pointwise relative sup error, n <= 20",
                 worst_adj, 1e-6);
    }

    {
        double worst = 0.0;
        for (int n = 0; n <= nmax; ++n) {
            const PointFunction f = synthesis_function(SpectralCoefficients::unit(params, n, n + 1));
            const auto dd = sample_interior(
                pointwise_operator(pointwise_operator(f, params, PointwiseMode::D, kFdChainStep), params,
                                   PointwiseMode::D_star, kFdChainStep),
                g);
            const double lam = eigenvalue(params, n) - eigenvalue(params, 0);
            RelSup rs;
            for (std::size_t i = w.begin; i < w.end; ++i) {
                const double fi = f(nodes[i]);
                rs.add(dd.values.values[i], lam * fi, fi);
            }
            worst = std::max(worst, rs.value());
        }
        r.add_le("D* D phi_n = (lambda_n - lambda_0) phi_n pointwise, relative sup error, n <= 20", worst, 1e-5);
    }

    for (int k = 1; k <= 3; ++k) {
        double worst = 0.0;
        double worst_adj = 0.0;
        for (int n = 0; n <= nmax; ++n) {
            // D^{(k)} f = Psi sin^k ((1/sin) d/dtheta)^k (f / Psi); f / Psi = c_n P_n(cos theta)
            const double cn = norm_constant(params, n);
            const PointFunction poly = [params, n, cn](const Angle& t) { return cn * jacobi_poly(params, n, t.cos()); };
            const PointFunction inner = sin_derivative_power(poly, k);
            const auto sp = synthesize(derivative_spectral({DerivativeVariant::variable_index, k},
                                                           SpectralCoefficients::unit(params, n, n + 1)),
                                       g);
            RelSup rs;
            for (std::size_t i = w.begin; i < w.end; ++i) {
                const Angle& t = nodes[i];
                rs.add(psi(params, t) * int_pow(t.sin(), k) * inner(t), sp.values[i], phi(params, n, t));
            }
            worst = std::max(worst, rs.value());

            // (D^{(k)})* f = (-1)^k / Psi sin ((1/sin) d/dtheta)^k (sin^{k-1} Psi f)
            const JacobiParams up = params.shifted(k);
            const PointFunction weighted = [params, up, n, k](const Angle& t) {
                return int_pow(t.sin(), k - 1) * psi(params, t) * phi(up, n, t);
            };
            const PointFunction outer = sin_derivative_power(weighted, k);
            const auto spa = synthesize(adjoint_spectral(params, k, SpectralCoefficients::unit(up, n, n + 1)), g);
            RelSup ra;
            const double sign = k % 2 ? -1.0 : 1.0;
            for (std::size_t i = w.begin; i < w.end; ++i) {
                const Angle& t = nodes[i];
                ra.add(sign / psi(params, t) * t.sin() * outer(t), spa.values[i], phi(up, n, t));
            }
            worst_adj = std::max(worst_adj, ra.value());
        }
        r.add_le("factorization of D^(" + std::to_string(k) + ") through (1/sin d/dtheta)^k vs spectral, n <= 20",
                 worst, 1e-6);
        r.add_le("factorization of (D^(" + std::to_string(k) + "))* through (1/sin d/dtheta)^k vs spectral, n <= 20",
                 worst_adj, 1e-6);
    }

    {
        const auto c = random_test_function(params, N, 1);
        const auto d = derivative_spectral({DerivativeVariant::interlacing, 2}, c);
        const double A2 = params.A() * params.A();
        double worst = 0.0;
        for (int n = 0; n < N; ++n) {
            const double want = (eigenvalue(params, n) - A2) * c[n];
            worst = std::max(worst, want == 0.0 ? std::abs(d[n]) : std::abs(d[n] - want) / std::abs(want));
        }
        r.add_le("interlaced order 2 = L - A^2 on coefficients, max relative residual", worst, 1e-12);
    }
    return r;
}

void check_theorem_a(const JacobiParams& params, double p, int m, int N, const GridSpec& grid) {
    require_exponent(params, p);
    check_order(m);
    check_band_limit(N, grid, 16, true);
}

ExperimentReport run_theorem_a(const JacobiParams& params, double p, int m, std::uint64_t seed, int N,
                               const GridSpec& spec) {
    check_theorem_a(params, p, m, N, spec);
    BasisCache cache(build_grid(spec));
    ExperimentReport r = make_report("theorem-a", params, spec);
    r.settings = {N, p, m, seed, spec};
    const bool tilde = params.zero_eigenvalue();

    struct Range {
        double lo = kInf;
        double hi = 0.0;
    };
    const auto ratio_range = [&](int n) {
        Range out;
        for (const auto& c : test_family(params, n, seed)) {
            const double ratio =
                sobolev_norm(c, {DerivativeVariant::variable_index, m, p}, cache) / potential_norm(c, m, p, cache);
            out.lo = std::min(out.lo, ratio);
            out.hi = std::max(out.hi, ratio);
        }
        return out;
    };
    const Range full = ratio_range(N);
    const Range half = ratio_range(N / 2);
    r.add_gt("Sobolev/potential ratio: min over family at N", full.lo, 0.0);
    r.add_gt("Sobolev/potential ratio: max over family at N", full.hi, 0.0);
    r.add_le("ratio min: relative change N/2 -> N", rel_change(full.lo, half.lo), 0.1);
    r.add_le("ratio max: relative change N/2 -> N", rel_change(full.hi, half.hi), 0.1);

    const RieszKind k1 = tilde ? RieszKind::R1_tilde : RieszKind::R1;
    const RieszKind k2 = tilde ? RieszKind::R2_tilde : RieszKind::R2;
    for (int k = 1; k <= m; ++k) {
        double residual = 0.0;
        for (auto c : test_family(params, N, seed)) {
            for (int n = 0; n < k; ++n) {
                c.coeffs[n] = 0.0;
            }
            const auto back = riesz_inverse_T(riesz_transform(params, riesz_transform(params, c, k, k1), k, k2), k, tilde);
            for (int n = 0; n < N; ++n) {
                residual = std::max(residual, std::abs(back[n] - c[n]));
            }
        }
        r.add_le("T^" + std::to_string(k) + " R^(" + std::to_string(k) + ",2) R^(" + std::to_string(k) +
                     ",1) = id on indices >= k, max coefficient residual",
                 residual, 1e-12);

        const auto bound = [&](int n) {
            double C = 0.0;
            for (const auto& c : test_family(params, n, seed)) {
                const auto rg = riesz_transform(params, c, k, k1);
                const double num = lp_norm(cache.table(rg.params, n).synthesize(rg), p);
                C = std::max(C, num / lp_norm(cache.table(params, n).synthesize(c), p));
            }
            return C;
        };
        const double cn = bound(N);
        const double ch = bound(N / 2);
        r.add_gt("||R^(" + std::to_string(k) + ",1) g||_p <= C ||g||_p: fitted C at N", cn, 0.0);
        r.add_le("||R^(" + std::to_string(k) + ",1) g||_p <= C ||g||_p: relative change of C, N/2 -> N",
                 rel_change(cn, ch), 0.1);
    }
    return r;
}

namespace {

bool counterexample_applies(const JacobiParams& params, double p) {
    const double cap = 1.0 / p - 0.5;
    return params.alpha() != 0.0 && params.beta() != 0.0 && params.alpha() < cap && params.beta() < cap;
}

} // namespace

void check_theorem_b(const JacobiParams& params, double p, int N, const GridSpec& grid) {
    require_exponent(params, p);
    check_band_limit(N, grid, 16, true);
}

ExperimentReport run_theorem_b(const JacobiParams& params, double p, std::uint64_t seed, int N, const GridSpec& spec) {
    check_theorem_b(params, p, N, spec);
    const GridPtr g = build_grid(spec);
    BasisCache cache(g);
    ExperimentReport r = make_report("theorem-b", params, spec);
    r.settings = {N, p, 2, seed, spec};

    const auto inclusion = [&](int n) {
        double C = 0.0;
        for (const auto& c : test_family(params, n, seed)) {
            C = std::max(C, sobolev_norm(c, {DerivativeVariant::interlacing, 2, p}, cache) / potential_norm(c, 2, p, cache));
        }
        return C;
    };
    const double cn = inclusion(N);
    const double ch = inclusion(N / 2);
    r.add_gt("interlaced Sobolev norm <= C potential norm (m = 2): fitted C at N", cn, 0.0);
    r.add_le("inclusion constant: relative change N/2 -> N", rel_change(cn, ch), 0.1);

    if (counterexample_applies(params, p)) {
        const CounterexampleFunction cx(params);
        const auto eps = geometric_epsilons(*g, 0.0, kCauchyEps);
        const auto fit_eps = geometric_epsilons(*g, 0.0, kFitEps);
        const auto d2 = blowup_diagnostic(cx.second(), g, p, fit_eps);
        const double predicted =
            std::min(1.0 - p * (params.alpha() + 1.5), 1.0 - p * (params.beta() + 1.5));
        r.add_le("D^(2) Psi^{-a,-b}: truncated p-th power diverges, fitted exponent", d2.singular_exponent, 0.0);
        r.add_le("D^(2) Psi^{-a,-b}: relative deviation of fitted exponent from 1 - p(min(a,b) + 3/2)",
                 rel_change(d2.singular_exponent, predicted), 0.15);
        const auto dd = blowup_diagnostic(cx.interlaced(), g, p, eps);
        r.add_le("interlaced order 2 of Psi^{-a,-b}: truncated norms Cauchy for eps <= 1e-4", dd.cauchy_defect(kCauchyEps),
                 0.01);
        for (auto& c : counterexample_bounds_check(params, spec).checks) {
            r.checks.push_back(std::move(c));
        }
    }
    return r;
}

void check_poisson_suite(const JacobiParams& params, double p, int N, const GridSpec& grid) {
    require_exponent(params, p);
    check_band_limit(N, grid, 16, true);
}

ExperimentReport run_poisson_suite(const JacobiParams& params, double p, std::uint64_t seed, int N,
                                   const GridSpec& spec) {
    check_poisson_suite(params, p, N, spec);
    const GridPtr g = build_grid(spec);
    BasisCache cache(g);
    ExperimentReport r = make_report("poisson", params, spec);
    r.settings = {N, p, std::nullopt, seed, spec};
    const auto rs = default_r_family();
    std::vector<double> ts;
    for (double x : rs) {
        ts.push_back(-std::log(x));
    }
    const auto norm = [&](const SpectralCoefficients& c) {
        return lp_norm(cache.table(c.params, static_cast<int>(c.size())).synthesize(c), p);
    };

    struct Constants {
        double uniform = 0.0;
        double maximal_u = 0.0;
        double maximal_h = 0.0;
    };
    const auto constants = [&](int n) {
        Constants out;
        for (const auto& c : test_family(params, n, seed)) {
            const double f = norm(c);
            for (double x : rs) {
                out.uniform = std::max(out.uniform, norm(poisson(c, {PoissonMode::integral, x, 0})) / f);
            }
            out.maximal_u = std::max(out.maximal_u, lp_norm(maximal_estimate(c, MaximalFamily::U_r, cache, rs), p) / f);
            out.maximal_h = std::max(out.maximal_h, lp_norm(maximal_estimate(c, MaximalFamily::H_t, cache, ts), p) / f);
        }
        return out;
    };
    const Constants full = constants(N);
    const Constants half = constants(N / 2);
    r.add_gt("sup_r ||U_r f||_p <= C ||f||_p: fitted C at N", full.uniform, 0.0);
    r.add_le("uniform bound: relative change of C, N/2 -> N", rel_change(full.uniform, half.uniform), 0.1);
    r.add_gt("||sup_r |U_r f| ||_p <= C ||f||_p: fitted C at N", full.maximal_u, 0.0);
    r.add_le("maximal U_r: relative change of C, N/2 -> N", rel_change(full.maximal_u, half.maximal_u), 0.1);
    r.add_gt("||sup_t |H_t f| ||_p <= C ||f||_p: fitted C at N", full.maximal_h, 0.0);
    r.add_le("maximal H_t: relative change of C, N/2 -> N", rel_change(full.maximal_h, half.maximal_h), 0.1);

    const auto family = test_family(params, N, seed);
    {
        double worst_increase = 0.0;
        double final_max = 0.0;
        double two_way = 0.0;
        double tilde_max = 0.0;
        for (const auto& c : family) {
            const auto fv = cache.table(params, N).synthesize(c);
            double prev = kInf;
            for (double x : rs) {
                const auto u = cache.table(params, N).synthesize(poisson(c, {PoissonMode::integral, x, 0}));
                std::vector<double> d(g->size());
                for (std::size_t i = 0; i < d.size(); ++i) {
                    d[i] = u.values[i] - fv.values[i];
                }
                const double dist = lp_norm(SampledFunction(g, d), p);
                if (prev < kInf) {
                    worst_increase = std::max(worst_increase, dist / prev - 1.0);
                }
                prev = dist;
            }
            const auto near = cache.table(params, N).synthesize(poisson(c, {PoissonMode::integral, 0.999, 0}));
            const auto tilde = poisson(c, {PoissonMode::spectral_integral, 0.999, 0});
            const auto tv = cache.table(params, N).synthesize(tilde);
            std::vector<double> d(g->size());
            std::vector<double> dt(g->size());
            for (std::size_t i = 0; i < d.size(); ++i) {
                d[i] = near.values[i] - fv.values[i];
                dt[i] = tv.values[i] - fv.values[i];
            }
            final_max = std::max(final_max, lp_norm(SampledFunction(g, d), p));
            double sq = 0.0;
            for (int n = 0; n < N; ++n) {
                const double diff = tilde[n] - c[n];
                sq += diff * diff;
            }
            const double by_coeffs = std::sqrt(sq);
            const double by_quadrature = lp_norm(SampledFunction(g, dt), 2.0);
            two_way = std::max(two_way, std::abs(by_coeffs - by_quadrature));
            tilde_max = std::max(tilde_max, std::max(by_coeffs, by_quadrature));
        }
        r.add_le("||U_r f - f||_p nonincreasing along r = 1 - 2^-j: max relative increase", worst_increase, 1e-9);
        r.add_le("max over family of ||U_r f - f||_p at r = 0.999", final_max, 1e-3);
        r.add_le("||U~_r f - f||_2 at r = 0.999: |coefficient sum - quadrature|", two_way, 1e-6);
        r.add_le("max over family of ||U~_r f - f||_2 at r = 0.999", tilde_max, 1e-3);
    }

    {
        double commute = 0.0;
        double relation = 0.0;
        for (std::size_t i = 0; i < family.size(); ++i) {
            const auto& c = family[i];
            for (double x : rs) {
                relation = std::max(relation, poisson_relation_residual(c, x));
                if (i >= 10) {
                    continue;
                }
                for (int k = 1; k <= 2; ++k) {
                    const auto lhs = derivative_spectral({DerivativeVariant::variable_index, k},
                                                         poisson(c, {PoissonMode::spectral_integral, x, 0}));
                    const auto rhs = poisson(derivative_spectral({DerivativeVariant::variable_index, k}, c),
                                             {PoissonMode::spectral_integral, x, 0});
                    for (std::size_t n = 0; n < lhs.size(); ++n) {
                        commute = std::max(commute, std::abs(lhs[n] - rhs[n]));
                    }
                }
            }
        }
        r.add_le("D^(k) U~_r = U~_r^(a+k,b+k) D^(k), k <= 2: max coefficient residual", commute, 1e-12);
        r.add_le("U_r = r^-A U~_r + (1 - r^(|A|-A)) a_0 phi_0: max coefficient residual", relation, 0.0);
    }

    {
        // tail bound with k = 1 at r = 0.9
        const double x = 0.9;
        const double q = conjugate_exponent(p);
        const JacobiParams up = params.shifted(1);
        const BasisTable& table = cache.table(up, N);
        std::vector<double> holder(static_cast<std::size_t>(N));
        for (int n = 0; n < N; ++n) {
            std::vector<double> col(table.matrix().col(n).data(), table.matrix().col(n).data() + g->size());
            const SampledFunction fn(g, std::move(col));
            holder[n] = lp_norm(fn, p) * lp_norm(fn, q);
        }
        double worst_ratio = 0.0;
        double worst_growth = 0.0;
        for (std::size_t i = 0; i < 10; ++i) {
            const auto& c = family[i];
            const auto d = derivative_spectral({DerivativeVariant::variable_index, 1}, c);
            const double dnorm = norm(d);
            double prev = kInf;
            for (int l = 1; l < N; l *= 2) {
                const auto tail = derivative_spectral({DerivativeVariant::variable_index, 1},
                                                      poisson(c, {PoissonMode::tail, x, l}));
                const double lhs = norm(tail);
                double sum = 0.0;
                for (int n = l; n < N; ++n) {
                    sum += std::exp(std::log(x) * std::abs(n + up.A())) * holder[n];
                }
                const double rhs = dnorm * sum;
                if (rhs > 0.0) {
                    worst_ratio = std::max(worst_ratio, lhs / rhs);
                }
                if (prev < kInf && prev > 0.0) {
                    worst_growth = std::max(worst_growth, lhs / prev);
                }
                prev = lhs;
            }
        }
        r.add_le("tail ||D U~_{r,l} f||_p / Hoelder bound, r = 0.9, l = 1, 2, 4, ...", worst_ratio, 1.0);
        r.add_le("tail norms decrease in l: max ratio of consecutive tails", worst_growth, 1.0);
    }

    if (params.alpha() >= -0.5 && params.beta() >= -0.5) {
        const double radii[] = {0.5, 0.7, 0.9, 0.95, 0.98};
        const auto fit = [&](int M, double& min_value) {
            std::vector<double> pts(static_cast<std::size_t>(M));
            for (int i = 0; i < M; ++i) {
                pts[i] = kPi * (i + 0.5) / M;
            }
            double C = 0.0;
            for (double x : radii) {
                const auto K = kernel_matrix(params, x, pts, pts, kernel_required_terms(params, x));
                for (int i = 0; i < M; ++i) {
                    for (int j = 0; j < M; ++j) {
                        const double d = pts[i] - pts[j];
                        const double model = (1 - x) / ((1 - x) * (1 - x) + d * d);
                        min_value = std::min(min_value, K[i][j]);
                        C = std::max(C, K[i][j] / model);
                    }
                }
            }
            return C;
        };
        double min_value = kInf;
        const double coarse = fit(32, min_value);
        const double fine = fit(64, min_value);
        r.add_gt("Poisson kernel positive at all sampled points: min value", min_value, 0.0);
        r.add_gt("kernel <= C (1-r)/((1-r)^2 + (theta-phi)^2): fitted C", fine, 0.0);
        r.add_le("kernel bound: relative change of C under refinement 32 -> 64 points", rel_change(fine, coarse), 0.1);
    }
    return r;
}

void check_pencil_suite(const JacobiParams&, int N, const GridSpec& grid) { check_band_limit(N, grid, 2, false); }

ExperimentReport run_pencil_suite(const JacobiParams& params, int N, const GridSpec& spec) {
    check_pencil_suite(params, N, spec);
    const GridPtr g = build_grid(spec);
    ExperimentReport r = make_report("pencil", params, spec);
    r.settings.N = N;
    const double pc = critical_exponent(params);
    const std::vector<double> ps = std::isinf(pc) ? std::vector<double>{2.0, 4.0, 8.0} : std::vector<double>{2.0, pc, pc + 1.0};
    const auto eps = geometric_epsilons(*g, 0.0, kCauchyEps);
    const auto fit_eps = geometric_epsilons(*g, 0.0, kFitEps);
    const double low = std::min(params.alpha(), params.beta()) + 0.5;
    for (int n : {0, 1, N - 1}) {
        const PointFunction f = synthesis_function(SpectralCoefficients::unit(params, n, n + 1));
        for (double p : ps) {
            const std::string tag = "phi_" + std::to_string(n) + ", p = " + std::to_string(p) + ": ";
            const double predicted = low * p + 1.0;
            const auto fit = blowup_diagnostic(f, g, p, fit_eps);
            if (p < pc) {
                r.add_gt(tag + "truncated p-th power converges, fitted exponent", fit.singular_exponent, 0.0);
                r.add_le(tag + "relative deviation of fitted exponent from (min(a,b)+1/2)p + 1",
                         rel_change(fit.singular_exponent, predicted), 0.15);
                if (predicted >= 0.5) {
                    const auto win = blowup_diagnostic(f, g, p, eps);
                    r.add_le(tag + "truncated norms Cauchy for eps <= 1e-4", win.cauchy_defect(kCauchyEps), 0.01);
                }
            } else if (p == pc) {
                r.add_le(tag + "logarithmic divergence: |fitted exponent|", std::abs(fit.singular_exponent), 0.05);
                r.add_gt(tag + "logarithmic divergence: growth of the p-th power over the eps range",
                         fit.points.back().power - fit.points.front().power, 0.0);
            } else {
                r.add_le(tag + "truncated p-th power diverges, fitted exponent", fit.singular_exponent, 0.0);
                r.add_le(tag + "relative deviation of fitted exponent from (min(a,b)+1/2)p + 1",
                         rel_change(fit.singular_exponent, predicted), 0.15);
            }
        }
    }
    return r;
}

void check_classical_comparison(const JacobiParams& params, double p, int m, const GridSpec& grid) {
    require_exponent(params, p);
    check_order(m);
    checked_grid(grid);
}

ExperimentReport run_classical_comparison(const JacobiParams& params, double p, int m, const GridSpec& spec) {
    check_classical_comparison(params, p, m, spec);
    const GridPtr g = build_grid(spec);
    ExperimentReport r = make_report("classical", params, spec);
    r.settings.p = p;
    r.settings.m = m;
    const auto fit_eps = geometric_epsilons(*g, 0.0, kFitEps);
    const auto eps = geometric_epsilons(*g, 0.0, kCauchyEps);

    const HalfAngleExpr d1 = HalfAngleExpr::monomial(1.0, 0.0, 0.0).apply_D(params);
    if (d1.terms().empty()) {
        r.add_le("D 1 vanishes identically at alpha = beta = -1/2: number of terms", 0.0, 0.0);
    } else {
        const auto fit = blowup_diagnostic(d1, g, p, fit_eps);
        const double slope = fit.singular_exponent / p;
        const double predicted = (1.0 - p) / p;
        r.add_le("D 1 not in L^p: relative deviation of the asymptotic norm slope from (1-p)/p",
                 rel_change(slope, predicted), 0.1);
    }

    // Psi' ~ theta^{a - 1/2} at an endpoint unless a = -1/2, so the truncated
    // p-th power has singular exponent (a - 1/2)p + 1 there.
    const HalfAngleExpr dpsi = HalfAngleExpr::psi(params.alpha(), params.beta()).derivative();
    double predicted = kInf;
    for (double a : {params.alpha(), params.beta()}) {
        if (a != -0.5) {
            predicted = std::min(predicted, (a - 0.5) * p + 1.0);
        }
    }
    if (dpsi.terms().empty() || std::isinf(predicted)) {
        r.add_le("Psi' vanishes identically: number of terms", static_cast<double>(dpsi.terms().size()), 0.0);
    } else {
        const auto fit = blowup_diagnostic(dpsi, g, p, fit_eps);
        if (predicted == 0.0) {
            r.add_le("Psi' not in L^p: logarithmic divergence, |fitted exponent|", std::abs(fit.singular_exponent), 0.05);
        } else {
            if (predicted < 0.0) {
                r.add_le("Psi' not in L^p: fitted exponent of the truncated p-th power", fit.singular_exponent, 0.0);
            } else {
                r.add_gt("Psi' in L^p: fitted exponent of the truncated p-th power", fit.singular_exponent, 0.0);
                if (predicted >= 0.5) {
                    const auto win = blowup_diagnostic(dpsi, g, p, eps);
                    r.add_le("Psi' in L^p: truncated norms Cauchy for eps <= 1e-4", win.cauchy_defect(kCauchyEps), 0.01);
                }
            }
            r.add_le("Psi': relative deviation of fitted exponent from (min(a,b) - 1/2)p + 1",
                     rel_change(fit.singular_exponent, predicted), 0.15);
        }
    }

    {
        // windowed classical Sobolev norm of a band-limited f on two grids
        const auto c = random_test_function(params, 32, 42);
        const auto windowed = [&](const GridSpec& gs) {
            const GridPtr grid = build_grid(gs);
            double total = 0.0;
            PointFunction f = synthesis_function(c);
            for (int k = 0; k <= m; ++k) {
                const auto s = sample_interior(f, grid);
                total += std::pow(lp_power(s.values, p, s.interior.begin, s.interior.end), 1.0 / p);
                const double h = k + 1 >= 2 ? kFdChainStep : kFdStep;
                f = [f, h](const Angle& t) {
                    const auto at = [&](double d) { return f(Angle{t.theta + d, t.comp - d}); };
                    return (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
                };
            }
            return total;
        };
        const double coarse = windowed(spec);
        const double fine = windowed({spec.panels_per_side, spec.ratio, spec.nodes_per_panel + 8});
        r.add_gt("windowed classical W^{p,m} norm of a band-limited f", coarse, 0.0);
        r.add_le("windowed classical norm: relative change under grid refinement", rel_change(fine, coarse), 1e-4);
    }
    return r;
}

void check_maximal_sobolev(const JacobiParams& params, double p, int N, const GridSpec& grid) {
    require_exponent(params, p);
    check_band_limit(N, grid, 16, true);
}

ExperimentReport run_maximal_sobolev(const JacobiParams& params, double p, std::uint64_t seed, int N,
                                     const GridSpec& spec) {
    check_maximal_sobolev(params, p, N, spec);
    BasisCache cache(build_grid(spec));
    ExperimentReport r = make_report("maximal", params, spec);
    r.settings = {N, p, 1, seed, spec};
    const auto rs = default_r_family();
    const DerivativeKind d1{DerivativeVariant::variable_index, 1};

    const auto composite_u = [&](const SpectralCoefficients& c) {
        std::vector<SpectralCoefficients> fam;
        std::vector<SpectralCoefficients> dfam;
        for (double x : rs) {
            fam.push_back(poisson(c, {PoissonMode::integral, x, 0}));
            dfam.push_back(derivative_spectral(d1, fam.back()));
        }
        return lp_norm(maximal_over(fam, cache), p) + lp_norm(maximal_over(dfam, cache), p);
    };
    const auto composite_s = [&](const SpectralCoefficients& c) {
        const auto d = derivative_spectral(d1, c);
        return lp_norm(maximal_estimate(c, MaximalFamily::partial_sums, cache, {}), p) +
               lp_norm(maximal_estimate(d, MaximalFamily::partial_sums, cache, {}), p);
    };
    const bool partial = params.alpha() >= -0.5 && params.beta() >= -0.5;
    const auto fitted = [&](int n, bool sums) {
        double C = 0.0;
        for (const auto& c : test_family(params, n, seed)) {
            const double w = sobolev_norm(c, {DerivativeVariant::variable_index, 1, p}, cache);
            C = std::max(C, (sums ? composite_s(c) : composite_u(c)) / w);
        }
        return C;
    };
    const double cu = fitted(N, false);
    const double cuh = fitted(N / 2, false);
    r.add_gt("sup_r |U_r f| and sup_r |D U_r f| in L^p <= C ||f||_W: fitted C at N", cu, 0.0);
    r.add_le("maximal Poisson on W^{p,1}: relative change of C, N/2 -> N", rel_change(cu, cuh), 0.1);
    {
        const auto e0 = SpectralCoefficients::unit(params, 0, 1);
        const double ratio = composite_u(e0) / sobolev_norm(e0, {DerivativeVariant::variable_index, 1, p}, cache);
        r.add_le("f = phi_0: |ratio - 1|", std::abs(ratio - 1.0), 1e-12);
    }
    if (partial) {
        const double cs = fitted(N, true);
        const double csh = fitted(N / 2, true);
        r.add_gt("sup_N |S_N f| and sup_N |S_N D f| in L^p <= C ||f||_W: fitted C at N", cs, 0.0);
        r.add_le("maximal partial sums on W^{p,1}: relative change of C, N/2 -> N", rel_change(cs, csh), 0.1);
    }
    return r;
}

} // namespace jacsob
