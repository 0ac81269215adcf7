#include "doctest.h"
#include "oracles.hpp"

#include "jacsob/errors.hpp"
#include "jacsob/half_angle.hpp"
#include "jacsob/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

using namespace jacsob;

namespace {

const std::vector<JacobiParams>& test_params() {
    static const std::vector<JacobiParams> ps{{-0.5, -0.5}, {0, 0}, {0.25, 0.25}, {2.5, 0.7},
                                              {-0.75, 0}, {-0.9, -0.6}, {-0.25, -0.75}};
    return ps;
}

GridPtr default_grid() {
    static const GridPtr g = build_grid();
    return g;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    for (std::size_t i = std::min(a.size(), b.size()); i < std::max(a.size(), b.size()); ++i) {
        m = std::max(m, std::abs(i < a.size() ? a[i] : b[i]));
    }
    return m;
}

// plain 4th-order central difference at a large step, used as an independent
// check of the symbolic differentiation
double fd(const std::function<double(double)>& f, double x) {
    const double h = 1e-3;
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

} // namespace

TEST_CASE("half-angle algebra") {
    const JacobiParams p(0.3, -0.4);
    const auto psi = HalfAngleExpr::psi(p.alpha(), p.beta());
    for (double t : {0.2, 1.0, 2.9}) {
        CHECK(psi(t) == doctest::Approx(jacsob::psi(p, t)).epsilon(1e-14));
        // D annihilates Psi
        CHECK(std::abs(psi.apply_D(p)(t)) <= 1e-14);
    }
    const auto f = HalfAngleExpr::monomial(2.0, -0.25, 1.5) + HalfAngleExpr::monomial(-1.0, 2.0, -0.7);
    const auto df = f.derivative();
    const auto Df = f.apply_D(p);
    const auto Dsf = f.apply_D_star(p);
    const auto fn = [&](double x) { return f(x); };
    for (double t : {0.3, 1.4, 2.6}) {
        CHECK(df(t) == doctest::Approx(fd(fn, t)).epsilon(1e-8));
        const double cot = 1.0 / std::tan(t / 2);
        const double tan = std::tan(t / 2);
        const double mult = -(2 * p.alpha() + 1) / 4 * cot + (2 * p.beta() + 1) / 4 * tan;
        CHECK(Df(t) == doctest::Approx(fd(fn, t) + mult * f(t)).epsilon(1e-8));
        CHECK(Dsf(t) == doctest::Approx(-fd(fn, t) + mult * f(t)).epsilon(1e-8));
    }
    CHECK((f * 0.0).terms().empty());
    CHECK((f + f * -1.0).terms().empty());
}

TEST_CASE("apply_multiplier") {
    const JacobiParams p(0.2, 0.1);
    const auto c = random_test_function(p, 10, 1);
    const auto id = apply_multiplier({p, p, 0, [](long) { return 1.0; }}, c);
    CHECK(id.coeffs == c.coeffs);
    const auto z = apply_multiplier({p, p, 0, [](long n) { return static_cast<double>(n); }}, SpectralCoefficients::unit(p, 0, 4));
    CHECK(max_abs_diff(z.coeffs, std::vector<double>(4, 0.0)) == 0.0);
    const auto dropped = apply_multiplier({p, p, -2, [](long) { return 1.0; }}, SpectralCoefficients::unit(p, 1, 4));
    CHECK(dropped.size() == 4);
    CHECK(max_abs_diff(dropped.coeffs, std::vector<double>(4, 0.0)) == 0.0);
    const auto up = apply_multiplier({p, p, 3, [](long) { return 2.0; }}, SpectralCoefficients::unit(p, 1, 4));
    CHECK(up.size() == 7);
    CHECK(up[4] == 2.0);
    CHECK_THROWS_AS(apply_multiplier({p, p, 0, [](long) { return 1.0; }}, SpectralCoefficients::unit({0, 0}, 0, 2)),
                    BasisMismatch);
}

TEST_CASE("derivative_spectral examples") {
    const JacobiParams cheb(-0.5, -0.5);
    for (int n = 1; n < 12; ++n) {
        const auto d = derivative_spectral({DerivativeVariant::variable_index, 1}, SpectralCoefficients::unit(cheb, n, 12));
        CHECK(d.params == JacobiParams(0.5, 0.5));
        CHECK(d[n - 1] == doctest::Approx(-n).epsilon(1e-15));
    }
    const auto z = derivative_spectral({DerivativeVariant::variable_index, 2}, SpectralCoefficients::unit({0.3, 0.2}, 1, 6));
    CHECK(std::all_of(z.coeffs.begin(), z.coeffs.end(), [](double v) { return v == 0.0; }));
    const auto i2 = derivative_spectral({DerivativeVariant::interlacing, 2}, SpectralCoefficients::unit({0, 0}, 3, 6));
    CHECK(i2.params == JacobiParams(0, 0));
    CHECK(i2[3] == 12.0);
    const auto i3 = derivative_spectral({DerivativeVariant::interlacing, 3}, SpectralCoefficients::unit({0, 0}, 3, 6));
    CHECK(i3.params == JacobiParams(1, 1));
    CHECK(i3[2] == doctest::Approx(-std::pow(12.0, 1.5)).epsilon(1e-15));
    const auto k0 = derivative_spectral({DerivativeVariant::variable_index, 0}, random_test_function({0.1, 0.4}, 9, 2));
    CHECK(k0.coeffs == random_test_function({0.1, 0.4}, 9, 2).coeffs);
}

TEST_CASE("interlacing of order 2 equals L - A^2 on coefficients") {
    for (const auto& p : test_params()) {
        const auto c = random_test_function(p, 64, 4);
        const auto d = derivative_spectral({DerivativeVariant::interlacing, 2}, c);
        for (int n = 0; n < 64; ++n) {
            const double expect = (eigenvalue(p, n) - p.A() * p.A()) * c[n];
            CHECK(std::abs(d[n] - expect) <= 1e-12 * std::abs(expect));
        }
    }
    const JacobiParams p(0, 0);
    const auto c = random_test_function(p, 64, 4);
    const auto d = derivative_spectral({DerivativeVariant::interlacing, 2}, c);
    for (int n = 0; n < 64; ++n) {
        CHECK(d[n] == (eigenvalue(p, n) - 0.25) * c[n]);
    }
}

TEST_CASE("adjoint_spectral") {
    const JacobiParams cheb(-0.5, -0.5);
    for (int n = 1; n < 10; ++n) {
        const auto a = adjoint_spectral(cheb, 1, SpectralCoefficients::unit(cheb.shifted(1), n - 1, 10));
        CHECK(a.params == cheb);
        CHECK(a[n] == doctest::Approx(-n).epsilon(1e-15));
    }
    const auto c = random_test_function({0.3, 0.7}, 8, 3);
    CHECK(adjoint_spectral({0.3, 0.7}, 0, c).coeffs == c.coeffs);
    for (int k = 0; k <= 3; ++k) {
        const JacobiParams p(0.2, -0.3);
        const auto ck = random_test_function(p.shifted(k), 10, 5);
        CHECK(partial_adjoint_spectral(p, k, k, ck).coeffs == adjoint_spectral(p, k, ck).coeffs);
        CHECK(partial_adjoint_spectral(p, k, k, ck).params == p);
    }
    CHECK_THROWS_AS(partial_adjoint_op({0, 0}, 2, 3), ConfigError);
}

TEST_CASE("adjointness under quadrature") {
    const GridPtr g = default_grid();
    for (const auto& p : test_params()) {
        for (int k = 1; k <= 3; ++k) {
            const auto f = random_test_function(p, 24, 10 + k);
            const auto h = random_test_function(p.shifted(k), 24, 20 + k);
            const auto Df = synthesize(derivative_spectral({DerivativeVariant::variable_index, k}, f), g);
            const auto Dh = synthesize(adjoint_spectral(p, k, h), g);
            const auto fv = synthesize(f, g);
            const auto hv = synthesize(h, g);
            std::vector<double> lhs(g->size());
            std::vector<double> rhs(g->size());
            for (std::size_t i = 0; i < g->size(); ++i) {
                lhs[i] = Df.values[i] * hv.values[i];
                rhs[i] = fv.values[i] * Dh.values[i];
            }
            INFO(p.to_string(), " k=", k);
            CHECK(std::abs(integrate(SampledFunction(g, lhs)) - integrate(SampledFunction(g, rhs))) <= 1e-6);
        }
    }
}

TEST_CASE("potentials") {
    const JacobiParams p(0, 0);
    const auto e5 = SpectralCoefficients::unit(p, 5, 8);
    CHECK(potential(e5, 1.0, PotentialKind::riesz)[5] == doctest::Approx(1.0 / 30.25).epsilon(1e-15));
    const JacobiParams bessel_case(-0.25, -0.75);
    CHECK(potential(SpectralCoefficients::unit(bessel_case, 0, 3), 2.0, PotentialKind::bessel)[0] == 1.0);
    CHECK_THROWS_AS(potential(SpectralCoefficients::unit(bessel_case, 0, 3), 2.0, PotentialKind::riesz), ConfigError);
    CHECK_THROWS_AS(potential_inverse(SpectralCoefficients::unit(bessel_case, 0, 3), 2.0, PotentialKind::riesz),
                    ConfigError);
    CHECK(potential_inverse(e5, 2.0, PotentialKind::riesz)[5] == doctest::Approx(30.25).epsilon(1e-15));
    const auto zero = potential_inverse(SpectralCoefficients::zero(p, 6), 1.3, PotentialKind::bessel);
    CHECK(std::all_of(zero.coeffs.begin(), zero.coeffs.end(), [](double v) { return v == 0.0; }));
    CHECK_THROWS_AS(potential(e5, 0.0, PotentialKind::riesz), ConfigError);
    CHECK(default_potential_kind(bessel_case) == PotentialKind::bessel);
    CHECK(default_potential_kind(p) == PotentialKind::riesz);

    for (const auto& q : test_params()) {
        const auto kind = default_potential_kind(q);
        const auto c = random_test_function(q, 32, 8);
        for (double s : {0.5, 1.0, 2.0, 3.0}) {
            const auto back = potential_inverse(potential(c, s / 2, kind), s, kind);
            CHECK(max_abs_diff(back.coeffs, c.coeffs) <= 1e-15);
        }
    }
}

TEST_CASE("potential coefficient identity via quadrature") {
    const GridPtr g = default_grid();
    for (const auto& q : test_params()) {
        const auto kind = default_potential_kind(q);
        const auto c = random_test_function(q, 32, 6);
        const auto pot = potential(c, 0.75, kind);
        const auto a = analyze(synthesize(pot, g), q, 32);
        for (int n = 0; n < 32; ++n) {
            const double lam = kind == PotentialKind::riesz ? eigenvalue(q, n) : 1.0 + eigenvalue(q, n);
            CHECK(std::abs(a[n] - std::pow(lam, -0.75) * c[n]) <= 1e-9);
        }
    }
}

TEST_CASE("Poisson operators") {
    const JacobiParams p(0, 0);
    CHECK(poisson(SpectralCoefficients::unit(p, 0, 3), {PoissonMode::spectral_integral, 0.5, 0})[0] ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(poisson(SpectralCoefficients::unit(p, 0, 3), {PoissonMode::integral, 1.0, 0}), ConfigError);
    CHECK_THROWS_AS(poisson(SpectralCoefficients::unit(p, 0, 3), {PoissonMode::spectral_integral, 0.0, 0}), ConfigError);
    CHECK_THROWS_AS(poisson(SpectralCoefficients::unit(p, 0, 3), {PoissonMode::semigroup, 0.0, 0}), ConfigError);
    CHECK_THROWS_AS(poisson(SpectralCoefficients::unit(p, 0, 3), {PoissonMode::tail, 0.5, -1}), ConfigError);

    for (const auto& q : test_params()) {
        const auto c = random_test_function(q, 40, 12);
        for (double r : default_r_family()) {
            const auto spec = poisson(c, {PoissonMode::spectral_integral, r, 0});
            const auto semi = poisson(c, {PoissonMode::semigroup, -std::log(r), 0});
            CHECK(spec.coeffs == semi.coeffs);
            CHECK(poisson_relation_residual(c, r) == 0.0);
            // contraction
            const auto op = poisson_op(q, {PoissonMode::spectral_integral, r, 0});
            for (long n = 0; n < 40; ++n) {
                CHECK(op.g(n) > 0.0);
                // r^0 = 1 at the zero eigenvalue
                if (n + q.A() == 0.0) {
                    CHECK(op.g(n) == 1.0);
                } else {
                    CHECK(op.g(n) < 1.0);
                }
            }
            const auto tail = poisson(c, {PoissonMode::tail, r, 5});
            for (int n = 0; n < 40; ++n) {
                CHECK(tail[n] == (n <= 5 ? 0.0 : spec[n]));
            }
        }
    }
    // A > 0: no correction, U_r = r^{-A} U~_r
    const auto c = random_test_function(p, 20, 3);
    const auto u = poisson(c, {PoissonMode::integral, 0.3, 0});
    const auto ut = poisson(c, {PoissonMode::spectral_integral, 0.3, 0});
    for (int n = 0; n < 20; ++n) {
        CHECK(u[n] == doctest::Approx(std::pow(0.3, -0.5) * ut[n]).epsilon(1e-13));
    }
}

TEST_CASE("commuting identity") {
    const GridPtr g = default_grid();
    for (const auto& q : test_params()) {
        for (int k = 1; k <= 3; ++k) {
            const auto c = random_test_function(q, 48, 30 + k);
            for (double r : {0.3, 0.75, 0.99}) {
                const auto lhs = derivative_spectral({DerivativeVariant::variable_index, k},
                                                     poisson(c, {PoissonMode::spectral_integral, r, 0}));
                const auto rhs = poisson(derivative_spectral({DerivativeVariant::variable_index, k}, c),
                                         {PoissonMode::spectral_integral, r, 0});
                CHECK(max_abs_diff(lhs.coeffs, rhs.coeffs) <= 1e-12);
                const auto sl = synthesize(lhs, g);
                const auto sr = synthesize(rhs, g);
                CHECK(max_abs_diff(sl.values, sr.values) <= 1e-8);
            }
        }
    }
}

TEST_CASE("Riesz transforms and their inverse") {
    const JacobiParams p(0.3, 0.3);
    const auto e5 = SpectralCoefficients::unit(p, 5, 8);
    const auto r1 = riesz_transform(p, e5, 2, RieszKind::R1);
    CHECK(r1.params == p.shifted(2));
    const auto r2 = riesz_transform(p, r1, 2, RieszKind::R2);
    CHECK(r2.params == p);
    const auto back = riesz_inverse_T(r2, 2, false);
    CHECK(max_abs_diff(back.coeffs, e5.coeffs) <= 1e-12);

    const auto t1 = riesz_transform(p, e5, 2, RieszKind::R1_tilde);
    const auto t2 = riesz_transform(p, t1, 2, RieszKind::R2_tilde);
    CHECK(max_abs_diff(riesz_inverse_T(t2, 2, true).coeffs, e5.coeffs) <= 1e-12);

    CHECK(std::all_of(riesz_inverse_T(SpectralCoefficients::unit(p, 0, 4), 1, false).coeffs.begin(),
                      riesz_inverse_T(SpectralCoefficients::unit(p, 0, 4), 1, false).coeffs.end(),
                      [](double v) { return v == 0.0; }));
    for (int k = 1; k <= 3; ++k) {
        for (int m = 0; m < k; ++m) {
            const auto z = riesz_transform(p, SpectralCoefficients::unit(p, m, 6), k, RieszKind::R1);
            CHECK(std::all_of(z.coeffs.begin(), z.coeffs.end(), [](double v) { return v == 0.0; }));
        }
    }

    const JacobiParams cheb(-0.5, -0.5);
    CHECK_THROWS_AS(riesz_transform(cheb, SpectralCoefficients::unit(cheb, 2, 4), 1, RieszKind::R1), ConfigError);
    CHECK_THROWS_AS(riesz_transform(cheb, SpectralCoefficients::unit(cheb.shifted(1), 2, 4), 1, RieszKind::R2), ConfigError);
    CHECK_THROWS_AS(riesz_inverse_T(SpectralCoefficients::unit(cheb, 2, 4), 1, false), ConfigError);
    CHECK_NOTHROW(riesz_transform(cheb, SpectralCoefficients::unit(cheb, 2, 4), 1, RieszKind::R1_tilde));
    // cos -> sin: D^{(1)} composed with |n + A|^{-1} has multiplier -1 for n >= 1
    const auto d = derivative_spectral({DerivativeVariant::variable_index, 1}, SpectralCoefficients::unit(cheb, 4, 6));
    CHECK(d[3] / std::abs(4 + cheb.A()) == doctest::Approx(-1.0).epsilon(1e-15));

    for (const auto& q : test_params()) {
        const bool tilde = q.zero_eigenvalue();
        for (int k = 1; k <= 3; ++k) {
            auto c = random_test_function(q, 40, 40 + k);
            for (int n = 0; n < k; ++n) {
                c.coeffs[n] = 0.0;
            }
            const auto a = riesz_transform(q, c, k, tilde ? RieszKind::R1_tilde : RieszKind::R1);
            const auto b = riesz_transform(q, a, k, tilde ? RieszKind::R2_tilde : RieszKind::R2);
            CHECK(max_abs_diff(riesz_inverse_T(b, k, tilde).coeffs, c.coeffs) <= 1e-12);
        }
    }
}

TEST_CASE("Riesz multiplier asymptotics") {
    for (const auto& q : std::vector<JacobiParams>{{0, 0}, {0.25, 0.25}, {2.5, 0.7}, {-0.75, 0}}) {
        for (int k = 1; k <= 3; ++k) {
            const auto op = riesz_op(q, k, RieszKind::R1);
            // least squares fit g(n) = c0 + c1 / n + c2 / n^2 on n in [1e3, 1e4]
            Eigen::MatrixXd X(181, 3);
            Eigen::VectorXd y(181);
            for (int i = 0; i < 181; ++i) {
                const long n = 1000 + 50 * i;
                X(i, 0) = 1.0;
                X(i, 1) = 1.0 / n;
                X(i, 2) = 1.0 / (static_cast<double>(n) * n);
                y(i) = op.g(n);
            }
            const Eigen::VectorXd fit = X.colPivHouseholderQr().solve(y);
            const double c0 = fit(0);
            CHECK(std::abs(c0 - (k % 2 ? -1.0 : 1.0)) <= 1e-8);
        }
    }
}

TEST_CASE("pointwise derivatives") {
    const GridPtr g = default_grid();
    SUBCASE("Chebyshev cosines") {
        const JacobiParams cheb(-0.5, -0.5);
        const auto d = derivative_pointwise([](const Angle& t) { return std::cos(3 * t.theta); }, g, cheb, PointwiseMode::D);
        double err = 0.0;
        for (std::size_t i = d.interior.begin; i < d.interior.end; ++i) {
            CHECK(d.reliable[i]);
            err = std::max(err, std::abs(d.values.values[i] + 3 * std::sin(3 * g->nodes()[i].theta)));
        }
        CHECK(err <= 1e-6);
        CHECK_FALSE(d.reliable[0]);
        CHECK(d.values.values[0] == 0.0);
    }
    SUBCASE("eigenfunctions") {
        for (const auto& p : test_params()) {
            for (int n : {0, 3, 12}) {
                const auto f = synthesis_function(SpectralCoefficients::unit(p, n, n + 1));
                const auto d = derivative_pointwise(f, g, p, PointwiseMode::D);
                const auto spec = synthesize(derivative_spectral({DerivativeVariant::variable_index, 1},
                                                                 SpectralCoefficients::unit(p, n, n + 1)),
                                             g);
                const auto dd = sample_interior(pointwise_operator(pointwise_operator(f, p, PointwiseMode::D, kFdChainStep),
                                                                   p, PointwiseMode::D_star, kFdChainStep),
                                                g);
                double err = 0.0;
                double err2 = 0.0;
                double scale = 0.0;
                double scale2 = 0.0;
                const double lam = eigenvalue(p, n) - eigenvalue(p, 0);
                for (std::size_t i = d.interior.begin; i < d.interior.end; ++i) {
                    const double fi = f(g->nodes()[i]);
                    err = std::max(err, std::abs(d.values.values[i] - spec.values[i]));
                    scale = std::max({scale, std::abs(spec.values[i]), std::abs(fi)});
                    err2 = std::max(err2, std::abs(dd.values.values[i] - lam * fi));
                    scale2 = std::max({scale2, std::abs(lam * fi), std::abs(fi)});
                }
                INFO(p.to_string(), " n=", n);
                CHECK(err / scale <= 1e-6);
                CHECK(err2 / scale2 <= 1e-5);
            }
        }
    }
    SUBCASE("half-angle closed forms") {
        const JacobiParams p(0.25, 0.25);
        const auto f = HalfAngleExpr::psi(-p.alpha(), -p.beta());
        const auto d = derivative_pointwise(f, g, p, PointwiseMode::D);
        const auto exact = f.apply_D(p);
        for (std::size_t i = d.interior.begin; i < d.interior.end; ++i) {
            CHECK(d.values.values[i] == doctest::Approx(exact(g->nodes()[i])).epsilon(1e-8));
        }
    }
    SUBCASE("coarse grid rejected") {
        CHECK_THROWS_AS(derivative_pointwise([](const Angle&) { return 1.0; }, build_grid(2, 0.5, 2), JacobiParams(0, 0),
                                             PointwiseMode::D),
                        ConfigError);
    }
}

TEST_CASE("maximal estimates") {
    const GridPtr g = default_grid();
    BasisCache cache(g);
    const JacobiParams p(0.1, 0.4);
    const auto c = random_test_function(p, 30, 9);
    const std::vector<double> half{0.5};
    const auto single = maximal_estimate(c, MaximalFamily::U_r, cache, half);
    const auto u = synthesize(poisson(c, {PoissonMode::integral, 0.5, 0}), g);
    for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(single.values[i] == std::abs(u.values[i]));
    }
    const auto rs = default_r_family();
    const auto all = maximal_estimate(c, MaximalFamily::U_r, cache, rs);
    for (double r : rs) {
        const auto ur = synthesize(poisson(c, {PoissonMode::integral, r, 0}), g);
        for (std::size_t i = 0; i < g->size(); ++i) {
            CHECK(all.values[i] >= std::abs(ur.values[i]) - 1e-14);
        }
    }
    std::vector<double> ts;
    for (double r : rs) {
        ts.push_back(-std::log(r));
    }
    const auto ht = maximal_estimate(c, MaximalFamily::H_t, cache, ts);
    const auto us = maximal_estimate(c, MaximalFamily::U_r_spectral, cache, rs);
    CHECK(max_abs_diff(ht.values, us.values) <= 1e-14);

    const auto e = SpectralCoefficients::unit(p, 7, 12);
    const auto ps = maximal_estimate(e, MaximalFamily::partial_sums, cache, {});
    for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(ps.values[i] == doctest::Approx(std::abs(phi(p, 7, g->nodes()[i]))).epsilon(1e-12));
    }
    CHECK_THROWS_AS(maximal_estimate(c, MaximalFamily::U_r, cache, {}), ConfigError);
}

TEST_CASE("Poisson kernel") {
    const JacobiParams p(0, 0);
    const int N = kernel_required_terms(p, 0.5);
    CHECK(std::pow(0.5, N) * std::pow(N, 5.0) < 1e-12);
    CHECK(std::pow(0.5, N - 1) * std::pow(N - 1, 5.0) >= 1e-12);
    CHECK_THROWS_AS(kernel_eval(p, 0.5, 1.0, 2.0, N - 1), ConfigError);
    try {
        kernel_eval(p, 0.5, 1.0, 2.0, 10);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find(std::to_string(N)) != std::string::npos);
    }
    CHECK(kernel_eval(p, 0.5, 0.3, 2.2, N) == kernel_eval(p, 0.5, 2.2, 0.3, N));
    for (const auto& q : std::vector<JacobiParams>{{-0.5, -0.5}, {0, 0}, {0.25, 0.25}, {2.5, 0.7}}) {
        for (double r : {0.2, 0.6, 0.9}) {
            const int M = kernel_required_terms(q, r);
            for (double th : {0.05, 1.0, 3.0}) {
                for (double ph : {0.07, 1.5, 3.1}) {
                    CHECK(kernel_eval(q, r, th, ph, M) > 0.0);
                }
            }
        }
    }
    // reproducing property
    const GridPtr g = default_grid();
    const auto th = g->thetas();
    const std::vector<double> at{1.1};
    const auto K = kernel_matrix(p, 0.5, at, th, N);
    for (int n : {0, 2, 9}) {
        std::vector<double> v(g->size());
        for (std::size_t i = 0; i < g->size(); ++i) {
            v[i] = K[0][i] * phi(p, n, g->nodes()[i]);
        }
        CHECK(std::abs(integrate(SampledFunction(g, v)) - std::pow(0.5, n) * phi(p, n, 1.1)) <= 1e-8);
    }
    const std::vector<double> pt{0.3};
    const std::vector<double> pp{2.2};
    CHECK(kernel_matrix(p, 0.5, pt, pp, N)[0][0] == kernel_eval(p, 0.5, 0.3, 2.2, N));
}
