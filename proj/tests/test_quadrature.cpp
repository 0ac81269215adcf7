#include "doctest.h"
#include "oracles.hpp"

#include "jacsob/errors.hpp"
#include "jacsob/quadrature.hpp"

#include <algorithm>
#include <cmath>

using namespace jacsob;

namespace {

const std::vector<JacobiParams>& test_params() {
    static const std::vector<JacobiParams> ps{{-0.5, -0.5}, {0, 0}, {0.25, 0.25}, {2.5, 0.7},
                                              {-0.75, 0}, {-0.9, -0.6}, {-0.25, -0.75}};
    return ps;
}

} // namespace

TEST_CASE("grid structure") {
    const GridPtr g = build_grid();
    REQUIRE(g->size() == 2 * 64 * 16);
    const auto& nodes = g->nodes();
    for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(nodes[i].theta > 0.0);
        CHECK(nodes[i].comp > 0.0);
        CHECK(g->weights()[i] > 0.0);
        if (i > 0) {
            CHECK(nodes[i].theta >= nodes[i - 1].theta);
        }
        // symmetric under theta -> pi - theta
        const auto& mirror = nodes[g->size() - 1 - i];
        CHECK(mirror.comp == nodes[i].theta);
        CHECK(g->weights()[g->size() - 1 - i] == g->weights()[i]);
    }
    double total = 0.0;
    for (double w : g->weights()) {
        total += w;
    }
    CHECK(std::abs(total - oracle::pi) / oracle::pi <= 1e-12);
}

TEST_CASE("grid rejects invalid configurations") {
    CHECK_THROWS_AS(build_grid(0, 0.5, 16), ConfigError);
    CHECK_THROWS_AS(build_grid(8, 1.0, 16), ConfigError);
    CHECK_THROWS_AS(build_grid(8, 0.0, 16), ConfigError);
    CHECK_THROWS_AS(build_grid(8, 0.5, 1), ConfigError);
    CHECK_NOTHROW(build_grid(1, 0.5, 2));
}

TEST_CASE("grid integrates endpoint powers") {
    const GridPtr g = build_grid();
    for (double s : {-0.49, 0.0, 1.0, 2.0}) {
        // \int_0^pi theta^s = pi^{s+1} / (s+1)
        const auto f = sample(g, [&](const Angle& t) { return std::pow(t.theta, s); });
        const double exact = std::pow(oracle::pi, s + 1.0) / (s + 1.0);
        CHECK(std::abs(integrate(f) - exact) / exact <= 1e-8);
    }
    const auto one = sample(g, [](const Angle&) { return 1.0; });
    CHECK(integrate(one) == doctest::Approx(oracle::pi).epsilon(1e-12));
    const auto sine = sample(g, [](const Angle& t) { return t.sin(); });
    CHECK(std::abs(integrate(sine) - 2.0) <= 1e-12);
    const auto inv_sqrt = sample(g, [](const Angle& t) { return 1.0 / std::sqrt(t.theta); });
    CHECK(std::abs(integrate(inv_sqrt) - 2.0 * std::sqrt(oracle::pi)) <= 1e-8);
    // singular at the right end, resolved through the stored complement
    const auto right = sample(g, [](const Angle& t) { return std::pow(t.comp, -0.8); });
    CHECK(std::abs(integrate(right) - std::pow(oracle::pi, 0.2) / 0.2) <= 1e-9);
}

TEST_CASE("integrate rejects non-finite values") {
    const GridPtr g = build_grid(4, 0.5, 4);
    std::vector<double> v(g->size(), 1.0);
    v[3] = std::nan("");
    CHECK_THROWS_AS(integrate(SampledFunction(g, v)), DomainError);
    CHECK_THROWS_AS(SampledFunction(g, std::vector<double>(3, 0.0)), ConfigError);
    CHECK(integrate(SampledFunction(g, std::vector<double>(g->size(), 0.0))) == 0.0);
}

TEST_CASE("orthonormality of phi_n for n, m <= 40") {
    const GridPtr g = build_grid();
    for (const auto& p : test_params()) {
        const BasisTable table(g, p, 41);
        const auto& B = table.matrix();
        double defect = 0.0;
        for (int n = 0; n <= 40; ++n) {
            for (int m = 0; m <= n; ++m) {
                std::vector<double> v(g->size());
                for (std::size_t i = 0; i < g->size(); ++i) {
                    v[i] = B(static_cast<Eigen::Index>(i), n) * B(static_cast<Eigen::Index>(i), m);
                }
                defect = std::max(defect, std::abs(integrate(SampledFunction(g, v)) - (n == m ? 1.0 : 0.0)));
            }
        }
        INFO(p.to_string());
        CHECK(defect <= 1e-8);
    }
}

TEST_CASE("integrate examples") {
    const GridPtr g = build_grid();
    const JacobiParams p(0, 0);
    const auto f00 = sample(g, [&](const Angle& t) { return phi(p, 0, t) * phi(p, 0, t); });
    CHECK(std::abs(integrate(f00) - 1.0) <= 1e-8);
    const auto f12 = sample(g, [&](const Angle& t) { return phi(p, 1, t) * phi(p, 2, t); });
    CHECK(std::abs(integrate(f12)) <= 1e-8);
}

TEST_CASE("lp_norm") {
    const GridPtr g = build_grid();
    const auto one = sample(g, [](const Angle&) { return 1.0; });
    CHECK(lp_norm(one, 2.0) == doctest::Approx(std::sqrt(oracle::pi)).epsilon(1e-12));
    const JacobiParams q(0.25, 0.25);
    const auto f5 = sample(g, [&](const Angle& t) { return phi(q, 5, t); });
    CHECK(std::abs(lp_norm(f5, 2.0) - 1.0) <= 1e-8);
    const auto sine = sample(g, [](const Angle& t) { return t.sin(); });
    CHECK(std::abs(lp_norm(sine, 1.0) - 2.0) <= 1e-10);
    // 3/2-norm of sin: (\int sin^{3/2})^{2/3}, \int_0^pi sin^{3/2} = sqrt(pi) Gamma(5/4) / Gamma(7/4)
    const double i32 = std::sqrt(oracle::pi) * std::tgamma(1.25) / std::tgamma(1.75);
    CHECK(lp_norm(sine, 1.5) == doctest::Approx(std::pow(i32, 2.0 / 3.0)).epsilon(1e-10));
    CHECK_THROWS_AS(lp_norm(sine, 0.5), ConfigError);
}

TEST_CASE("windows are node aligned and monotone") {
    const GridPtr g = build_grid();
    const auto f = sample(g, [](const Angle& t) { return 1.0 / t.theta + 1.0 / t.comp; });
    double previous = 0.0;
    for (double eps : {1.0, 0.3, 0.1, 1e-2, 1e-3, 1e-5, 1e-8}) {
        const Window w = g->window(eps);
        CHECK(w.eps_eff >= eps);
        CHECK(g->nodes()[w.begin].theta >= w.eps_eff);
        CHECK(g->nodes()[w.begin - 1].theta < w.eps_eff);
        const double v = lp_norm(f, 2.0, eps);
        CHECK(v >= previous);
        previous = v;
    }
    // a window edge that is a panel edge integrates exactly: \int_e^{pi-e} 1 = pi - 2e
    const auto one = sample(g, [](const Angle&) { return 1.0; });
    const Window w = g->window(1e-3);
    CHECK(integrate(one, w.begin, w.end) == doctest::Approx(oracle::pi - 2 * w.eps_eff).epsilon(1e-13));
    CHECK_THROWS_AS(g->window(0.0), ConfigError);
    CHECK_THROWS_AS(g->window(2.0), ConfigError);
}

TEST_CASE("analyze and synthesize") {
    const GridPtr g = build_grid();
    SUBCASE("unit vector") {
        for (const auto& p : test_params()) {
            const auto f = sample(g, [&](const Angle& t) { return phi(p, 3, t); });
            const auto a = analyze(f, p, 8);
            for (int n = 0; n < 8; ++n) {
                CHECK(std::abs(a[n] - (n == 3 ? 1.0 : 0.0)) <= 1e-8);
            }
        }
    }
    SUBCASE("zero") {
        const auto a = analyze(SampledFunction(g, std::vector<double>(g->size(), 0.0)), {0.1, 0.2}, 5);
        for (double v : a.coeffs) {
            CHECK(v == 0.0);
        }
        const auto s = synthesize(SpectralCoefficients::zero({0.1, 0.2}, 5), g);
        CHECK(std::all_of(s.values.begin(), s.values.end(), [](double v) { return v == 0.0; }));
    }
    SUBCASE("linearity") {
        const JacobiParams p(0, 1);
        const auto f = sample(g, [&](const Angle& t) { return 2 * phi(p, 0, t) + 3 * phi(p, 4, t); });
        const auto a = analyze(f, p, 6);
        const double expect[] = {2, 0, 0, 0, 3, 0};
        for (int n = 0; n < 6; ++n) {
            CHECK(std::abs(a[n] - expect[n]) <= 1e-8);
        }
    }
    SUBCASE("Chebyshev e0 synthesizes a constant") {
        const auto s = synthesize(SpectralCoefficients::unit({-0.5, -0.5}, 0, 4), g);
        for (double v : s.values) {
            CHECK(v == doctest::Approx(1.0 / std::sqrt(oracle::pi)).epsilon(1e-14));
        }
    }
    SUBCASE("round trip and Parseval for N <= 64") {
        for (const auto& p : test_params()) {
            for (int N : {8, 32, 64}) {
                const auto c = random_test_function(p, N, 11 + N);
                const auto f = synthesize(c, g);
                const auto back = analyze(f, p, N);
                double err = 0.0;
                double sq = 0.0;
                for (int n = 0; n < N; ++n) {
                    err = std::max(err, std::abs(back[n] - c[n]));
                    sq += c[n] * c[n];
                }
                INFO(p.to_string(), " N=", N);
                CHECK(err <= 1e-8);
                const double l2 = lp_norm(f, 2.0);
                CHECK(std::abs(l2 * l2 - sq) / sq <= 1e-6);
            }
        }
    }
    SUBCASE("round trip at alpha = beta = 0.3, N = 32") {
        const JacobiParams p(0.3, 0.3);
        const auto c = random_test_function(p, 32, 5);
        const auto back = analyze(synthesize(c, g), p, 32);
        for (int n = 0; n < 32; ++n) {
            CHECK(std::abs(back[n] - c[n]) <= 1e-8);
        }
    }
}

TEST_CASE("functions with vanishing coefficients vanish") {
    // band-limited f orthogonal to every phi_n below its band limit must be 0
    const GridPtr g = build_grid();
    for (const auto& p : test_params()) {
        auto c = random_test_function(p, 24, 3);
        const auto f = synthesize(c, g);
        const auto a = analyze(f, p, 24);
        // subtract the analyzed part: the residual has zero coefficients
        std::vector<double> r(g->size());
        const auto fa = synthesize(a, g);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = f.values[i] - fa.values[i];
        }
        CHECK(lp_norm(SampledFunction(g, r), 2.0) <= 1e-8);
    }
}

TEST_CASE("random test functions") {
    const JacobiParams p(0.2, -0.3);
    const auto a = random_test_function(p, 16, 99);
    const auto b = random_test_function(p, 16, 99);
    CHECK(a.coeffs == b.coeffs);
    const auto longer = random_test_function(p, 32, 99);
    for (int n = 0; n < 16; ++n) {
        CHECK(longer[n] == a[n]);
    }
    for (int n = 0; n < 32; ++n) {
        CHECK(std::abs(longer[n]) <= 1.0 / ((n + 1.0) * (n + 1.0)));
    }
    const auto s7 = random_test_function(p, 4, 7);
    CHECK(s7.size() == 4);
    for (double v : s7.coeffs) {
        CHECK(std::isfinite(v));
        CHECK(std::abs(v) <= 1.0);
    }
    CHECK(family_seed(42, 0) != family_seed(42, 1));
    CHECK(family_seed(42, 3) == family_seed(42, 3));
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1") {
    for (int n : {2, 5, 16}) {
        const auto [x, w] = gauss_legendre(n);
        for (int d = 0; d < 2 * n; ++d) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                s += w[i] * std::pow(x[i], d);
            }
            const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-14).scale(1.0));
        }
    }
}
