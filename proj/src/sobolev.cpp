#include "jacsob/sobolev.hpp"

#include "jacsob/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jacsob {

void require_exponent(const JacobiParams& params, double p) {
    const ExponentRange e = exponent_range(params);
    if (!e.contains(p)) {
        throw ConfigError("p = " + std::to_string(p) + " lies outside E" + params.to_string() + " = " + e.to_string());
    }
}

double sobolev_norm(const SpectralCoefficients& c, const SobolevVariant& v, BasisCache& cache) {
    if (v.m < 0) {
        throw ConfigError("Sobolev order m must be nonnegative");
    }
    require_exponent(c.params, v.p);
    double total = 0.0;
    for (int k = 0; k <= v.m; ++k) {
        const auto d = derivative_spectral({v.kind, k}, c);
        const auto& table = cache.table(d.params, static_cast<int>(d.size()));
        total += lp_norm(table.synthesize(d), v.p);
    }
    return total;
}

double potential_norm(const SpectralCoefficients& c, double s, double p, BasisCache& cache) {
    require_exponent(c.params, p);
    const auto g = potential_inverse(c, s, default_potential_kind(c.params));
    return lp_norm(cache.table(g.params, static_cast<int>(g.size())).synthesize(g), p);
}

CounterexampleFunction::CounterexampleFunction(const JacobiParams& params) : params_(params) {
    if (params.alpha() == 0.0 || params.beta() == 0.0) {
        throw ConfigError("the counterexample needs alpha != 0 and beta != 0, got " + params.to_string());
    }
    f_ = HalfAngleExpr::psi(-params.alpha(), -params.beta());
    d1_ = f_.apply_D(params);
    d2_ = d1_.apply_D(params.shifted(1));
    dd_ = d1_.apply_D_star(params);
}

double BlowupResult::cauchy_defect(double eps_max) const {
    if (points.empty()) {
        throw ConfigError("empty blow-up diagnostic");
    }
    const double last = points.back().norm;
    double worst = 0.0;
    for (const auto& pt : points) {
        if (pt.eps <= eps_max) {
            worst = std::max(worst, std::abs(pt.norm - last) / last);
        }
    }
    return worst;
}

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2) {
        throw ConfigError("slope fit needs at least two points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

} // namespace

BlowupResult blowup_diagnostic(const PointFunction& f, const GridPtr& grid, double p, std::span<const double> epsilons) {
    if (epsilons.size() < 3) {
        throw ConfigError("blow-up diagnostic needs at least three epsilons");
    }
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0 && epsilons[i] < 0.5 * kPi)) {
            throw ConfigError("epsilons must lie in (0, pi/2)");
        }
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
            throw ConfigError("epsilons must be strictly decreasing");
        }
    }
    const auto values = sample(grid, f);
    BlowupResult out{};
    std::vector<Window> windows;
    std::vector<double> le;
    std::vector<double> ln;
    std::vector<double> lp;
    for (double eps : epsilons) {
        const Window w = grid->window(eps);
        const double power = lp_power(values, p, w.begin, w.end);
        const double norm = std::pow(power, 1.0 / p);
        if (!out.points.empty() && out.points.back().eps == w.eps_eff) {
            continue;
        }
        out.points.push_back({w.eps_eff, norm, power});
        windows.push_back(w);
        le.push_back(std::log(w.eps_eff));
        ln.push_back(std::log(norm));
        lp.push_back(std::log(power));
    }
    out.norm_slope = ls_slope(le, ln);
    out.power_slope = ls_slope(le, lp);
    // Increments are integrated over the two annuli directly; differencing the
    // totals would drown fast-converging tails in rounding.
    std::vector<double> ie;
    std::vector<double> ii;
    for (std::size_t j = 1; j < windows.size(); ++j) {
        const double inc = lp_power(values, p, windows[j].begin, windows[j - 1].begin) +
                           lp_power(values, p, windows[j - 1].end, windows[j].end);
        if (inc > 0.0) {
            ie.push_back(std::log(out.points[j].eps));
            ii.push_back(std::log(inc));
        }
    }
    out.singular_exponent = ie.size() >= 2 ? ls_slope(ie, ii) : 0.0;
    return out;
}

std::vector<double> geometric_epsilons(const QuadratureGrid& grid, double lo, double hi) {
    std::vector<double> out;
    const double h = grid.bulk_width();
    for (double e : grid.breakpoints()) {
        if (e < h * (1.0 - 1e-12) && e >= lo && e <= hi) {
            out.push_back(e);
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

struct Bounds {
    double upper_f;
    double upper_d1;
    double upper_dd;
    double lower_d2;
};

Bounds fit_bounds(const CounterexampleFunction& cx, const QuadratureGrid& grid) {
    const double a = cx.params().alpha();
    const double b = cx.params().beta();
    Bounds out{0.0, 0.0, 0.0, kInf};
    const auto model = [](const Angle& t, double ea, double eb) {
        return std::exp(ea * std::log(t.theta) + eb * std::log(t.comp));
    };
    for (const Angle& t : grid.nodes()) {
        const double f = cx.f()(t);
        out.upper_f = std::max(out.upper_f, f / model(t, -a + 0.5, -b + 0.5));
        out.upper_d1 = std::max(out.upper_d1, std::abs(cx.first()(t)) / model(t, -a - 0.5, -b - 0.5));
        out.upper_dd = std::max(out.upper_dd, std::abs(cx.interlaced()(t)) / f);
        out.lower_d2 = std::min(out.lower_d2, (std::abs(cx.second()(t)) + 1.0) / model(t, -a - 1.5, -b - 1.5));
    }
    return out;
}

} // namespace

ExperimentReport counterexample_bounds_check(const JacobiParams& params, const GridSpec& spec) {
    const CounterexampleFunction cx(params);
    const CounterexampleFunction mirrored(JacobiParams(params.beta(), params.alpha()));
    const GridSpec fine{2 * spec.panels_per_side, spec.ratio, 2 * spec.nodes_per_panel};
    const GridPtr g = build_grid(spec);
    const GridPtr gf = build_grid(fine);
    const Bounds c = fit_bounds(cx, *g);
    const Bounds cf = fit_bounds(cx, *gf);
    const Bounds cm = fit_bounds(mirrored, *g);

    ExperimentReport r;
    r.name = "counterexample-bounds";
    r.params = {params};
    r.settings.grid = spec;
    const auto rel = [](double x, double y) { return std::abs(x - y) / std::abs(y); };
    const std::pair<const char*, double Bounds::*> rows[] = {
        {"f <= C theta^{-a+1/2} (pi-theta)^{-b+1/2}", &Bounds::upper_f},
        {"|D f| <= C theta^{-a-1/2} (pi-theta)^{-b-1/2}", &Bounds::upper_d1},
        {"|D* D f| <= C f", &Bounds::upper_dd},
        {"|D_{a+1,b+1} D f| + 1 >= C theta^{-a-3/2} (pi-theta)^{-b-3/2}", &Bounds::lower_d2},
    };
    for (const auto& [what, field] : rows) {
        const std::string w(what);
        r.add_gt(w + ": fitted C positive", c.*field, 0.0);
        r.add_le(w + ": relative change of C under grid refinement", rel(cf.*field, c.*field), 0.05);
        r.add_le(w + ": relative change of C under reflection", rel(cm.*field, c.*field), 1e-8);
    }
    return r;
}

} // namespace jacsob
