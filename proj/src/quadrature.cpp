#include "jacsob/quadrature.hpp"

#include "jacsob/errors.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace jacsob {

namespace {

constexpr int kSubstitutionPower = 20;

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) noexcept {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double abs_pow(double x, double p) {
    const double a = std::abs(x);
    if (a == 0.0) {
        return 0.0;
    }
    if (p == 1.0) {
        return a;
    }
    if (p == 2.0) {
        return a * a;
    }
    return std::exp(p * std::log(a));
}

void check_finite(const SampledFunction& f, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        if (!std::isfinite(f.values[i])) {
            throw DomainError("non-finite sample at node " + std::to_string(i));
        }
    }
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int count) {
    if (count < 1) {
        throw ConfigError("gauss_legendre requires at least one node");
    }
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> x(n);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (count + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p0 = 0.0;
            for (int j = 1; j <= count; ++j) {
                const double pm = p0;
                p0 = p1;
                p1 = ((2.0 * j - 1.0) * z * p0 - (j - 1.0) * pm) / j;
            }
            // p1 = P_count(z), p0 = P_{count-1}(z)
            dp = count * (z * p1 - p0) / (z * z - 1.0);
            const double step = p1 / dp;
            z -= step;
            if (std::abs(step) <= 1e-16) {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

QuadratureGrid::QuadratureGrid(const GridSpec& spec) : spec_(spec) {
    if (spec.panels_per_side < 1 || spec.nodes_per_panel < 2 || !(spec.ratio > 0.0 && spec.ratio < 1.0)) {
        throw ConfigError("grid requires panels_per_side >= 1, nodes_per_panel >= 2, 0 < ratio < 1");
    }
    const int P = spec.panels_per_side;
    const int G = std::max(1, P / 2);
    const int U = P - G + 1; // uniform cells; the first is replaced by the graded panels
    bulk_width_ = 0.5 * kPi / U;

    // Left-half edges, increasing: h r^{G-1}, ..., h r, h, 2h, ..., pi/2.
    std::vector<double> edges;
    for (int j = G - 1; j >= 0; --j) {
        edges.push_back(bulk_width_ * std::pow(spec.ratio, j));
    }
    for (int j = 2; j <= U; ++j) {
        edges.push_back(j == U ? 0.5 * kPi : bulk_width_ * j);
    }
    edges_ = edges;

    const auto [gx, gw] = gauss_legendre(spec.nodes_per_panel);
    std::vector<double> left;
    std::vector<double> left_w;
    const int q = spec.nodes_per_panel;
    // Innermost panel with the power substitution.
    const double a0 = edges.front();
    for (int i = 0; i < q; ++i) {
        const double u = 0.5 * (gx[static_cast<std::size_t>(i)] + 1.0);
        left.push_back(a0 * std::pow(u, kSubstitutionPower));
        left_w.push_back(0.5 * gw[static_cast<std::size_t>(i)] * a0 * kSubstitutionPower *
                         std::pow(u, kSubstitutionPower - 1));
    }
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double lo = edges[e];
        const double hi = edges[e + 1];
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (int i = 0; i < q; ++i) {
            left.push_back(mid + half * gx[static_cast<std::size_t>(i)]);
            left_w.push_back(half * gw[static_cast<std::size_t>(i)]);
        }
    }
    const std::size_t m = left.size();
    nodes_.reserve(2 * m);
    weights_.reserve(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        nodes_.push_back(Angle::at(left[i]));
        weights_.push_back(left_w[i]);
    }
    for (std::size_t i = m; i-- > 0;) {
        nodes_.push_back(Angle::from_right(left[i]));
        weights_.push_back(left_w[i]);
    }
}

std::vector<double> QuadratureGrid::thetas() const {
    std::vector<double> t;
    t.reserve(nodes_.size());
    for (const Angle& a : nodes_) {
        t.push_back(a.theta);
    }
    return t;
}

Window QuadratureGrid::window(double eps) const {
    if (!(eps > 0.0 && eps < 0.5 * kPi)) {
        throw ConfigError("window requires 0 < eps < pi/2");
    }
    // Panel j (0-based from the endpoint) starts at edge j-1; panel 0 starts at 0.
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), eps);
    if (it == edges_.end() || *it >= 0.5 * kPi) {
        throw ConfigError("window is empty: eps beyond the last interior panel edge");
    }
    const std::size_t first_panel = static_cast<std::size_t>(it - edges_.begin()) + 1;
    const std::size_t begin = first_panel * static_cast<std::size_t>(spec_.nodes_per_panel);
    return {begin, nodes_.size() - begin, *it};
}

Window QuadratureGrid::interior() const {
    const double cut = 2.0 * bulk_width_;
    std::size_t begin = 0;
    while (begin < nodes_.size() && nodes_[begin].theta < cut) {
        ++begin;
    }
    const std::size_t end = begin < nodes_.size() - begin ? nodes_.size() - begin : begin;
    return {begin, end, cut};
}

GridPtr build_grid(const GridSpec& spec) { return std::make_shared<const QuadratureGrid>(spec); }

GridPtr build_grid(int panels_per_side, double ratio, int nodes_per_panel) {
    return build_grid(GridSpec{panels_per_side, ratio, nodes_per_panel});
}

int max_resolved_degree(const QuadratureGrid& grid) {
    return static_cast<int>(0.8 * grid.spec().nodes_per_panel / grid.bulk_width());
}

SampledFunction::SampledFunction(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid) {
        throw ConfigError("sampled function without a grid");
    }
    if (values.size() != grid->size()) {
        throw ConfigError("sample count " + std::to_string(values.size()) + " does not match grid size " +
                          std::to_string(grid->size()));
    }
}

SpectralCoefficients::SpectralCoefficients(JacobiParams p, std::vector<double> c)
    : params(p), coeffs(std::move(c)) {
    if (coeffs.empty()) {
        throw ConfigError("coefficient vector must have N >= 1 entries");
    }
}

SpectralCoefficients SpectralCoefficients::unit(const JacobiParams& p, int n, int N) {
    if (n < 0 || n >= N) {
        throw ConfigError("unit vector index out of range");
    }
    std::vector<double> c(static_cast<std::size_t>(N), 0.0);
    c[static_cast<std::size_t>(n)] = 1.0;
    return {p, std::move(c)};
}

SpectralCoefficients SpectralCoefficients::zero(const JacobiParams& p, int N) {
    if (N < 1) {
        throw ConfigError("coefficient vector must have N >= 1 entries");
    }
    return {p, std::vector<double>(static_cast<std::size_t>(N), 0.0)};
}

double integrate(const SampledFunction& f, std::size_t begin, std::size_t end) {
    check_finite(f, begin, end);
    const auto w = f.grid->weights();
    KahanSum s;
    for (std::size_t i = begin; i < end; ++i) {
        s.add(w[i] * f.values[i]);
    }
    return s.sum;
}

double integrate(const SampledFunction& f) { return integrate(f, 0, f.size()); }

double lp_power(const SampledFunction& f, double p, std::size_t begin, std::size_t end) {
    if (!(p >= 1.0) || std::isinf(p)) {
        throw ConfigError("lp_norm requires finite p >= 1");
    }
    check_finite(f, begin, end);
    const auto w = f.grid->weights();
    KahanSum s;
    for (std::size_t i = begin; i < end; ++i) {
        s.add(w[i] * abs_pow(f.values[i], p));
    }
    return s.sum;
}

double lp_norm(const SampledFunction& f, double p, std::optional<double> eps) {
    std::size_t begin = 0;
    std::size_t end = f.size();
    if (eps) {
        const Window w = f.grid->window(*eps);
        begin = w.begin;
        end = w.end;
    }
    const double power = lp_power(f, p, begin, end);
    return p == 1.0 ? power : std::pow(power, 1.0 / p);
}

BasisTable::BasisTable(GridPtr grid, const JacobiParams& params, int N)
    : grid_(std::move(grid)), params_(params) {
    if (N < 1) {
        throw ConfigError("basis table requires N >= 1");
    }
    const std::size_t M = grid_->size();
    matrix_.resize(static_cast<Eigen::Index>(M), N);
    std::vector<double> c(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
        c[static_cast<std::size_t>(n)] = norm_constant(params_, n);
    }
    std::vector<double> p(static_cast<std::size_t>(N));
    for (std::size_t i = 0; i < M; ++i) {
        const Angle& t = grid_->nodes()[i];
        const double w = psi(params_, t);
        jacobi_poly_all(params_, t.cos(), p);
        for (int n = 0; n < N; ++n) {
            matrix_(static_cast<Eigen::Index>(i), n) = w * c[static_cast<std::size_t>(n)] * p[static_cast<std::size_t>(n)];
        }
    }
}

std::vector<double> BasisTable::synthesize_values(std::span<const double> coeffs) const {
    if (static_cast<Eigen::Index>(coeffs.size()) > matrix_.cols()) {
        throw ConfigError("coefficient vector longer than the basis table");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(coeffs.size());
    Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), n);
    Eigen::VectorXd v = matrix_.leftCols(n) * c;
    return {v.data(), v.data() + v.size()};
}

SampledFunction BasisTable::synthesize(const SpectralCoefficients& c) const {
    if (!(c.params == params_)) {
        throw BasisMismatch("synthesize: coefficients in basis " + c.params.to_string() + ", table in " +
                            params_.to_string());
    }
    return {grid_, synthesize_values(c.coeffs)};
}

Eigen::MatrixXd BasisTable::synthesize_many(const Eigen::MatrixXd& coeffs) const {
    if (coeffs.rows() > matrix_.cols()) {
        throw ConfigError("coefficient matrix longer than the basis table");
    }
    return matrix_.leftCols(coeffs.rows()) * coeffs;
}

SpectralCoefficients BasisTable::analyze(const SampledFunction& f, int N) const {
    if (N < 1 || N > matrix_.cols()) {
        throw ConfigError("analyze: N out of range for the basis table");
    }
    if (f.grid.get() != grid_.get() && f.grid->size() != grid_->size()) {
        throw ConfigError("analyze: function sampled on a different grid");
    }
    check_finite(f, 0, f.size());
    const auto w = grid_->weights();
    std::vector<double> a(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
        const double* col = matrix_.col(n).data();
        KahanSum s;
        for (std::size_t i = 0; i < f.size(); ++i) {
            s.add(w[i] * f.values[i] * col[i]);
        }
        a[static_cast<std::size_t>(n)] = s.sum;
    }
    return {params_, std::move(a)};
}

const BasisTable& BasisCache::table(const JacobiParams& params, int N) {
    auto& slot = tables_[{params.alpha(), params.beta()}];
    if (!slot || slot->degree_count() < N) {
        slot = std::make_unique<BasisTable>(grid_, params, N);
    }
    return *slot;
}

SpectralCoefficients analyze(const SampledFunction& f, const JacobiParams& params, int N) {
    if (N < 1) {
        throw ConfigError("analyze requires N >= 1");
    }
    return BasisTable(f.grid, params, N).analyze(f, N);
}

SampledFunction synthesize(const SpectralCoefficients& c, const GridPtr& grid) {
    return BasisTable(grid, c.params, static_cast<int>(c.size())).synthesize(c);
}

std::uint64_t family_seed(std::uint64_t seed, int member) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(member)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

SpectralCoefficients random_test_function(const JacobiParams& params, int N, std::uint64_t seed) {
    if (N < 1) {
        throw ConfigError("random_test_function requires N >= 1");
    }
    std::mt19937_64 gen(seed);
    std::vector<double> c(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
        // 53 high bits -> [0, 1) -> [-1, 1)
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
        const double d = n + 1.0;
        c[static_cast<std::size_t>(n)] = u / (d * d);
    }
    return {params, std::move(c)};
}

} // namespace jacsob
