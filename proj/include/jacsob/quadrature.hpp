#pragma once

#include "jacsob/jacobi.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace jacsob {

struct GridSpec {
    int panels_per_side = 64;
    double ratio = 0.5;
    int nodes_per_panel = 16;
};

/// Contiguous node range [begin, end) covering (eps_eff, pi - eps_eff).
struct Window {
    std::size_t begin;
    std::size_t end;
    double eps_eff;
};

/// Composite Gauss-Legendre rule on (0, pi), symmetric about pi/2.
///
/// Each half carries P = panels_per_side panels: G = max(1, P/2) panels
/// refined geometrically (ratio r) toward the endpoint inside the first cell
/// [0, h] of a uniform partition, then P - G uniform panels of width h
/// reaching pi/2. The innermost panel [0, h r^{G-1}] is integrated after the
/// substitution theta = a u^20, which turns integrable algebraic endpoint
/// singularities into smooth integrands.
class QuadratureGrid {
public:
    explicit QuadratureGrid(const GridSpec& spec);

    const GridSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<Angle>& nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::vector<double> thetas() const;

    /// Width of the uniform bulk panels.
    double bulk_width() const noexcept { return bulk_width_; }

    /// Panel edges on (0, pi/2], increasing; the left edge 0 is excluded.
    std::span<const double> breakpoints() const noexcept { return edges_; }

    /// Node-aligned window: whole panels inside (eps, pi - eps), with eps
    /// snapped up to the nearest panel edge. Requires 0 < eps < pi/2.
    Window window(double eps) const;

    /// Nodes outside the first two bulk panels on each side.
    Window interior() const;

private:
    GridSpec spec_;
    double bulk_width_ = 0.0;
    std::vector<Angle> nodes_;
    std::vector<double> weights_;
    std::vector<double> edges_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

/// Validates the configuration and builds the grid.
GridPtr build_grid(int panels_per_side = 64, double ratio = 0.5, int nodes_per_panel = 16);
GridPtr build_grid(const GridSpec& spec);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int count);

/// Values of a function on the nodes of a grid.
struct SampledFunction {
    GridPtr grid;
    std::vector<double> values;

    SampledFunction(GridPtr g, std::vector<double> v);

    std::size_t size() const noexcept { return values.size(); }
};

/// Samples fn(node) for every node of the grid.
template <class Fn>
SampledFunction sample(const GridPtr& grid, Fn&& fn) {
    std::vector<double> v;
    v.reserve(grid->size());
    for (const Angle& t : grid->nodes()) {
        v.push_back(fn(t));
    }
    return SampledFunction(grid, std::move(v));
}

/// Fourier-Jacobi coefficients (a_0, ..., a_{N-1}) in the basis of `params`.
struct SpectralCoefficients {
    JacobiParams params;
    std::vector<double> coeffs;

    SpectralCoefficients(JacobiParams p, std::vector<double> c);

    /// e_n of length N.
    static SpectralCoefficients unit(const JacobiParams& p, int n, int N);
    static SpectralCoefficients zero(const JacobiParams& p, int N);

    std::size_t size() const noexcept { return coeffs.size(); }
    double operator[](std::size_t n) const { return coeffs[n]; }
};

/// Compensated sum of w_i f_i in node order. Rejects non-finite values.
double integrate(const SampledFunction& f);

/// Same over a node range.
double integrate(const SampledFunction& f, std::size_t begin, std::size_t end);

/// (\int |f|^p)^{1/p} over (0, pi), or over the node-aligned window for eps.
double lp_norm(const SampledFunction& f, double p, std::optional<double> eps = std::nullopt);

/// \int |f|^p over a node range (the p-th power of the truncated norm).
double lp_power(const SampledFunction& f, double p, std::size_t begin, std::size_t end);

/// a_n(f) = \int f phi_n, n = 0 .. N-1.
SpectralCoefficients analyze(const SampledFunction& f, const JacobiParams& params, int N);

/// sum_n a_n phi_n at every node.
SampledFunction synthesize(const SpectralCoefficients& c, const GridPtr& grid);

/// Coefficients u_n / (n+1)^2 with u_n uniform on [-1, 1] from a seeded
/// Mersenne twister. Coefficients of a longer vector with the same seed
/// extend the shorter one.
SpectralCoefficients random_test_function(const JacobiParams& params, int N, std::uint64_t seed);

/// Seed of the i-th member of a seeded family of test functions.
std::uint64_t family_seed(std::uint64_t seed, int member);

/// Basis matrix phi_n(node_i) for one parameter pair and n < N.
class BasisTable {
public:
    BasisTable(GridPtr grid, const JacobiParams& params, int N);

    const JacobiParams& params() const noexcept { return params_; }
    int degree_count() const noexcept { return static_cast<int>(matrix_.cols()); }
    const GridPtr& grid() const noexcept { return grid_; }

    /// nodes x N, column n holds phi_n on the grid.
    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

    SampledFunction synthesize(const SpectralCoefficients& c) const;
    std::vector<double> synthesize_values(std::span<const double> coeffs) const;

    /// Column j of the result is the synthesis of column j of coeffs
    /// (coeffs.rows() <= N).
    Eigen::MatrixXd synthesize_many(const Eigen::MatrixXd& coeffs) const;

    SpectralCoefficients analyze(const SampledFunction& f, int N) const;

private:
    GridPtr grid_;
    JacobiParams params_;
    Eigen::MatrixXd matrix_;
};

/// Caller-owned cache of basis tables over one grid.
class BasisCache {
public:
    explicit BasisCache(GridPtr grid) : grid_(std::move(grid)) {}

    const GridPtr& grid() const noexcept { return grid_; }

    /// A table for `params` with at least N columns.
    const BasisTable& table(const JacobiParams& params, int N);

private:
    GridPtr grid_;
    std::map<std::pair<double, double>, std::unique_ptr<BasisTable>> tables_;
};

/// Largest band limit N whose products phi_n phi_m the grid's bulk panels
/// integrate accurately.
int max_resolved_degree(const QuadratureGrid& grid);

} // namespace jacsob
