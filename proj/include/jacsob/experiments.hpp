#pragma once

#include "jacsob/jacobi.hpp"
#include "jacsob/quadrature.hpp"
#include "jacsob/report.hpp"

#include <cstdint>
#include <vector>

namespace jacsob {

/// Members of every seeded test-function family.
inline constexpr int kFamilySize = 100;

/// (-1/2,-1/2), (0,0), (1/4,1/4), (2.5,0.7), (-3/4,0), (-0.9,-0.6), (-1/4,-3/4).
std::vector<JacobiParams> default_parameter_set();

/// Seeded family of band-limited test functions with N coefficients.
std::vector<SpectralCoefficients> test_family(const JacobiParams& params, int N, std::uint64_t seed,
                                              int count = kFamilySize);

// Precondition checks, run by each suite before any computation and exposed
// so callers can validate a configuration up front.
void check_identity_suite(const JacobiParams& params, int N, const GridSpec& grid);
void check_theorem_a(const JacobiParams& params, double p, int m, int N, const GridSpec& grid);
void check_theorem_b(const JacobiParams& params, double p, int N, const GridSpec& grid);
void check_poisson_suite(const JacobiParams& params, double p, int N, const GridSpec& grid);
void check_pencil_suite(const JacobiParams& params, int N, const GridSpec& grid);
void check_classical_comparison(const JacobiParams& params, double p, int m, const GridSpec& grid);
void check_maximal_sobolev(const JacobiParams& params, double p, int N, const GridSpec& grid);

ExperimentReport run_identity_suite(const JacobiParams& params, int N, const GridSpec& grid = {});
ExperimentReport run_theorem_a(const JacobiParams& params, double p, int m, std::uint64_t seed, int N,
                               const GridSpec& grid = {});
ExperimentReport run_theorem_b(const JacobiParams& params, double p, std::uint64_t seed, int N,
                               const GridSpec& grid = {});
ExperimentReport run_poisson_suite(const JacobiParams& params, double p, std::uint64_t seed, int N,
                                   const GridSpec& grid = {});
ExperimentReport run_pencil_suite(const JacobiParams& params, int N, const GridSpec& grid = {});
ExperimentReport run_classical_comparison(const JacobiParams& params, double p, int m, const GridSpec& grid = {});
ExperimentReport run_maximal_sobolev(const JacobiParams& params, double p, std::uint64_t seed, int N,
                                     const GridSpec& grid = {});

} // namespace jacsob
