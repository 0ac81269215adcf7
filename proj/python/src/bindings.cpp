#include "jacsob/cli.hpp"
#include "jacsob/errors.hpp"
#include "jacsob/experiments.hpp"
#include "jacsob/report.hpp"
#include "jacsob/sobolev.hpp"
#include "jacsob/spectral_ops.hpp"

#include <pybind11/iostream.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>
#include <optional>

namespace py = pybind11;
using namespace jacsob;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

SpectralCoefficients coeffs_from(const JacobiParams& p, const Array& a) {
    if (a.ndim() != 1) {
        throw ConfigError("coefficients must be a 1-d array");
    }
    return {p, std::vector<double>(a.data(), a.data() + a.size())};
}

Array to_array(const std::vector<double>& v) {
    Array out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
    auto view = out.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < view.shape(0); ++i) {
        view(i) = v[static_cast<std::size_t>(i)];
    }
    return out;
}

py::tuple result(const SpectralCoefficients& c) { return py::make_tuple(to_array(c.coeffs), c.params); }

DerivativeVariant variant_of(const std::string& s) {
    if (s == "variable") {
        return DerivativeVariant::variable_index;
    }
    if (s == "interlacing") {
        return DerivativeVariant::interlacing;
    }
    throw ConfigError("variant must be 'variable' or 'interlacing'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Jacobi expansions on (0, pi): operators, norms and verification suites";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<JacobiParams>(m, "JacobiParams")
        .def(py::init<double, double>(), py::arg("alpha"), py::arg("beta"))
        .def_property_readonly("alpha", &JacobiParams::alpha)
        .def_property_readonly("beta", &JacobiParams::beta)
        .def_property_readonly("A", &JacobiParams::A)
        .def("zero_eigenvalue", &JacobiParams::zero_eigenvalue)
        .def("shifted", &JacobiParams::shifted, py::arg("k"))
        .def("__eq__", [](const JacobiParams& a, const JacobiParams& b) { return a == b; })
        .def("__repr__", [](const JacobiParams& p) { return "JacobiParams" + p.to_string(); });

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](int panels, double ratio, int nodes) { return GridSpec{panels, ratio, nodes}; }),
             py::arg("panels_per_side") = 64, py::arg("ratio") = 0.5, py::arg("nodes_per_panel") = 16)
        .def_readwrite("panels_per_side", &GridSpec::panels_per_side)
        .def_readwrite("ratio", &GridSpec::ratio)
        .def_readwrite("nodes_per_panel", &GridSpec::nodes_per_panel);

    m.def("jacobi_poly", &jacobi_poly, py::arg("params"), py::arg("n"), py::arg("x"));
    m.def("norm_constant", &norm_constant, py::arg("params"), py::arg("n"));
    m.def("psi", py::overload_cast<const JacobiParams&, double>(&psi), py::arg("params"), py::arg("theta"));
    m.def("phi", py::overload_cast<const JacobiParams&, int, double>(&phi), py::arg("params"), py::arg("n"),
          py::arg("theta"));
    m.def("eigenvalue", &eigenvalue, py::arg("params"), py::arg("n"));
    m.def("critical_exponent", &critical_exponent, py::arg("params"));
    m.def(
        "exponent_range",
        [](const JacobiParams& p) {
            const auto e = exponent_range(p);
            return py::make_tuple(e.lower, e.upper);
        },
        py::arg("params"));

    m.def(
        "random_test_function",
        [](const JacobiParams& p, int N, std::uint64_t seed) { return to_array(random_test_function(p, N, seed).coeffs); },
        py::arg("params"), py::arg("N"), py::arg("seed"));
    m.def(
        "synthesize",
        [](const JacobiParams& p, const Array& c, const Array& thetas) {
            const PointFunction f = synthesis_function(coeffs_from(p, c));
            std::vector<double> out;
            for (py::ssize_t i = 0; i < thetas.size(); ++i) {
                out.push_back(f(Angle::at(thetas.data()[i])));
            }
            return to_array(out);
        },
        py::arg("params"), py::arg("coeffs"), py::arg("thetas"));

    m.def(
        "derivative",
        [](const JacobiParams& p, const Array& c, int k, const std::string& variant) {
            return result(derivative_spectral({variant_of(variant), k}, coeffs_from(p, c)));
        },
        py::arg("params"), py::arg("coeffs"), py::arg("k") = 1, py::arg("variant") = "variable",
        "Coefficients of the derivative and the basis they live in.");
    m.def(
        "adjoint",
        [](const JacobiParams& p, const Array& c, int k) {
            return result(adjoint_spectral(p, k, coeffs_from(p.shifted(k), c)));
        },
        py::arg("params"), py::arg("coeffs"), py::arg("k") = 1,
        "(D^(k))* applied to coefficients in the basis (alpha+k, beta+k).");
    m.def(
        "potential",
        [](const JacobiParams& p, const Array& c, double sigma, std::optional<std::string> kind) {
            PotentialKind pk = default_potential_kind(p);
            if (kind) {
                if (*kind == "riesz") {
                    pk = PotentialKind::riesz;
                } else if (*kind == "bessel") {
                    pk = PotentialKind::bessel;
                } else {
                    throw ConfigError("kind must be 'riesz' or 'bessel'");
                }
            }
            return to_array(potential(coeffs_from(p, c), sigma, pk).coeffs);
        },
        py::arg("params"), py::arg("coeffs"), py::arg("sigma"), py::arg("kind") = py::none());
    m.def(
        "poisson",
        [](const JacobiParams& p, const Array& c, const std::string& mode, double value, int l) {
            PoissonMode pm;
            if (mode == "semigroup") {
                pm = PoissonMode::semigroup;
            } else if (mode == "integral") {
                pm = PoissonMode::integral;
            } else if (mode == "spectral") {
                pm = PoissonMode::spectral_integral;
            } else if (mode == "tail") {
                pm = PoissonMode::tail;
            } else {
                throw ConfigError("mode must be semigroup, integral, spectral or tail");
            }
            return to_array(poisson(coeffs_from(p, c), {pm, value, l}).coeffs);
        },
        py::arg("params"), py::arg("coeffs"), py::arg("mode"), py::arg("value"), py::arg("l") = 0);
    m.def(
        "riesz_transform",
        [](const JacobiParams& p, const Array& c, int k, const std::string& which) {
            RieszKind rk;
            if (which == "R1") {
                rk = RieszKind::R1;
            } else if (which == "R2") {
                rk = RieszKind::R2;
            } else if (which == "R1-tilde") {
                rk = RieszKind::R1_tilde;
            } else if (which == "R2-tilde") {
                rk = RieszKind::R2_tilde;
            } else {
                throw ConfigError("which must be R1, R2, R1-tilde or R2-tilde");
            }
            const JacobiParams in = (rk == RieszKind::R2 || rk == RieszKind::R2_tilde) ? p.shifted(k) : p;
            return result(riesz_transform(p, coeffs_from(in, c), k, rk));
        },
        py::arg("params"), py::arg("coeffs"), py::arg("k"), py::arg("which") = "R1");

    m.def(
        "lp_norm",
        [](const JacobiParams& p, const Array& c, double q, const GridSpec& g) {
            const auto sc = coeffs_from(p, c);
            return lp_norm(synthesize(sc, build_grid(g)), q);
        },
        py::arg("params"), py::arg("coeffs"), py::arg("p"), py::arg("grid") = GridSpec{});
    m.def(
        "sobolev_norm",
        [](const JacobiParams& p, const Array& c, int order, double q, const std::string& variant, const GridSpec& g) {
            BasisCache cache(build_grid(g));
            return sobolev_norm(coeffs_from(p, c), {variant_of(variant), order, q}, cache);
        },
        py::arg("params"), py::arg("coeffs"), py::arg("m"), py::arg("p"), py::arg("variant") = "variable",
        py::arg("grid") = GridSpec{});
    m.def(
        "potential_norm",
        [](const JacobiParams& p, const Array& c, double s, double q, const GridSpec& g) {
            BasisCache cache(build_grid(g));
            return potential_norm(coeffs_from(p, c), s, q, cache);
        },
        py::arg("params"), py::arg("coeffs"), py::arg("s"), py::arg("p"), py::arg("grid") = GridSpec{});
    m.def(
        "kernel",
        [](const JacobiParams& p, double r, double theta, double varphi) {
            return kernel_eval(p, r, theta, varphi, kernel_required_terms(p, r));
        },
        py::arg("params"), py::arg("r"), py::arg("theta"), py::arg("varphi"));

    // Suites return their report as a JSON string; the Python package decodes it.
    m.def("_identity_suite", [](const JacobiParams& p, int N, const GridSpec& g) {
        return report_json(run_identity_suite(p, N, g));
    });
    m.def("_theorem_a", [](const JacobiParams& p, double q, int order, std::uint64_t seed, int N, const GridSpec& g) {
        return report_json(run_theorem_a(p, q, order, seed, N, g));
    });
    m.def("_theorem_b", [](const JacobiParams& p, double q, std::uint64_t seed, int N, const GridSpec& g) {
        return report_json(run_theorem_b(p, q, seed, N, g));
    });
    m.def("_poisson_suite", [](const JacobiParams& p, double q, std::uint64_t seed, int N, const GridSpec& g) {
        return report_json(run_poisson_suite(p, q, seed, N, g));
    });
    m.def("_pencil_suite", [](const JacobiParams& p, int N, const GridSpec& g) {
        return report_json(run_pencil_suite(p, N, g));
    });
    m.def("_classical_comparison", [](const JacobiParams& p, double q, int order, const GridSpec& g) {
        return report_json(run_classical_comparison(p, q, order, g));
    });
    m.def("_maximal_sobolev", [](const JacobiParams& p, double q, std::uint64_t seed, int N, const GridSpec& g) {
        return report_json(run_maximal_sobolev(p, q, seed, N, g));
    });

    m.def(
        "main",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "jacsob");
            py::scoped_ostream_redirect out(std::cout, py::module_::import("sys").attr("stdout"));
            py::scoped_ostream_redirect err(std::cerr, py::module_::import("sys").attr("stderr"));
            return dispatch(args, std::cout, std::cerr);
        },
        py::arg("args"), "Run the command-line tool in-process; returns the exit code.");
}
