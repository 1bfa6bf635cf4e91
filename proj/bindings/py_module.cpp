#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padicroots/distribution.hpp"
#include "padicroots/moments.hpp"
#include "padicroots/poly.hpp"
#include "padicroots/prime.hpp"
#include "padicroots/root_counting.hpp"
#include "padicroots/simulate.hpp"

#ifndef PADICROOTS_VERSION
#define PADICROOTS_VERSION "0.0.0-dev"
#endif

namespace py = pybind11;

namespace {

using namespace padic;

// Integers and rationals cross the boundary as decimal strings so Python can
// rebuild exact int / Fraction values of any size.
mpz_class to_mpz(const std::string& text) {
    try {
        return mpz_class(text);
    } catch (const std::invalid_argument&) {
        throw py::value_error("not an integer: '" + text + "'");
    }
}

std::pair<std::string, std::string> rat_pair(const Rational& q) {
    return {q.get_num().get_str(), q.get_den().get_str()};
}

std::vector<mpz_class> to_mpz_vector(const std::vector<std::string>& text) {
    std::vector<mpz_class> out;
    out.reserve(text.size());
    for (const std::string& t : text) out.push_back(to_mpz(t));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact root counting and factorial moments for random polynomials "
              "over the p-adic integers";
    m.attr("__version__") = PADICROOTS_VERSION;

    py::register_exception<AssumptionError>(m, "AssumptionError");

    m.def(
        "count_roots",
        [](const std::vector<std::string>& coefficients, std::uint64_t p) {
            const Prime prime(p);
            const IntPolynomial f{to_mpz_vector(coefficients)};
            const RootCount rc = count_roots_zp(f, prime);
            return py::make_tuple(rc.total, rc.per_residue);
        },
        py::arg("coefficients"), py::arg("p"),
        "Distinct roots of the integer polynomial (constant term first) in Z_p; "
        "returns (total, per_residue).");

    m.def(
        "count_henselian",
        [](const std::vector<std::string>& residues, std::uint64_t p, unsigned long precision,
           unsigned long k) {
            const Prime prime(p);
            std::vector<mpz_class> res = to_mpz_vector(residues);
            const auto degree = static_cast<unsigned long>(res.size() - 1);
            const PAdicApproxPolynomial g(prime, precision, std::move(res), degree);
            const HenselianReport rep = count_henselian_roots(g, k);
            return py::make_tuple(rep.henselian_count, rep.all_simple);
        },
        py::arg("residues"), py::arg("p"), py::arg("precision"), py::arg("k"),
        "k-Henselian root count of a residue polynomial known mod p^precision; "
        "returns (count, all_simple).");

    m.def(
        "no_root_poly_count",
        [](unsigned long degree, std::uint64_t p) {
            return no_root_poly_count(degree, Prime(p)).get_str();
        },
        py::arg("degree"), py::arg("p"),
        "Number of monic residue polynomials of the given degree with no root mod p.");

    m.def(
        "theoretical_mean_variance",
        [](std::uint64_t p) {
            const auto [mean, variance] = theoretical_mean_variance(Prime(p));
            return py::make_tuple(rat_pair(mean), rat_pair(variance));
        },
        py::arg("p"),
        "Limiting mean and variance of the unit-conditioned root count, exact.");

    py::class_<MomentTable>(m, "MomentTable",
                            "Exact factorial-moment table of the distinct-root count.")
        .def(py::init([](std::uint64_t p) { return MomentTable(Prime(p)); }), py::arg("p"))
        .def(
            "alpha",
            [](MomentTable& t, unsigned long n, unsigned long d) { return rat_pair(t.alpha(n, d)); },
            py::arg("n"), py::arg("d"))
        .def(
            "beta",
            [](MomentTable& t, unsigned long n, unsigned long d) { return rat_pair(t.beta(n, d)); },
            py::arg("n"), py::arg("d"))
        .def(
            "alpha_stable",
            [](MomentTable& t, unsigned long d) { return rat_pair(t.alpha_stable(d)); },
            py::arg("d"))
        .def(
            "beta_stable",
            [](MomentTable& t, unsigned long d) { return rat_pair(t.beta_stable(d)); },
            py::arg("d"))
        .def(
            "gamma", [](MomentTable& t, unsigned long d) { return rat_pair(t.gamma(d)); },
            py::arg("d"))
        .def(
            "series_identity_check",
            [](MomentTable& t, unsigned long d_max) { return series_identity_check(t, d_max); },
            py::arg("d_max"));

    m.def(
        "estimate",
        [](std::uint64_t p, const std::vector<std::string>& values, unsigned long degree,
           unsigned long d, std::uint64_t samples, std::uint64_t seed, unsigned long workers,
           bool unit_constant_term) {
            const Prime prime(p);
            ExperimentConfig cfg{CoeffDistribution::uniform_on(prime, to_mpz_vector(values))};
            cfg.degree = degree;
            cfg.d = d;
            cfg.sample_count = samples;
            cfg.seed = seed;
            cfg.worker_count = workers;
            cfg.condition =
                unit_constant_term ? Condition::unit_constant_term : Condition::none;
            EstimateReport rep;
            {
                // worker threads never touch Python state
                py::gil_scoped_release release;
                rep = estimate_zd(cfg);
            }
            py::dict out;
            out["mean"] = rep.mean;
            out["stderr"] = rep.std_error;
            out["mean_exact"] = rat_pair(rep.mean_exact);
            out["samples_used"] = rep.samples_used;
            out["samples_rejected"] = rep.samples_rejected;
            out["seed"] = rep.seed;
            out["worker_count"] = rep.worker_count;
            return out;
        },
        py::arg("p"), py::arg("values"), py::arg("degree"), py::arg("d") = 1,
        py::arg("samples") = 1000, py::arg("seed") = 0, py::arg("workers") = 1,
        py::arg("unit_constant_term") = false,
        "Seeded Monte Carlo estimate of E[binom(N, d)] for monic polynomials with "
        "coefficients uniform on the given integer values.");
}
