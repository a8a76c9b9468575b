// Python bindings for the main operations: profiles, estimators, the five
// CI constructors, distribution truths, the simulation harness, regime
// classification, and attribution. Distributions and methods are passed in
// their canonical text forms.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "turingci/asymptotics.hpp"
#include "turingci/attribution.hpp"
#include "turingci/harness.hpp"
#include "turingci/numerics.hpp"

namespace py = pybind11;
using namespace turingci;

namespace {

Interval build_from_profile(const SampleProfile& profile, std::uint64_t r,
                            const std::string& method, double alpha, double V) {
    double T = turing_estimate(profile, r);
    double s_hat = sd_estimate(profile, r);
    switch (parse_method(method)) {
        case CIMethod::Normal:
            return normal_ci(T, s_hat, profile.n(), alpha);
        case CIMethod::NormalRatio:
            return normal_ratio_ci(T, s_hat, profile.n(), alpha);
        case CIMethod::Poisson:
            return poisson_ci(T, profile.n(), r, alpha);
        case CIMethod::Esty:
            return esty_ci(T, s_hat, profile.occupancy(r + 1), profile.n(), alpha);
        case CIMethod::Heuristic:
            return heuristic_ci(T, s_hat, profile.n(), r, CIConfig{alpha, V});
    }
    throw std::logic_error("unreachable CI method");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Occupancy-probability confidence intervals from Turing's estimator";
    m.attr("__version__") = kToolkitVersion;

    py::class_<SampleProfile>(m, "SampleProfile")
        .def_static(
            "from_sample",
            [](const std::vector<LetterId>& sample) {
                return SampleProfile::from_sample(sample);
            },
            py::arg("sample"))
        .def_static(
            "from_counts",
            [](const std::unordered_map<LetterId, std::uint64_t>& counts) {
                return SampleProfile::from_counts(counts);
            },
            py::arg("counts"))
        .def_property_readonly("n", &SampleProfile::n)
        .def_property_readonly("distinct_letters", &SampleProfile::distinct_letters)
        .def("letter_count", &SampleProfile::letter_count, py::arg("letter"))
        .def("occupancy", &SampleProfile::occupancy, py::arg("r"))
        .def("occupancy_map",
             [](const SampleProfile& p) {
                 return std::map<std::uint64_t, std::uint64_t>(p.occupancy_map());
             })
        .def("__repr__", [](const SampleProfile& p) {
            return "SampleProfile(n=" + std::to_string(p.n()) +
                   ", distinct=" + std::to_string(p.distinct_letters()) + ")";
        });

    m.def("turing_estimate", &turing_estimate, py::arg("profile"), py::arg("r"));
    m.def("modified_turing_estimate", &modified_turing_estimate, py::arg("profile"),
          py::arg("r"));
    m.def("sd_estimate", &sd_estimate, py::arg("profile"), py::arg("r"));

    py::class_<Interval>(m, "Interval")
        .def_readonly("lower", &Interval::lower)
        .def_readonly("upper", &Interval::upper)
        .def_property_readonly(
            "method", [](const Interval& ci) { return std::string(method_name(ci.method)); })
        .def_readonly("degenerate_point", &Interval::degenerate_point)
        .def_readonly("clipped_low", &Interval::clipped_low)
        .def_readonly("clipped_high", &Interval::clipped_high)
        .def_property_readonly("chosen_method",
                               [](const Interval& ci) -> py::object {
                                   if (!ci.chosen_method) return py::none();
                                   return py::str(method_name(*ci.chosen_method));
                               })
        .def_readonly("unclipped_lower", &Interval::unclipped_lower)
        .def_readonly("unclipped_upper", &Interval::unclipped_upper)
        .def("width", &Interval::width)
        .def("contains", &Interval::contains, py::arg("value"))
        .def("__repr__", [](const Interval& ci) {
            return "Interval(" + format_float(ci.lower) + ", " + format_float(ci.upper) +
                   ", method=" + method_name(ci.method) + ")";
        });

    m.def(
        "normal_ci",
        [](double T, double s_hat, std::uint64_t n, double alpha) {
            return normal_ci(T, s_hat, n, alpha);
        },
        py::arg("T"), py::arg("s_hat"), py::arg("n"), py::arg("alpha") = 0.05);
    m.def(
        "normal_ratio_ci",
        [](double T, double s_hat, std::uint64_t n, double alpha) {
            return normal_ratio_ci(T, s_hat, n, alpha);
        },
        py::arg("T"), py::arg("s_hat"), py::arg("n"), py::arg("alpha") = 0.05);
    m.def(
        "poisson_ci",
        [](double T, std::uint64_t n, std::uint64_t r, double alpha) {
            return poisson_ci(T, n, r, alpha);
        },
        py::arg("T"), py::arg("n"), py::arg("r"), py::arg("alpha") = 0.05);
    m.def(
        "esty_ci",
        [](double T, double s_hat, std::uint64_t N_next, std::uint64_t n, double alpha) {
            return esty_ci(T, s_hat, N_next, n, alpha);
        },
        py::arg("T"), py::arg("s_hat"), py::arg("N_next"), py::arg("n"),
        py::arg("alpha") = 0.05);
    m.def(
        "heuristic_ci",
        [](double T, double s_hat, std::uint64_t n, std::uint64_t r, double alpha,
           double V) { return heuristic_ci(T, s_hat, n, r, CIConfig{alpha, V}); },
        py::arg("T"), py::arg("s_hat"), py::arg("n"), py::arg("r"),
        py::arg("alpha") = 0.05, py::arg("V") = 2.0);
    m.def("confidence_interval", &build_from_profile, py::arg("profile"), py::arg("r"),
          py::arg("method"), py::arg("alpha") = 0.05, py::arg("V") = 2.0,
          "Build a CI for pi_{r,n} directly from a sample profile.");

    m.def("normal_quantile", &normal_quantile, py::arg("p"));
    m.def("normal_cdf", &normal_cdf, py::arg("x"));
    m.def("chi_squared_quantile", &chi_squared_quantile, py::arg("p"), py::arg("df"));
    m.def("chi_squared_cdf", &chi_squared_cdf, py::arg("x"), py::arg("df"));

    m.def(
        "pmf",
        [](const std::string& dist, std::uint64_t n, std::uint64_t letter) {
            return pmf(parse_distribution(dist), n, letter);
        },
        py::arg("dist"), py::arg("n"), py::arg("letter"));
    m.def(
        "draw_sample",
        [](const std::string& dist, std::uint64_t n, std::uint64_t seed,
           std::uint64_t stream) {
            return draw_sample(parse_distribution(dist), n, RngStream{seed, stream});
        },
        py::arg("dist"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
    m.def(
        "true_occupancy_probability",
        [](const std::string& dist, std::uint64_t n, const SampleProfile& profile,
           std::uint64_t r) {
            return true_occupancy_probability(parse_distribution(dist), n, profile, r);
        },
        py::arg("dist"), py::arg("n"), py::arg("profile"), py::arg("r"));
    m.def(
        "true_asymptotic_sd",
        [](const std::string& dist, std::uint64_t n, std::uint64_t r) {
            return true_asymptotic_sd(parse_distribution(dist), n, r);
        },
        py::arg("dist"), py::arg("n"), py::arg("r"));
    m.def(
        "analytic_bias",
        [](const std::string& dist, std::uint64_t n, std::uint64_t r, bool modified) {
            return analytic_bias(parse_distribution(dist), n, r, modified);
        },
        py::arg("dist"), py::arg("n"), py::arg("r"), py::arg("modified") = false);
    m.def(
        "lindeberg_statistic",
        [](const std::string& dist, std::uint64_t n, std::uint64_t r, double eps) {
            return lindeberg_statistic(parse_distribution(dist), n, r, eps);
        },
        py::arg("dist"), py::arg("n"), py::arg("r"), py::arg("eps"));

    m.def(
        "classify_regime",
        [](const std::string& dist, std::uint64_t r) {
            AsymptoticRegime regime = classify_regime(parse_distribution(dist), r);
            py::dict out;
            out["classification"] = regime_name(regime.classification);
            if (regime.classification == RegimeClass::Poisson) {
                out["poisson_mean"] = regime.poisson_mean;
            }
            return out;
        },
        py::arg("dist"), py::arg("r"));

    m.def(
        "run_experiment",
        [](const std::string& dist, const std::vector<std::uint64_t>& n_grid,
           const std::vector<std::uint64_t>& r_values,
           const std::vector<std::string>& methods, std::uint64_t replications,
           double alpha, double V, std::uint64_t seed, unsigned workers) {
            ExperimentConfig config;
            config.spec = parse_distribution(dist);
            config.n_grid = n_grid;
            config.r_values = r_values;
            config.methods.clear();
            for (const std::string& name : methods) {
                config.methods.push_back(parse_method(name));
            }
            config.replications = replications;
            config.alpha = alpha;
            config.V = V;
            config.master_seed = seed;
            config.workers = workers;
            return run_experiment(config);
        },
        py::arg("dist"), py::arg("n_grid"),
        py::arg("r_values") = std::vector<std::uint64_t>{0, 1, 2, 3},
        py::arg("methods") = std::vector<std::string>{"normal", "poisson", "heuristic"},
        py::arg("replications") = 5000, py::arg("alpha") = 0.05, py::arg("V") = 2.0,
        py::arg("seed") = 0, py::arg("workers") = 1,
        "Run a coverage study and return the CSV document.");

    m.def(
        "attribute",
        [](const std::string& corpus_text, const std::string& testing_text,
           std::uint64_t R, const std::string& method, double alpha) {
            AttributionReport report =
                attribute(corpus_text, testing_text, R, parse_method(method), alpha);
            py::list rows;
            for (const auto& row : report.rows) {
                py::dict d;
                d["r"] = row.r;
                d["D"] = row.D;
                d["lower"] = row.interval.lower;
                d["upper"] = row.interval.upper;
                d["inside"] = row.inside;
                rows.append(std::move(d));
            }
            py::dict out;
            out["n1"] = report.n1;
            out["n2"] = report.n2;
            out["R"] = report.R;
            out["method"] = method_name(report.method);
            out["alpha"] = report.alpha;
            out["rows"] = std::move(rows);
            out["fraction_inside_excluding_r0"] = report.fraction_inside_excluding_r0;
            return out;
        },
        py::arg("corpus_text"), py::arg("testing_text"), py::arg("R") = 20,
        py::arg("method") = "normal", py::arg("alpha") = 0.05);
}
