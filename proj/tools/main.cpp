// turingci command line: simulate | ci | asymptotics | attribute |
// attribute-grid. Every run records its master seed; exit codes are 0 on
// success, 1 on runtime errors, 2 on usage errors.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "turingci/asymptotics.hpp"
#include "turingci/attribution.hpp"
#include "turingci/harness.hpp"
#include "turingci/numerics.hpp"

namespace {

using nlohmann::json;
using namespace turingci;

// --config file.json supplies any long option; explicit flags win.
struct ConfigFile {
    json body = json::object();

    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        in >> body;
        if (!body.is_object()) {
            throw std::runtime_error("config file must hold a JSON object: " + path);
        }
    }

    template <typename T>
    void fill(const CLI::Option* opt, const char* key, T& var) const {
        if (opt != nullptr && opt->count() > 0) return;
        auto it = body.find(key);
        if (it == body.end()) return;
        var = it->get<T>();
    }
};

std::uint64_t parse_count(const std::string& text) {
    double v = std::stod(text);
    double r = std::round(v);
    if (!(r >= 1.0) || std::abs(v - r) > 1e-6 * std::max(1.0, r)) {
        throw std::runtime_error("expected a positive integer, got: " + text);
    }
    return static_cast<std::uint64_t>(r);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
}

// "100,1000,1e6" or log-spaced ranges "1e2:1e6:8"; sorted, deduplicated.
std::vector<std::uint64_t> parse_n_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (const std::string& item : split_commas(text)) {
        auto c1 = item.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_count(item));
            continue;
        }
        auto c2 = item.find(':', c1 + 1);
        if (c2 == std::string::npos) {
            throw std::runtime_error("range must be start:stop:count, got: " + item);
        }
        double lo = std::stod(item.substr(0, c1));
        double hi = std::stod(item.substr(c1 + 1, c2 - c1 - 1));
        std::uint64_t k = parse_count(item.substr(c2 + 1));
        if (!(lo >= 1.0) || !(hi >= lo) || k < 2) {
            throw std::runtime_error("range needs 1 <= start <= stop and count >= 2");
        }
        for (std::uint64_t i = 0; i < k; ++i) {
            double t = static_cast<double>(i) / static_cast<double>(k - 1);
            out.push_back(static_cast<std::uint64_t>(
                std::llround(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))))));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw std::runtime_error("empty n list");
    return out;
}

// "0..3" or "0,2,3".
std::vector<std::uint64_t> parse_r_list(const std::string& text) {
    auto dots = text.find("..");
    std::vector<std::uint64_t> out;
    if (dots != std::string::npos) {
        std::uint64_t lo = std::stoull(text.substr(0, dots));
        std::uint64_t hi = std::stoull(text.substr(dots + 2));
        if (hi < lo) throw std::runtime_error("bad r range: " + text);
        for (std::uint64_t r = lo; r <= hi; ++r) out.push_back(r);
    } else {
        for (const std::string& item : split_commas(text)) {
            out.push_back(std::stoull(item));
        }
    }
    if (out.empty()) throw std::runtime_error("empty r list");
    return out;
}

std::vector<CIMethod> parse_methods(const std::string& text) {
    std::vector<CIMethod> out;
    for (const std::string& item : split_commas(text)) {
        out.push_back(parse_method(item));
    }
    if (out.empty()) throw std::runtime_error("empty method list");
    return out;
}

std::uint64_t resolve_seed(const CLI::Option* opt, const ConfigFile& config,
                           std::uint64_t& seed) {
    config.fill(opt, "seed", seed);
    if (opt->count() == 0 && !config.body.contains("seed")) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        std::cerr << "# seed drawn from entropy: " << seed << "\n";
    }
    return seed;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Interval build_interval(CIMethod method, const SampleProfile& profile,
                        std::uint64_t r, double alpha, double V) {
    double T = turing_estimate(profile, r);
    double s_hat = sd_estimate(profile, r);
    switch (method) {
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

std::string interval_csv_header() {
    return "method,lower,upper,degenerate,clipped_low,clipped_high,chosen_method";
}

std::string interval_csv_row(const Interval& ci) {
    std::ostringstream os;
    os << method_name(ci.method) << ',' << format_float(ci.lower) << ','
       << format_float(ci.upper) << ',' << (ci.degenerate_point ? 1 : 0) << ','
       << (ci.clipped_low ? 1 : 0) << ',' << (ci.clipped_high ? 1 : 0) << ','
       << (ci.chosen_method ? method_name(*ci.chosen_method) : "");
    return os.str();
}

json interval_to_json(const Interval& ci) {
    json j{{"method", method_name(ci.method)},
           {"lower", ci.lower},
           {"upper", ci.upper},
           {"degenerate", ci.degenerate_point},
           {"clipped_low", ci.clipped_low},
           {"clipped_high", ci.clipped_high}};
    if (ci.chosen_method) j["chosen_method"] = method_name(*ci.chosen_method);
    return j;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string dist, n_text, r_text = "0..3", methods_text = "normal,poisson,heuristic";
    std::string out, config_path;
    std::uint64_t reps = 5000, seed = 0, large_n_threshold = 10000000,
                  large_n_reps = 0;
    double alpha = 0.05, V = 2.0;
    unsigned workers = 1;
};

void add_simulate(CLI::App& app, SimulateArgs& a) {
    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo coverage study");
    auto* dist = sim->add_option("--dist", a.dist, "distribution text form");
    auto* n = sim->add_option("--n", a.n_text, "sample sizes: list or start:stop:count");
    auto* r = sim->add_option("--r", a.r_text, "r values, e.g. 0..3 or 0,2");
    auto* methods = sim->add_option("--methods", a.methods_text, "CI methods");
    auto* reps = sim->add_option("--reps", a.reps, "replications per cell");
    auto* alpha = sim->add_option("--alpha", a.alpha, "significance level");
    auto* V = sim->add_option("--V", a.V, "heuristic threshold");
    auto* seed = sim->add_option("--seed", a.seed, "master seed");
    auto* out = sim->add_option("--out", a.out, "output CSV path (default stdout)");
    auto* workers = sim->add_option("--workers", a.workers, "worker threads");
    auto* lthr = sim->add_option("--large-n-threshold", a.large_n_threshold,
                                 "n at which the reduced replication count applies");
    auto* lreps = sim->add_option("--large-n-reps", a.large_n_reps,
                                  "replications for large n (0 = no reduction)");
    sim->add_option("--config", a.config_path, "JSON config file; flags override");

    sim->callback([=, &a] {
        ConfigFile config;
        if (!a.config_path.empty()) config.load(a.config_path);
        config.fill(dist, "dist", a.dist);
        config.fill(n, "n", a.n_text);
        config.fill(r, "r", a.r_text);
        config.fill(methods, "methods", a.methods_text);
        config.fill(reps, "reps", a.reps);
        config.fill(alpha, "alpha", a.alpha);
        config.fill(V, "V", a.V);
        config.fill(out, "out", a.out);
        config.fill(workers, "workers", a.workers);
        config.fill(lthr, "large-n-threshold", a.large_n_threshold);
        config.fill(lreps, "large-n-reps", a.large_n_reps);

        if (a.dist.empty()) throw CLI::RequiredError("--dist");
        if (a.n_text.empty()) throw CLI::RequiredError("--n");

        ExperimentConfig ec;
        ec.spec = parse_distribution(a.dist);
        ec.n_grid = parse_n_list(a.n_text);
        ec.r_values = parse_r_list(a.r_text);
        ec.methods = parse_methods(a.methods_text);
        ec.replications = a.reps;
        ec.alpha = a.alpha;
        ec.V = a.V;
        ec.master_seed = resolve_seed(seed, config, a.seed);
        ec.workers = a.workers;
        ec.large_n_threshold = a.large_n_threshold;
        ec.large_n_replications = a.large_n_reps;
        write_text(a.out, run_experiment(ec));
    });
}

// --- ci ---------------------------------------------------------------------

struct CiArgs {
    std::string sample_path, counts_text, method_text = "normal", config_path;
    std::uint64_t r = 0;
    double alpha = 0.05, V = 2.0;
    bool as_json = false;
};

SampleProfile profile_from_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sample file: " + path);
    std::unordered_map<std::string, LetterId> ids;
    std::unordered_map<LetterId, std::uint64_t> counts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.find_first_of(" \t") != std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected one token per line");
        }
        auto [it, inserted] = ids.emplace(line, ids.size() + 1);
        ++counts[it->second];
    }
    if (counts.empty()) throw std::runtime_error(path + ": no tokens");
    return SampleProfile::from_counts(std::move(counts));
}

SampleProfile profile_from_counts_text(const std::string& text) {
    std::unordered_map<LetterId, std::uint64_t> counts;
    LetterId next = 1;
    std::uint64_t y = 0;
    for (const std::string& item : split_commas(text)) {
        ++y;  // item is N_y
        std::uint64_t N = std::stoull(item);
        for (std::uint64_t i = 0; i < N; ++i) counts[next++] = y;
    }
    if (counts.empty()) throw std::runtime_error("--counts produced an empty sample");
    return SampleProfile::from_counts(std::move(counts));
}

void add_ci(CLI::App& app, CiArgs& a) {
    CLI::App* ci = app.add_subcommand("ci", "one confidence interval from data");
    auto* sample = ci->add_option("--sample", a.sample_path, "file with one token per line");
    auto* counts = ci->add_option("--counts", a.counts_text,
                                  "occupancy counts N_1,N_2,... instead of a sample file");
    auto* r = ci->add_option("--r", a.r, "occupancy level r");
    auto* method = ci->add_option("--method", a.method_text, "CI method");
    auto* alpha = ci->add_option("--alpha", a.alpha, "significance level");
    auto* V = ci->add_option("--V", a.V, "heuristic threshold");
    auto* js = ci->add_flag("--json", a.as_json, "emit JSON instead of CSV");
    ci->add_option("--config", a.config_path, "JSON config file; flags override");

    ci->callback([=, &a] {
        ConfigFile config;
        if (!a.config_path.empty()) config.load(a.config_path);
        config.fill(sample, "sample", a.sample_path);
        config.fill(counts, "counts", a.counts_text);
        config.fill(r, "r", a.r);
        config.fill(method, "method", a.method_text);
        config.fill(alpha, "alpha", a.alpha);
        config.fill(V, "V", a.V);
        config.fill(js, "json", a.as_json);

        if (a.sample_path.empty() == a.counts_text.empty()) {
            throw CLI::ValidationError("ci", "give exactly one of --sample / --counts");
        }
        SampleProfile profile = a.sample_path.empty()
                                    ? profile_from_counts_text(a.counts_text)
                                    : profile_from_sample_file(a.sample_path);
        Interval out =
            build_interval(parse_method(a.method_text), profile, a.r, a.alpha, a.V);
        if (a.as_json) {
            json j = interval_to_json(out);
            j["n"] = profile.n();
            j["r"] = a.r;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << interval_csv_header() << "\n" << interval_csv_row(out) << "\n";
        }
    });
}

// --- asymptotics ------------------------------------------------------------

struct AsymptoticsArgs {
    std::string family = "dunif", n_text, out, config_path;
    double gamma = 1.5, p = 0.5, c = 0.25, beta = 0.5, shape = 1.0;
    std::uint64_t K = 100, r = 0;
};

void add_asymptotics(CLI::App& app, AsymptoticsArgs& a) {
    CLI::App* as = app.add_subcommand("asymptotics", "limit regime and ratio checks");
    auto* family = as->add_option("--family", a.family,
                                  "uniform | dunif | geom | dgeom | pareto");
    auto* gamma = as->add_option("--gamma", a.gamma, "dunif exponent");
    auto* p = as->add_option("--p", a.p, "geom success probability");
    auto* c = as->add_option("--c", a.c, "dgeom scale");
    auto* beta = as->add_option("--beta", a.beta, "dgeom exponent");
    auto* shape = as->add_option("--shape", a.shape, "pareto tail index");
    auto* K = as->add_option("--K", a.K, "uniform support size");
    auto* r = as->add_option("--r", a.r, "occupancy level r");
    auto* n = as->add_option("--n", a.n_text, "sample sizes: list or start:stop:count");
    auto* out = as->add_option("--out", a.out, "output CSV path (default stdout)");
    as->add_option("--config", a.config_path, "JSON config file; flags override");

    as->callback([=, &a] {
        ConfigFile config;
        if (!a.config_path.empty()) config.load(a.config_path);
        config.fill(family, "family", a.family);
        config.fill(gamma, "gamma", a.gamma);
        config.fill(p, "p", a.p);
        config.fill(c, "c", a.c);
        config.fill(beta, "beta", a.beta);
        config.fill(shape, "shape", a.shape);
        config.fill(K, "K", a.K);
        config.fill(r, "r", a.r);
        config.fill(n, "n", a.n_text);
        config.fill(out, "out", a.out);

        DistributionSpec spec;
        if (a.family == "uniform") spec = FixedUniform{a.K};
        else if (a.family == "dunif") spec = DynamicUniform{a.gamma};
        else if (a.family == "geom") spec = FixedGeometric{a.p};
        else if (a.family == "dgeom") spec = DynamicGeometric{a.c, a.beta};
        else if (a.family == "pareto") spec = DiscretePareto{a.shape};
        else throw CLI::ValidationError("asymptotics", "unknown family: " + a.family);

        AsymptoticRegime regime = classify_regime(spec, a.r);
        std::vector<std::uint64_t> n_grid =
            a.n_text.empty() ? std::vector<std::uint64_t>{} : parse_n_list(a.n_text);

        std::ostringstream os;
        os << "# turingci " << kToolkitVersion << " family="
           << format_distribution(spec) << " r=" << a.r << "\n";
        os << "family,r,classification,poisson_mean,n,s_squared,reference,ratio,"
              "bound_lower,bound_upper\n";
        auto prefix = [&] {
            os << format_distribution(spec) << ',' << a.r << ','
               << regime_name(regime.classification) << ','
               << (regime.classification == RegimeClass::Poisson
                       ? format_float(regime.poisson_mean)
                       : std::string());
        };
        if (n_grid.empty()) {
            prefix();
            os << ",,,,,\n";
        }
        for (std::uint64_t nv : n_grid) {
            prefix();
            os << ',' << nv << ',';
            if (a.family == "dunif") {
                double s2 = uniform_s_squared_closed_form(a.gamma, nv, a.r);
                os << format_float(s2) << ',';
                if (a.gamma >= 1.0 && !(a.gamma > 1.0 && a.r == 0)) {
                    double ref = uniform_s_squared_equivalent(a.gamma, nv, a.r);
                    os << format_float(ref) << ',' << format_float(s2 / ref);
                } else {
                    os << ',';
                }
                os << ",,\n";
            } else if (a.family == "geom" || a.family == "dgeom") {
                double an = a.family == "geom"
                                ? geometric_a_from_p(a.p)
                                : a.c * std::pow(static_cast<double>(nv), a.beta);
                double s2 = geometric_s_squared_truncated(an, nv, a.r);
                os << format_float(s2) << ',';
                if (a.family == "dgeom") {
                    // s^2 ~ 2 a_n (r+1) as a_n -> inf with a_n/n -> 0
                    double ref = 2.0 * an * static_cast<double>(a.r + 1);
                    os << format_float(ref) << ',' << format_float(s2 / ref) << ",,\n";
                } else {
                    GeometricBounds b = geometric_bounds(an, a.r);
                    os << ",," << format_float(b.lower) << ','
                       << format_float(b.upper) << "\n";
                }
            } else {
                double s = true_asymptotic_sd(spec, nv, a.r);
                os << format_float(s * s) << ",,,,\n";
            }
        }
        write_text(a.out, os.str());
    });
}

// --- attribute --------------------------------------------------------------

struct AttributeArgs {
    std::string corpus, testing, method_text = "normal", out, config_path;
    std::uint64_t R = 20, seed = 0;
    double alpha = 0.05, V = 2.0;
    bool self_split = false;
};

json report_to_json(const AttributionReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        json j = interval_to_json(row.interval);
        j["r"] = row.r;
        j["D"] = row.D;
        j["inside"] = row.inside;
        rows.push_back(std::move(j));
    }
    return json{{"toolkit_version", kToolkitVersion},
                {"n1", report.n1},
                {"n2", report.n2},
                {"R", report.R},
                {"method", method_name(report.method)},
                {"alpha", report.alpha},
                {"rows", std::move(rows)},
                {"fraction_inside_excluding_r0", report.fraction_inside_excluding_r0}};
}

std::string report_to_csv(const AttributionReport& report) {
    std::ostringstream os;
    os << "# turingci " << kToolkitVersion << " n1=" << report.n1
       << " n2=" << report.n2 << " R=" << report.R << " method="
       << method_name(report.method) << " alpha=" << format_float(report.alpha)
       << " fraction_inside_excluding_r0="
       << format_float(report.fraction_inside_excluding_r0) << "\n";
    os << "r,D_r,lower,upper,inside\n";
    for (const auto& row : report.rows) {
        os << row.r << ',' << format_float(row.D) << ','
           << format_float(row.interval.lower) << ','
           << format_float(row.interval.upper) << ',' << (row.inside ? 1 : 0)
           << "\n";
    }
    return os.str();
}

bool wants_json(const std::string& path) {
    return path.size() >= 5 && path.ends_with(".json");
}

void add_attribute(CLI::App& app, AttributeArgs& a) {
    CLI::App* at = app.add_subcommand("attribute", "detecting points vs corpus CIs");
    auto* corpus = at->add_option("--corpus", a.corpus, "corpus text file");
    auto* testing = at->add_option("--testing", a.testing, "testing text file");
    auto* R = at->add_option("--R", a.R, "largest occupancy level");
    auto* method = at->add_option("--method", a.method_text, "CI method");
    auto* alpha = at->add_option("--alpha", a.alpha, "significance level");
    auto* V = at->add_option("--V", a.V, "heuristic threshold");
    auto* self = at->add_flag("--self-split", a.self_split,
                              "split the corpus file into corpus/testing halves");
    auto* seed = at->add_option("--seed", a.seed, "split seed (with --self-split)");
    auto* out = at->add_option("--out", a.out, "output path (.json or .csv; default stdout CSV)");
    at->add_option("--config", a.config_path, "JSON config file; flags override");

    at->callback([=, &a] {
        ConfigFile config;
        if (!a.config_path.empty()) config.load(a.config_path);
        config.fill(corpus, "corpus", a.corpus);
        config.fill(testing, "testing", a.testing);
        config.fill(R, "R", a.R);
        config.fill(method, "method", a.method_text);
        config.fill(alpha, "alpha", a.alpha);
        config.fill(V, "V", a.V);
        config.fill(self, "self-split", a.self_split);
        config.fill(out, "out", a.out);

        if (a.corpus.empty()) throw CLI::RequiredError("--corpus");
        if (!a.self_split && a.testing.empty()) {
            throw CLI::ValidationError("attribute",
                                       "need --testing unless --self-split is set");
        }

        WordTable table;
        AttributionReport report;
        CIMethod m = parse_method(a.method_text);
        if (a.self_split) {
            auto words = tokenize(read_file(a.corpus), TokenizerOptions{}, table);
            auto [left, right] =
                split_sample(words, RngStream{resolve_seed(seed, config, a.seed), 0});
            report = attribute_tokens(left, right, a.R, m, a.alpha, a.V);
        } else {
            auto corpus_words = tokenize(read_file(a.corpus), TokenizerOptions{}, table);
            auto testing_words = tokenize(read_file(a.testing), TokenizerOptions{}, table);
            report = attribute_tokens(corpus_words, testing_words, a.R, m, a.alpha, a.V);
        }
        if (wants_json(a.out)) {
            write_text(a.out, report_to_json(report).dump(2) + "\n");
        } else {
            write_text(a.out, report_to_csv(report));
        }
    });
}

// --- attribute-grid ---------------------------------------------------------

struct GridArgs {
    std::string inputs_text, method_text = "normal", out_dir, config_path;
    std::uint64_t R = 20, seed = 0;
    double alpha = 0.05, V = 2.0;
    bool as_json = false;
};

void add_attribute_grid(CLI::App& app, GridArgs& a) {
    CLI::App* grid =
        app.add_subcommand("attribute-grid", "pairwise attribution matrix");
    auto* inputs = grid->add_option("--inputs", a.inputs_text, "comma list of text files");
    auto* R = grid->add_option("--R", a.R, "largest occupancy level");
    auto* method = grid->add_option("--method", a.method_text, "CI method");
    auto* alpha = grid->add_option("--alpha", a.alpha, "significance level");
    auto* V = grid->add_option("--V", a.V, "heuristic threshold");
    auto* seed = grid->add_option("--seed", a.seed, "seed for diagonal self-splits");
    auto* js = grid->add_flag("--json", a.as_json, "per-pair JSON instead of CSV");
    auto* out = grid->add_option("--out", a.out_dir, "output directory");
    grid->add_option("--config", a.config_path, "JSON config file; flags override");

    grid->callback([=, &a] {
        ConfigFile config;
        if (!a.config_path.empty()) config.load(a.config_path);
        config.fill(inputs, "inputs", a.inputs_text);
        config.fill(R, "R", a.R);
        config.fill(method, "method", a.method_text);
        config.fill(alpha, "alpha", a.alpha);
        config.fill(V, "V", a.V);
        config.fill(js, "json", a.as_json);
        config.fill(out, "out", a.out_dir);

        if (a.inputs_text.empty()) throw CLI::RequiredError("--inputs");
        if (a.out_dir.empty()) throw CLI::RequiredError("--out");
        std::vector<std::string> paths = split_commas(a.inputs_text);
        if (paths.size() < 2) {
            throw CLI::ValidationError("attribute-grid", "need at least two inputs");
        }
        std::uint64_t master = resolve_seed(seed, config, a.seed);
        std::filesystem::create_directories(a.out_dir);
        CIMethod m = parse_method(a.method_text);

        WordTable table;
        std::vector<std::vector<LetterId>> token_lists;
        std::vector<std::string> stems;
        token_lists.reserve(paths.size());
        for (const std::string& path : paths) {
            token_lists.push_back(tokenize(read_file(path), TokenizerOptions{}, table));
            stems.push_back(std::filesystem::path(path).stem().string());
        }

        std::ostringstream summary;
        summary << "corpus,testing,fraction_inside_excluding_r0\n";
        for (std::size_t i = 0; i < paths.size(); ++i) {
            for (std::size_t j = 0; j < paths.size(); ++j) {
                AttributionReport report;
                if (i == j) {
                    auto [left, right] =
                        split_sample(token_lists[i], RngStream{master, i});
                    report = attribute_tokens(left, right, a.R, m, a.alpha, a.V);
                } else {
                    report = attribute_tokens(token_lists[i], token_lists[j], a.R, m,
                                              a.alpha, a.V);
                }
                std::string name = stems[i] + "__" + stems[j] +
                                   (a.as_json ? ".json" : ".csv");
                std::string path = (std::filesystem::path(a.out_dir) / name).string();
                if (a.as_json) {
                    write_text(path, report_to_json(report).dump(2) + "\n");
                } else {
                    write_text(path, report_to_csv(report));
                }
                summary << stems[i] << ',' << stems[j] << ','
                        << format_float(report.fraction_inside_excluding_r0) << "\n";
            }
        }
        write_text((std::filesystem::path(a.out_dir) / "summary.csv").string(),
                   summary.str());
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Occupancy-probability confidence intervals from Turing's estimator"};
    app.set_version_flag("--version", std::string("turingci ") + kToolkitVersion +
                                          " (csv format 1)");
    app.require_subcommand(0, 1);

    SimulateArgs sim;
    CiArgs ci;
    AsymptoticsArgs as;
    AttributeArgs at;
    GridArgs grid;
    add_simulate(app, sim);
    add_ci(app, ci);
    add_asymptotics(app, as);
    add_attribute(app, at);
    add_attribute_grid(app, grid);

    try {
        app.parse(argc, argv);
        if (app.get_subcommands().empty()) {
            std::cout << app.help();
            return 2;
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
