#pragma once

// Monte Carlo coverage study: draws replications, builds occupancy
// summaries, applies the CI constructors, and aggregates coverage and
// width statistics into CSV rows. Output is deterministic in
// (config, master_seed) irrespective of the worker count.

#include <cstdint>
#include <string>
#include <vector>

#include "turingci/distributions.hpp"
#include "turingci/intervals.hpp"

namespace turingci {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Occupancy counts and true occupancy probabilities for one replication.
// occupancy[y] = N_{y,n} for y = 1..max_r+2; pi[r] for r = 0..max_r.
struct ReplicationSummary {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> occupancy;
    std::vector<double> pi;

    double turing(std::uint64_t r) const {
        return static_cast<double>(r + 1) * static_cast<double>(occupancy[r + 1]) /
               static_cast<double>(n);
    }
    double sd_hat(std::uint64_t r) const;
};

// Draws one sample of size n from resolve(spec, n) and summarizes it for
// all r <= max_r. Uses dense counts for small uniform supports and a hash
// table otherwise; the per-letter map is discarded before returning.
ReplicationSummary simulate_replication(const DistributionSpec& spec,
                                        std::uint64_t n, std::uint64_t max_r,
                                        const RngStream& rng);

// Stream seed used for replication i of the cell (spec, n). All r values
// and methods share the replication's sample.
RngStream cell_stream(std::uint64_t master_seed, std::uint64_t n,
                      std::uint64_t replication);

struct ExperimentConfig {
    DistributionSpec spec;
    std::vector<std::uint64_t> n_grid;           // strictly increasing
    std::vector<std::uint64_t> r_values{0, 1, 2, 3};
    std::vector<CIMethod> methods{CIMethod::Normal, CIMethod::Poisson,
                                  CIMethod::Heuristic};
    std::uint64_t replications = 5000;
    double alpha = 0.05;
    double V = 2.0;
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
    // Cells with n >= large_n_threshold run with large_n_replications
    // instead (0 disables the reduction).
    std::uint64_t large_n_threshold = 10000000;
    std::uint64_t large_n_replications = 0;
};

struct ExperimentRow {
    std::string dist;
    std::uint64_t n = 0;
    std::uint64_t r = 0;
    CIMethod method = CIMethod::Normal;
    double coverage = 0.0;
    double mean_width = 0.0;
    double mean_width_unclipped = 0.0;
    double degenerate_fraction = 0.0;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
};

// Runs all replications for one (spec, n) cell and aggregates one row per
// (r, method), ordered by (r, method).
std::vector<ExperimentRow> run_cell(const DistributionSpec& spec, std::uint64_t n,
                                    const std::vector<std::uint64_t>& r_values,
                                    const std::vector<CIMethod>& methods,
                                    std::uint64_t replications, double alpha,
                                    double V, std::uint64_t master_seed,
                                    unsigned workers = 1);

// Full grid; returns the CSV document (header plus one row per
// (n, r, method), ordered by (n, r, method)).
std::string run_experiment(const ExperimentConfig& config);

std::string experiment_csv_header();
std::string format_row(const ExperimentRow& row);

// Formats a double with 9 significant digits (the CSV serialization rule).
std::string format_float(double value);

}  // namespace turingci
