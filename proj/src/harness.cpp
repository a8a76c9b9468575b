#include "turingci/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "turingci/count_table.hpp"

namespace turingci {

double ReplicationSummary::sd_hat(std::uint64_t r) const {
    double rp1 = static_cast<double>(r + 1);
    double rp2 = static_cast<double>(r + 2);
    double v = rp1 * rp1 * static_cast<double>(occupancy[r + 1]) +
               rp2 * rp1 * static_cast<double>(occupancy[r + 2]);
    return std::sqrt(v);
}

RngStream cell_stream(std::uint64_t master_seed, std::uint64_t n,
                      std::uint64_t replication) {
    std::uint64_t s = master_seed ^ (n * 0x9E3779B97F4A7C15ull);
    return RngStream{splitmix64(s), replication};
}

namespace {

// Dense counting is used for uniform supports that fit comfortably in
// memory; everything else goes through the open-addressing table.
constexpr std::uint64_t kDenseLimit = 1ull << 24;

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double term) {
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

ReplicationSummary simulate_replication(const DistributionSpec& spec,
                                        std::uint64_t n, std::uint64_t max_r,
                                        const RngStream& rng) {
    if (n < 1) throw std::domain_error("simulate_replication: n must be >= 1");
    ResolvedDistribution d = resolve(spec, n);
    auto engine = rng.make_engine();

    ReplicationSummary out;
    out.n = n;
    out.occupancy.assign(max_r + 3, 0);
    out.pi.assign(max_r + 1, 0.0);

    if (d.kind == ResolvedDistribution::Kind::Uniform && d.K <= kDenseLimit) {
        std::vector<std::uint32_t> counts(d.K, 0);
        for (std::uint64_t i = 0; i < n; ++i) {
            ++counts[d.draw(uniform_open01(engine)) - 1];
        }
        double unit = 1.0 / static_cast<double>(d.K);
        std::uint64_t distinct = 0;
        for (std::uint64_t l = 0; l < d.K; ++l) {
            std::uint64_t y = counts[l];
            if (y == 0) continue;
            ++distinct;
            if (y <= max_r + 2) ++out.occupancy[y];
            if (y <= max_r) out.pi[y] += unit;
        }
        out.pi[0] = 1.0 - static_cast<double>(distinct) * unit;
        if (out.pi[0] < 0.0) out.pi[0] = 0.0;
        return out;
    }

    Kahan observed_mass;
    CountTable table(n < (1ull << 22) ? n : (1ull << 22));
    for (std::uint64_t i = 0; i < n; ++i) {
        table.increment(d.draw(uniform_open01(engine)));
    }
    table.for_each([&](std::uint64_t letter, std::uint32_t y) {
        double prob = d.pmf(letter);
        observed_mass.add(prob);
        if (y <= max_r + 2) ++out.occupancy[y];
        if (y <= max_r) out.pi[y] += prob;
    });
    out.pi[0] = 1.0 - observed_mass.sum;
    if (out.pi[0] < 0.0) out.pi[0] = 0.0;
    return out;
}

namespace {

Interval build_interval(CIMethod method, const ReplicationSummary& rep,
                        std::uint64_t r, double alpha, double V) {
    double T = rep.turing(r);
    double s_hat = rep.sd_hat(r);
    switch (method) {
        case CIMethod::Normal:
            return normal_ci(T, s_hat, rep.n, alpha);
        case CIMethod::NormalRatio:
            return normal_ratio_ci(T, s_hat, rep.n, alpha);
        case CIMethod::Poisson:
            return poisson_ci(T, rep.n, r, alpha);
        case CIMethod::Esty:
            return esty_ci(T, s_hat, rep.occupancy[r + 1], rep.n, alpha);
        case CIMethod::Heuristic:
            return heuristic_ci(T, s_hat, rep.n, r, CIConfig{alpha, V});
    }
    throw std::logic_error("unreachable CI method");
}

}  // namespace

std::vector<ExperimentRow> run_cell(const DistributionSpec& spec, std::uint64_t n,
                                    const std::vector<std::uint64_t>& r_values,
                                    const std::vector<CIMethod>& methods,
                                    std::uint64_t replications, double alpha,
                                    double V, std::uint64_t master_seed,
                                    unsigned workers) {
    if (replications < 1) throw std::domain_error("run_cell: replications must be >= 1");
    std::uint64_t max_r = 0;
    for (std::uint64_t r : r_values) max_r = std::max(max_r, r);

    const std::size_t cells = r_values.size() * methods.size();
    struct RepRecord {
        double width, width_unclipped;
        std::uint8_t contains, degenerate;
    };
    // Per-replication records, reduced in index order afterwards so the
    // result does not depend on worker scheduling.
    std::vector<RepRecord> records(replications * cells);

    auto run_one = [&](std::uint64_t i) {
        ReplicationSummary rep =
            simulate_replication(spec, n, max_r, cell_stream(master_seed, n, i));
        std::size_t slot = i * cells;
        for (std::uint64_t r : r_values) {
            double pi = rep.pi[r];
            for (CIMethod method : methods) {
                Interval ci = build_interval(method, rep, r, alpha, V);
                records[slot++] = RepRecord{ci.width(), ci.unclipped_width(),
                                            static_cast<std::uint8_t>(ci.contains(pi)),
                                            static_cast<std::uint8_t>(ci.degenerate_point)};
            }
        }
    };

    unsigned nworkers = std::max(1u, workers);
    if (nworkers == 1 || replications < 2) {
        for (std::uint64_t i = 0; i < replications; ++i) run_one(i);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (unsigned w = 0; w < nworkers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::uint64_t i = next.fetch_add(1);
                    if (i >= replications) break;
                    run_one(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<ExperimentRow> rows;
    rows.reserve(cells);
    std::string dist = format_distribution(spec);
    std::size_t cell = 0;
    for (std::uint64_t r : r_values) {
        for (CIMethod method : methods) {
            Kahan width, width_unclipped;
            std::uint64_t covered = 0, degenerate = 0;
            for (std::uint64_t i = 0; i < replications; ++i) {
                const RepRecord& rec = records[i * cells + cell];
                width.add(rec.width);
                width_unclipped.add(rec.width_unclipped);
                covered += rec.contains;
                degenerate += rec.degenerate;
            }
            ExperimentRow row;
            row.dist = dist;
            row.n = n;
            row.r = r;
            row.method = method;
            double N = static_cast<double>(replications);
            row.coverage = static_cast<double>(covered) / N;
            row.mean_width = width.sum / N;
            row.mean_width_unclipped = width_unclipped.sum / N;
            row.degenerate_fraction = static_cast<double>(degenerate) / N;
            row.replications = replications;
            row.seed = master_seed;
            rows.push_back(std::move(row));
            ++cell;
        }
    }
    return rows;
}

std::string format_float(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::string experiment_csv_header() {
    return "dist,n,r,method,coverage,mean_width,mean_width_unclipped,"
           "degenerate_fraction,reps,seed";
}

std::string format_row(const ExperimentRow& row) {
    std::ostringstream os;
    os << row.dist << ',' << row.n << ',' << row.r << ',' << method_name(row.method)
       << ',' << format_float(row.coverage) << ',' << format_float(row.mean_width)
       << ',' << format_float(row.mean_width_unclipped) << ','
       << format_float(row.degenerate_fraction) << ',' << row.replications << ','
       << row.seed;
    return os.str();
}

std::string run_experiment(const ExperimentConfig& config) {
    for (std::size_t i = 1; i < config.n_grid.size(); ++i) {
        if (config.n_grid[i] <= config.n_grid[i - 1]) {
            throw std::domain_error("run_experiment: n_grid must be strictly increasing");
        }
    }
    std::ostringstream os;
    os << "# turingci " << kToolkitVersion << " dist="
       << format_distribution(config.spec) << " alpha=" << format_float(config.alpha)
       << " V=" << format_float(config.V) << " reps=" << config.replications
       << " seed=" << config.master_seed << '\n';
    os << experiment_csv_header() << '\n';
    for (std::uint64_t n : config.n_grid) {
        std::uint64_t reps = config.replications;
        if (config.large_n_replications > 0 && n >= config.large_n_threshold) {
            reps = config.large_n_replications;
        }
        auto rows = run_cell(config.spec, n, config.r_values, config.methods, reps,
                             config.alpha, config.V, config.master_seed,
                             config.workers);
        for (const auto& row : rows) os << format_row(row) << '\n';
    }
    return os.str();
}

}  // namespace turingci
