#include "pnm/app/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "pnm/error.hpp"
#include "pnm/estimate.hpp"
#include "pnm/generate.hpp"
#include "pnm/random.hpp"
#include "pnm/sigma.hpp"

namespace pnm::app {

namespace {

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string format_optional(const std::optional<double>& x) {
    return x ? format_double(*x) : std::string();
}

std::string deterministic_line(const ExperimentRow& row) {
    std::string line;
    line += std::to_string(row.n) + ',' + std::to_string(row.rep) + ',' + std::to_string(row.seed) + ',';
    line += format_optional(row.max_abs_error) + ',' + format_optional(row.mean_abs_error) + ',';
    line += std::to_string(row.iterations) + ',' + (row.converged ? "true" : "false") + ',';
    line += format_optional(row.sigma_hat) + ',' + format_double(row.q_true);
    return line;
}

constexpr const char* deterministic_header =
    "n,rep,seed,max_abs_error,mean_abs_error,iterations,converged,sigma_hat,q_true";

std::optional<double> median(std::vector<double> v) {
    if (v.empty()) {
        return std::nullopt;
    }
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

ExperimentRow run_replication(const ExperimentConfig& cfg, const LatentCovariance& cov, std::size_t n, int rep) {
    const auto start = std::chrono::steady_clock::now();
    const RandomStream stream = replication_stream(cfg.master_seed, n, static_cast<std::uint64_t>(rep));
    RandomStream alpha_rng = stream.split(1);
    RandomStream graph_rng = stream.split(2);

    ExperimentRow row;
    row.n = n;
    row.rep = rep;
    row.seed = stream.key();

    try {
        const std::vector<double> truth = cfg.alpha_gen.draw(n, alpha_rng);
        row.q_true = max_pair_sum(truth);
        const Graph graph = generate_graph(NodeParams{truth}, cov, graph_rng);
        const FitReport fit = fit_alpha(graph.degree_targets(), cfg.fit);
        double worst = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double err = std::abs(fit.alpha_hat[i] - truth[i]);
            worst = std::max(worst, err);
            total += err;
        }
        row.max_abs_error = worst;
        row.mean_abs_error = total / static_cast<double>(n);
        row.iterations = fit.iterations;
        row.converged = fit.converged;
        if (cfg.estimate_sigma) {
            try {
                row.sigma_hat = estimate_sigma_common(graph, fit.alpha_hat);
            } catch (const Error& e) {
                row.error = std::string(to_string(e.code()));
            }
        }
    } catch (const Error& e) {
        row.converged = false;
        row.error = std::string(to_string(e.code()));
    }
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    std::vector<LatentCovariance> covs;
    covs.reserve(cfg.n_list.size());
    for (std::size_t n : cfg.n_list) {
        covs.push_back(validate(cfg.covariance.build(n), n));
    }

    const std::size_t reps = static_cast<std::size_t>(cfg.replications);
    const std::size_t total = cfg.n_list.size() * reps;
    std::vector<ExperimentRow> rows(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t job = next++; job < total; job = next++) {
            const std::size_t k = job / reps;
            const int rep = static_cast<int>(job % reps);
            try {
                rows[job] = run_replication(cfg, covs[k], cfg.n_list[k], rep);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };

    const unsigned threads = std::max(1u, cfg.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    ExperimentResult result;
    result.summary = summarize(rows);
    result.rows = std::move(rows);
    return result;
}

ExperimentSummary summarize(const std::vector<ExperimentRow>& rows) {
    ExperimentSummary summary;
    std::vector<std::size_t> sizes;
    for (const auto& row : rows) {
        if (std::find(sizes.begin(), sizes.end(), row.n) == sizes.end()) {
            sizes.push_back(row.n);
        }
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t n : sizes) {
        SizeSummary s;
        s.n = n;
        std::vector<double> max_err;
        std::vector<double> mean_err;
        std::vector<double> sigma;
        for (const auto& row : rows) {
            if (row.n != n) {
                continue;
            }
            if (row.converged && row.max_abs_error) {
                ++s.converged;
                max_err.push_back(*row.max_abs_error);
                mean_err.push_back(*row.mean_abs_error);
            }
            if (row.sigma_hat) {
                sigma.push_back(*row.sigma_hat);
            }
        }
        s.median_max_abs_error = median(max_err);
        s.median_mean_abs_error = median(mean_err);
        s.median_sigma_hat = median(sigma);
        if (s.median_max_abs_error && *s.median_max_abs_error > 0.0) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(*s.median_max_abs_error);
        }
        summary.per_n.push_back(s);
    }
    summary.loglog_slope = loglog_slope(xs, ys);
    return summary;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        return std::nullopt;
    }
    const double k = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= k;
    my /= k;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) {
        return std::nullopt;
    }
    return sxy / sxx;
}

std::uint64_t deterministic_digest(const std::vector<ExperimentRow>& rows) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= static_cast<unsigned char>('\n');
        h *= 0x100000001b3ULL;
    };
    feed(deterministic_header);
    for (const auto& row : rows) {
        feed(deterministic_line(row) + ',' + row.error);
    }
    return h;
}

std::string format_csv(const std::vector<ExperimentRow>& rows) {
    std::string out = "n,rep,seed,max_abs_error,mean_abs_error,iterations,converged,sigma_hat,q_true,runtime_ms,error\n";
    for (const auto& row : rows) {
        char runtime[32];
        std::snprintf(runtime, sizeof(runtime), "%.3f", row.runtime_ms);
        out += deterministic_line(row) + ',' + runtime + ',' + row.error + '\n';
    }
    char digest[64];
    std::snprintf(digest, sizeof(digest), "# digest fnv1a64=%016llx\n",
                  static_cast<unsigned long long>(deterministic_digest(rows)));
    out += digest;
    return out;
}

nlohmann::json summary_json(const ExperimentSummary& summary) {
    using nlohmann::json;
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json per_n = json::array();
    for (const auto& s : summary.per_n) {
        per_n.push_back({
            {"n", s.n},
            {"converged", s.converged},
            {"median_max_abs_error", opt(s.median_max_abs_error)},
            {"median_mean_abs_error", opt(s.median_mean_abs_error)},
            {"median_sigma_hat", opt(s.median_sigma_hat)},
        });
    }
    return {{"per_n", per_n}, {"loglog_slope", opt(summary.loglog_slope)}};
}

}  // namespace pnm::app
