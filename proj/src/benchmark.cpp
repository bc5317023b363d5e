#include "perigp/benchmark.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "perigp/cosopt.hpp"
#include "perigp/csv.hpp"
#include "perigp/dataset.hpp"
#include "perigp/errors.hpp"
#include "perigp/gp.hpp"
#include "perigp/hyperfit.hpp"
#include "perigp/rng.hpp"

namespace perigp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double frac(double t) { return t - std::floor(t); }

double fn_cos(double t) { return std::cos(kTwoPi * t); }
double fn_sumcos(double t) { return 0.5 * (std::cos(kTwoPi * t) + std::cos(2.0 * kTwoPi * t)); }
double fn_square(double t) { return frac(t) < 0.5 ? 1.0 : -1.0; }
// Unit-amplitude triangle wave peaking at integer t, like the cosine.
double fn_triangle(double t) { return 4.0 * std::abs(frac(t) - 0.5) - 1.0; }
// Rising sawtooth on each unit interval.
double fn_diag(double t) { return 2.0 * frac(t) - 1.0; }
double fn_zero(double) { return 0.0; }

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

double rmse(const Eigen::VectorXd& pred, const std::vector<double>& truth) {
    double ss = 0.0;
    for (Eigen::Index i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - truth[static_cast<std::size_t>(i)];
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(pred.size()));
}
}  // namespace

const std::vector<TestFunction>& benchmark_functions() {
    static const std::vector<TestFunction> fns = {
        {"cos", fn_cos, 0.1},      {"sumcos", fn_sumcos, 0.1}, {"square", fn_square, 0.1},
        {"triangle", fn_triangle, 0.1}, {"diag", fn_diag, 0.1},    {"noise", fn_zero, 1.0},
    };
    return fns;
}

std::string BenchmarkModel::name() const {
    if (kind == Kind::cosopt) return "cosopt";
    switch (nu) {
        case Nu::half: return "gp12";
        case Nu::three_halves: return "gp32";
        case Nu::five_halves: return "gp52";
    }
    return "gp";
}

std::vector<BenchmarkModel> parse_benchmark_models(const std::string& csv_list) {
    std::vector<BenchmarkModel> models;
    std::size_t pos = 0;
    while (pos <= csv_list.size()) {
        std::size_t comma = csv_list.find(',', pos);
        if (comma == std::string::npos) comma = csv_list.size();
        std::string token = csv_list.substr(pos, comma - pos);
        pos = comma + 1;
        // Trim surrounding blanks.
        while (!token.empty() && token.front() == ' ') token.erase(token.begin());
        while (!token.empty() && token.back() == ' ') token.pop_back();
        if (token.empty()) continue;
        BenchmarkModel m;
        if (token == "cosopt") {
            m.kind = BenchmarkModel::Kind::cosopt;
        } else if (token == "gp12" || token == "gp32" || token == "gp52") {
            m.kind = BenchmarkModel::Kind::gp;
            m.nu = token == "gp12" ? Nu::half
                                   : (token == "gp32" ? Nu::three_halves : Nu::five_halves);
        } else {
            throw ConfigError("unknown benchmark model '" + token +
                              "' (expected cosopt, gp12, gp32 or gp52)");
        }
        models.push_back(m);
    }
    if (models.empty()) throw ConfigError("benchmark: empty model list");
    return models;
}

void BenchmarkOptions::validate() const {
    if (n_repeats < 1) throw ConfigError("benchmark: n_repeats must be >= 1");
    if (n_train < 4) throw ConfigError("benchmark: n_train must be >= 4");
    if (n_test < 2) throw ConfigError("benchmark: n_test must be >= 2");
    if (threads < 1) throw ConfigError("benchmark: threads must be >= 1");
}

namespace {
double score_model(const BenchmarkModel& model, const Dataset& data,
                   const std::vector<double>& test_grid, const std::vector<double>& truth,
                   std::uint64_t fit_seed) {
    if (model.kind == BenchmarkModel::Kind::cosopt) {
        const CosoptModel fit = cosopt_fit(data);
        Eigen::VectorXd pred(static_cast<Eigen::Index>(test_grid.size()));
        for (std::size_t i = 0; i < test_grid.size(); ++i)
            pred[static_cast<Eigen::Index>(i)] = cosopt_eval(fit, test_grid[i]);
        return rmse(pred, truth);
    }

    CompositeKernelSpec tmpl;
    tmpl.trend = true;
    tmpl.trend_slope = false;
    tmpl.periodic = CompositeKernelSpec::PeriodicPart{
        MaternSpec(model.nu, 1.0, 1.0), FourierBasis(model.q, 1.0)};
    FitConfig cfg = benchmark_profile(data);
    cfg.seed = fit_seed;
    const FitResult fit = fit_hyperparameters(data, tmpl, cfg);
    const GpPosterior posterior(fit.scoring_spec, data);
    return rmse(posterior.mean_on(test_grid), truth);
}
}  // namespace

std::vector<BenchmarkCell> run_benchmark(const std::vector<BenchmarkModel>& models,
                                         const BenchmarkOptions& options,
                                         std::ostream* progress) {
    options.validate();
    if (models.empty()) throw ConfigError("benchmark: empty model list");
    const auto& fns = benchmark_functions();
    const std::vector<double> train_grid = linspace(0.0, 3.0, options.n_train);
    const std::vector<double> test_grid = linspace(0.0, 3.0, options.n_test);

    struct Job {
        std::size_t fn_idx;
        int repeat;
    };
    std::vector<Job> jobs;
    jobs.reserve(fns.size() * static_cast<std::size_t>(options.n_repeats));
    for (std::size_t f = 0; f < fns.size(); ++f)
        for (int r = 0; r < options.n_repeats; ++r) jobs.push_back({f, r});

    // results[job][model] = rmse (NaN when the fit failed).
    std::vector<std::vector<double>> results(
        jobs.size(),
        std::vector<double>(models.size(), std::numeric_limits<double>::quiet_NaN()));

    std::atomic<std::size_t> next{0};
    std::mutex progress_mutex;
    const auto worker = [&]() {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            const Job job = jobs[j];
            const TestFunction& fn = fns[job.fn_idx];

            std::vector<double> truth(test_grid.size());
            for (std::size_t i = 0; i < test_grid.size(); ++i) truth[i] = fn.truth(test_grid[i]);

            const std::uint64_t data_seed = mix_seed(
                mix_seed(options.seed, fnv1a64(fn.name)), static_cast<std::uint64_t>(job.repeat));
            Rng rng(data_seed);
            const double sd = std::sqrt(fn.noise_variance);
            std::vector<double> y(train_grid.size());
            for (std::size_t i = 0; i < train_grid.size(); ++i)
                y[i] = fn.truth(train_grid[i]) + sd * rng.normal();
            const Dataset data(train_grid, y, fn.name + "_rep" + std::to_string(job.repeat));

            for (std::size_t m = 0; m < models.size(); ++m) {
                const std::uint64_t fit_seed = mix_seed(data_seed, fnv1a64(models[m].name()));
                try {
                    results[j][m] = score_model(models[m], data, test_grid, truth, fit_seed);
                } catch (const Error&) {
                    // Recorded as NaN; the cell aggregates over what succeeded.
                }
            }
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                *progress << "[benchmark] " << fn.name << " repeat " << (job.repeat + 1) << "/"
                          << options.n_repeats << " done\n";
                progress->flush();
            }
        }
    };

    if (options.threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(options.threads));
        for (int i = 0; i < options.threads; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::vector<BenchmarkCell> cells;
    cells.reserve(fns.size() * models.size());
    for (std::size_t f = 0; f < fns.size(); ++f) {
        for (std::size_t m = 0; m < models.size(); ++m) {
            BenchmarkCell cell;
            cell.function = fns[f].name;
            cell.model = models[m].name();
            std::vector<double> vals;
            for (std::size_t j = 0; j < jobs.size(); ++j)
                if (jobs[j].fn_idx == f && std::isfinite(results[j][m]))
                    vals.push_back(results[j][m]);
            cell.n_repeats = static_cast<int>(vals.size());
            if (!vals.empty()) {
                double mean = 0.0;
                for (double v : vals) mean += v;
                mean /= static_cast<double>(vals.size());
                double ss = 0.0;
                for (double v : vals) ss += (v - mean) * (v - mean);
                cell.mean_rmse = mean;
                cell.sd_rmse = vals.size() > 1
                                   ? std::sqrt(ss / static_cast<double>(vals.size() - 1))
                                   : 0.0;
            } else {
                cell.mean_rmse = std::numeric_limits<double>::quiet_NaN();
                cell.sd_rmse = std::numeric_limits<double>::quiet_NaN();
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

void write_benchmark_csv(const std::vector<BenchmarkCell>& cells, std::ostream& out) {
    out << "function,model,mean_rmse,sd_rmse,n_repeats\n";
    for (const BenchmarkCell& cell : cells) {
        out << cell.function << ',' << cell.model << ',' << format_double(cell.mean_rmse)
            << ',' << format_double(cell.sd_rmse) << ',' << cell.n_repeats << '\n';
    }
}

}  // namespace perigp
