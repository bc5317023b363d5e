// Command-line front end: periodicity screening of time-series files and
// the synthetic accuracy benchmark. Exit codes: 0 success, 1 every unit of
// work failed, 2 bad configuration or input file.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perigp/benchmark.hpp"
#include "perigp/csv.hpp"
#include "perigp/errors.hpp"
#include "perigp/hyperfit.hpp"
#include "perigp/screen.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw perigp::ConfigError("cannot open output file '" + path + "'");
    return out;
}

perigp::ScreenProfile resolve_profile(const std::string& spec) {
    if (spec == "gene" || spec == "benchmark") return perigp::ScreenProfile::builtin(spec);
    return perigp::ScreenProfile::from_file(spec);
}

int run_screen_command(const std::string& input, const std::string& layout_name,
                       const std::string& profile_spec, perigp::ScreenConfig config,
                       double nu_value, const std::vector<double>& interval,
                       const std::string& output) {
    config.nu = perigp::nu_from_double(nu_value);
    config.profile = resolve_profile(profile_spec);
    if (!interval.empty()) {
        if (interval.size() != 2)
            throw perigp::ConfigError("--interval needs exactly two values: lo hi");
        config.interval = std::make_pair(interval[0], interval[1]);
    }

    const perigp::Layout layout = perigp::layout_from_string(layout_name);
    const std::vector<perigp::Dataset> series = perigp::read_series_file(input, layout);
    std::cerr << "[screen] " << series.size() << " series from " << input << "\n";

    const perigp::ScreenResult result = perigp::run_screen(series, config, &std::cerr);

    std::ofstream out = open_output(output);
    perigp::write_screen_csv(result, out);
    std::cerr << "[screen] wrote " << result.rows.size() << " rows to " << output << " ("
              << result.n_failed << " failed)\n";
    return result.n_failed == static_cast<int>(result.rows.size()) ? 1 : 0;
}

int run_benchmark_command(const std::string& model_list, perigp::BenchmarkOptions options,
                          const std::string& output) {
    const std::vector<perigp::BenchmarkModel> models =
        perigp::parse_benchmark_models(model_list);
    const std::vector<perigp::BenchmarkCell> cells =
        perigp::run_benchmark(models, options, &std::cerr);

    std::ofstream out = open_output(output);
    perigp::write_benchmark_csv(cells, out);
    std::cerr << "[benchmark] wrote " << cells.size() << " cells to " << output << "\n";

    for (const perigp::BenchmarkCell& cell : cells)
        if (cell.n_repeats > 0) return 0;
    return 1;
}

int run_profile_command(const std::string& input, const std::string& layout_name,
                        const std::string& profile_spec, int q, double nu_value,
                        int restarts, std::uint64_t seed, double lambda_lo, double lambda_hi,
                        int steps, const std::string& output) {
    if (!(lambda_lo > 0.0 && lambda_lo < lambda_hi))
        throw perigp::ConfigError("profile-lambda: need 0 < lambda-lo < lambda-hi");
    if (steps < 2) throw perigp::ConfigError("profile-lambda: need at least 2 steps");

    const perigp::Layout layout = perigp::layout_from_string(layout_name);
    const std::vector<perigp::Dataset> series = perigp::read_series_file(input, layout);
    const perigp::Dataset& data = series.front();
    if (series.size() > 1)
        std::cerr << "[profile-lambda] using first series '" << data.id << "'\n";

    perigp::FitConfig cfg = resolve_profile(profile_spec).resolve(data);
    if (restarts > 0) cfg.n_restarts = restarts;
    cfg.seed = seed;

    const perigp::Nu nu = perigp::nu_from_double(nu_value);
    perigp::CompositeKernelSpec tmpl;
    tmpl.periodic = perigp::CompositeKernelSpec::PeriodicPart{
        perigp::MaternSpec(nu, 0.5 * (cfg.bounds.at(perigp::ParamId::theta_p).lo +
                                      cfg.bounds.at(perigp::ParamId::theta_p).hi),
                           1.0),
        perigp::FourierBasis(q, lambda_lo)};
    tmpl.aperiodic = perigp::MaternSpec(
        nu, 0.5 * (cfg.bounds.at(perigp::ParamId::theta_a).lo +
                   cfg.bounds.at(perigp::ParamId::theta_a).hi), 1.0);
    tmpl.noise_tau2 = cfg.bounds.at(perigp::ParamId::tau2).lo;

    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        grid[static_cast<std::size_t>(i)] =
            lambda_lo + (lambda_hi - lambda_lo) * static_cast<double>(i) /
                            static_cast<double>(steps - 1);

    const auto points = perigp::profile_lambda(data, tmpl, cfg, grid);

    std::ofstream out = open_output(output);
    out << "lambda,neg2loglik,ok,error\n";
    int n_ok = 0;
    for (const auto& p : points) {
        std::string msg = p.error;
        for (char& c : msg)
            if (c == ',' || c == '\n') c = ';';
        out << perigp::format_double(p.lambda) << ',' << perigp::format_double(p.value) << ','
            << (p.ok ? 1 : 0) << ',' << msg << '\n';
        n_ok += p.ok ? 1 : 0;
    }
    std::cerr << "[profile-lambda] wrote " << points.size() << " points to " << output << "\n";
    return n_ok > 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-process periodicity screening of time series"};
    app.require_subcommand(1);

    // screen
    auto* screen = app.add_subcommand("screen", "score series for periodicity");
    std::string input, output;
    std::string layout = "matrix";
    std::string profile = "gene";
    std::vector<double> interval;
    perigp::ScreenConfig config;
    double nu = 1.5;
    screen->add_option("--input", input, "input CSV path")->required();
    screen->add_option("--output", output, "report CSV path")->required();
    screen->add_option("--layout", layout, "input layout: long or matrix (default matrix)");
    screen->add_option("--profile", profile,
                       "bounds profile: gene, benchmark or a key=value file (default gene)");
    screen->add_option("--q", config.q, "Fourier harmonics per period (default 20)");
    screen->add_option("--nu", nu, "Matern regularity: 0.5, 1.5 or 2.5 (default 1.5)");
    screen->add_option("--restarts", config.n_restarts,
                       "optimizer restarts (default from profile)");
    screen->add_option("--realisations", config.n_realisations,
                       "Monte-Carlo realisations (default 1000)");
    screen->add_option("--grid", config.grid_size, "ratio grid size (default 500)");
    screen->add_option("--seed", config.seed, "master seed (default 0)");
    screen->add_option("--top-k", config.top_k,
                       "label the k highest ratios periodic instead of using the cutoff");
    screen->add_option("--cutoff", config.cutoff, "periodicity cutoff (default 0.77)");
    screen->add_option("--threads", config.threads, "worker threads (default 1)");
    screen->add_option("--interval", interval,
                       "ratio interval lo hi (default: each series' input span)")
        ->expected(2);

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "synthetic accuracy benchmark");
    std::string models = "cosopt,gp12,gp32,gp52";
    std::string bench_output;
    perigp::BenchmarkOptions bench_options;
    bench->add_option("--models", models, "comma list of cosopt,gp12,gp32,gp52 (default all)");
    bench->add_option("--repeats", bench_options.n_repeats, "noise redraws per cell (default 50)");
    bench->add_option("--seed", bench_options.seed, "master seed (default 0)");
    bench->add_option("--threads", bench_options.threads, "worker threads (default 1)");
    bench->add_option("--output", bench_output, "benchmark CSV path")->required();

    // profile-lambda
    auto* prof = app.add_subcommand("profile-lambda",
                                    "likelihood profile over the period for one series");
    std::string prof_input, prof_output;
    std::string prof_layout = "matrix";
    std::string prof_profile = "gene";
    int prof_q = 20;
    double prof_nu = 1.5;
    int prof_restarts = 0;
    std::uint64_t prof_seed = 0;
    double lambda_lo = 20.0, lambda_hi = 28.0;
    int prof_steps = 33;
    prof->add_option("--input", prof_input, "input CSV path")->required();
    prof->add_option("--output", prof_output, "profile CSV path")->required();
    prof->add_option("--layout", prof_layout, "input layout (default matrix)");
    prof->add_option("--profile", prof_profile, "bounds profile (default gene)");
    prof->add_option("--q", prof_q, "Fourier harmonics (default 20)");
    prof->add_option("--nu", prof_nu, "Matern regularity (default 1.5)");
    prof->add_option("--restarts", prof_restarts, "restarts per grid point");
    prof->add_option("--seed", prof_seed, "master seed (default 0)");
    prof->add_option("--lambda-lo", lambda_lo, "grid start (default 20)");
    prof->add_option("--lambda-hi", lambda_hi, "grid end (default 28)");
    prof->add_option("--steps", prof_steps, "grid points (default 33)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (screen->parsed())
            return run_screen_command(input, layout, profile, config, nu, interval, output);
        if (bench->parsed()) return run_benchmark_command(models, bench_options, bench_output);
        return run_profile_command(prof_input, prof_layout, prof_profile, prof_q, prof_nu,
                                   prof_restarts, prof_seed, lambda_lo, lambda_hi, prof_steps,
                                   prof_output);
    } catch (const perigp::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const perigp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const perigp::EmptySeries& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const perigp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
