#include "perigp/screen.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "perigp/csv.hpp"
#include "perigp/errors.hpp"
#include "perigp/gp.hpp"
#include "perigp/periodicity.hpp"
#include "perigp/rng.hpp"

namespace perigp {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::optional<ParamId> param_from_name(const std::string& name) {
    for (ParamId id : {ParamId::sigma2_p, ParamId::theta_p, ParamId::sigma2_a,
                       ParamId::theta_a, ParamId::tau2, ParamId::lambda})
        if (param_name(id) == name) return id;
    return std::nullopt;
}
}  // namespace

ScreenProfile ScreenProfile::builtin(const std::string& name) {
    if (name != "gene" && name != "benchmark")
        throw ConfigError("unknown profile '" + name + "' (expected gene, benchmark or a file)");
    ScreenProfile p;
    p.name = name;
    p.base_is_benchmark_ = name == "benchmark";
    return p;
}

ScreenProfile ScreenProfile::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open profile file '" + path + "'");
    ScreenProfile p;
    p.name = path;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t lo = line.find_first_not_of(" \t\r");
        if (lo == std::string::npos) continue;
        std::size_t hi = line.find_last_not_of(" \t\r");
        const std::string entry = line.substr(lo, hi - lo + 1);
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw ConfigError("profile file '" + path + "' line " + std::to_string(line_no) +
                              ": expected key=value");
        std::string key = entry.substr(0, eq);
        std::string value = entry.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
            value.erase(value.begin());
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (value.empty() || end != value.c_str() + value.size())
            throw ConfigError("profile file '" + path + "' line " + std::to_string(line_no) +
                              ": cannot parse value '" + value + "'");
        if (key == "restarts") {
            p.restarts_override_ = static_cast<int>(v);
        } else if (key == "max_evals") {
            p.max_evals_override_ = static_cast<int>(v);
        } else if (key == "snap_factor") {
            p.snap_override_ = v;
        } else if (key.size() > 3 && key.substr(key.size() - 3) == "_lo") {
            const auto id = param_from_name(key.substr(0, key.size() - 3));
            if (!id)
                throw ConfigError("profile file '" + path + "' line " +
                                  std::to_string(line_no) + ": unknown key '" + key + "'");
            p.bound_overrides_.push_back({*id, false, v});
        } else if (key.size() > 3 && key.substr(key.size() - 3) == "_hi") {
            const auto id = param_from_name(key.substr(0, key.size() - 3));
            if (!id)
                throw ConfigError("profile file '" + path + "' line " +
                                  std::to_string(line_no) + ": unknown key '" + key + "'");
            p.bound_overrides_.push_back({*id, true, v});
        } else {
            throw ConfigError("profile file '" + path + "' line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        }
    }
    return p;
}

FitConfig ScreenProfile::resolve(const Dataset& data) const {
    FitConfig cfg;
    if (base_is_benchmark_) {
        // Span-relative bounds; the screen still needs an aperiodic part for
        // the ratio, so the aperiodic component mirrors the periodic bounds.
        cfg = benchmark_profile(data);
        cfg.bounds[ParamId::sigma2_a] = cfg.bounds.at(ParamId::sigma2_p);
        cfg.bounds[ParamId::theta_a] = cfg.bounds.at(ParamId::theta_p);
        cfg.free_params = {ParamId::sigma2_p, ParamId::theta_p, ParamId::sigma2_a,
                           ParamId::theta_a, ParamId::tau2, ParamId::lambda};
    } else {
        cfg = gene_profile(data);
    }
    for (const Override& o : bound_overrides_) {
        ParamBounds& b = cfg.bounds[o.id];
        (o.upper ? b.hi : b.lo) = o.value;
    }
    if (restarts_override_ > 0) cfg.n_restarts = restarts_override_;
    if (max_evals_override_ > 0) cfg.max_evals_per_restart = max_evals_override_;
    if (snap_override_ > 0.0) cfg.snap_factor = snap_override_;
    return cfg;
}

void ScreenConfig::validate() const {
    if (q < 1) throw ConfigError("screen: q must be >= 1");
    if (n_restarts < 0) throw ConfigError("screen: restarts must be >= 0");
    if (n_realisations < 1) throw ConfigError("screen: realisations must be >= 1");
    if (grid_size < 10) throw ConfigError("screen: grid must be >= 10");
    if (top_k < 0) throw ConfigError("screen: top-k must be >= 0");
    if (!(cutoff >= 0.0)) throw ConfigError("screen: cutoff must be >= 0");
    if (threads < 1) throw ConfigError("screen: threads must be >= 1");
    if (interval && !(interval->first < interval->second))
        throw ConfigError("screen: ratio interval must satisfy lo < hi");
}

namespace {
double geometric_mid(const ParamBounds& b) { return std::sqrt(b.lo * b.hi); }

ScreenRow score_series(const Dataset& data, const ScreenConfig& config) {
    ScreenRow row{data.id, kNan, kNan, kNan, kNan, 0.0, false, ""};

    FitConfig fit_cfg = config.profile.resolve(data);
    if (config.n_restarts > 0) fit_cfg.n_restarts = config.n_restarts;
    fit_cfg.seed = mix_seed(config.seed, fnv1a64(data.id));

    CompositeKernelSpec tmpl;
    tmpl.periodic = CompositeKernelSpec::PeriodicPart{
        MaternSpec(config.nu, geometric_mid(fit_cfg.bounds.at(ParamId::theta_p)), 1.0),
        FourierBasis(config.q, geometric_mid(fit_cfg.bounds.at(ParamId::lambda)))};
    tmpl.aperiodic =
        MaternSpec(config.nu, geometric_mid(fit_cfg.bounds.at(ParamId::theta_a)), 1.0);
    tmpl.noise_tau2 = geometric_mid(fit_cfg.bounds.at(ParamId::tau2));

    const FitResult fit = fit_hyperparameters(data, tmpl, fit_cfg);
    row.neg2loglik = fit.value;
    row.lambda_hat = fit.params.count(ParamId::lambda) ? fit.params.at(ParamId::lambda) : kNan;

    const GpPosterior posterior(fit.scoring_spec, data);

    RatioConfig ratio_cfg;
    ratio_cfg.grid_size = config.grid_size;
    ratio_cfg.n_realisations = config.n_realisations;
    ratio_cfg.cutoff = config.cutoff;
    ratio_cfg.interval = config.interval;
    ratio_cfg.seed = mix_seed(fit_cfg.seed, 0x7261746f69ULL);
    const PeriodicityReport report = periodicity_ratio(posterior, ratio_cfg);

    row.ratio_mean = report.ratio_mean;
    row.ratio_std = report.ratio_std;
    row.jitter_used = posterior.max_jitter();
    row.is_periodic = report.is_periodic;
    return row;
}

std::string sanitize_message(std::string text) {
    for (char& c : text)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return text;
}
}  // namespace

ScreenResult run_screen(const std::vector<Dataset>& series, const ScreenConfig& config,
                        std::ostream* log) {
    config.validate();
    if (series.empty()) throw ConfigError("screen: no series to score");

    ScreenResult result;
    result.rows.resize(series.size());

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= series.size()) return;
            ScreenRow row;
            try {
                row = score_series(series[i], config);
            } catch (const Error& e) {
                row = ScreenRow{series[i].id, kNan, kNan, kNan, kNan, 0.0, false,
                                sanitize_message(e.what())};
            }
            if (log) {
                std::lock_guard<std::mutex> lock(log_mutex);
                *log << "[screen] " << row.id << ": "
                     << (row.error.empty()
                             ? "ratio " + format_double(row.ratio_mean)
                             : "failed (" + row.error + ")")
                     << "\n";
                log->flush();
            }
            result.rows[i] = std::move(row);
        }
    };

    if (config.threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(config.threads));
        for (int t = 0; t < config.threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    result.cutoff_used = config.cutoff;
    if (config.top_k > 0) {
        std::vector<double> ratios;
        for (const ScreenRow& row : result.rows)
            if (row.error.empty()) ratios.push_back(row.ratio_mean);
        if (!ratios.empty()) {
            result.cutoff_used = top_k_cutoff(std::move(ratios), config.top_k);
            for (ScreenRow& row : result.rows)
                row.is_periodic = row.error.empty() && row.ratio_mean >= result.cutoff_used;
        }
    }
    for (const ScreenRow& row : result.rows)
        if (!row.error.empty()) ++result.n_failed;
    return result;
}

void write_screen_csv(const ScreenResult& result, std::ostream& out) {
    out << "id,ratio_mean,ratio_std,lambda_hat,neg2loglik,jitter_used,is_periodic,error\n";
    for (const ScreenRow& row : result.rows) {
        out << row.id << ',' << format_double(row.ratio_mean) << ','
            << format_double(row.ratio_std) << ',' << format_double(row.lambda_hat) << ','
            << format_double(row.neg2loglik) << ',' << format_double(row.jitter_used) << ','
            << (row.is_periodic ? 1 : 0) << ',' << row.error << '\n';
    }
}

}  // namespace perigp
