#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "wscov/density.hpp"
#include "wscov/errors.hpp"
#include "wscov/io.hpp"
#include "wscov/laws.hpp"
#include "wscov/oracle.hpp"
#include "wscov/solver.hpp"

namespace wscov::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kCommands = {"density", "support", "simulate", "validate", "mp-check"};

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigParseError(key + ": expected a number, got '" + text + "'");
    }
    return v;
}

template <class Int>
Int to_integer(const std::string& key, const std::string& text) {
    Int v = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw ConfigParseError(key + ": expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigParseError(key + ": expected true or false, got '" + text + "'");
}

Format to_format(const std::string& text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw ConfigParseError("format: expected csv or json, got '" + text + "'");
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "command") {
        if (!kCommands.contains(value)) throw ConfigParseError("unknown command '" + value + "'");
        cfg.command = value;
    } else if (key == "h") {
        cfg.h_spec = value;
    } else if (key == "d") {
        cfg.d_spec = value;
    } else if (key == "reference-d") {
        cfg.reference_d_spec = value;
    } else if (key == "c") {
        cfg.c = to_double(key, value);
    } else if (key == "grid") {
        cfg.grid = parse_grid(value);
    } else if (key == "eps") {
        cfg.epsilon = to_double(key, value);
    } else if (key == "threshold") {
        cfg.threshold = to_double(key, value);
    } else if (key == "n") {
        cfg.n = to_integer<std::size_t>(key, value);
    } else if (key == "noise") {
        cfg.noise = value;
    } else if (key == "seed") {
        cfg.seed = to_integer<std::uint64_t>(key, value);
    } else if (key == "rotate-weights") {
        cfg.rotate_weights = to_bool(key, value);
    } else if (key == "rotate-population") {
        cfg.rotate_population = to_bool(key, value);
    } else if (key == "out") {
        cfg.out_path = value;
    } else if (key == "format") {
        cfg.format = to_format(value);
    } else if (key == "threads") {
        cfg.threads = to_integer<unsigned>(key, value);
    } else {
        throw ConfigParseError("unknown config key '" + key + "'");
    }
}

double require_c(const RunConfig& cfg) {
    if (!cfg.c) throw ConfigParseError("missing --c");
    if (!(*cfg.c > 0.0)) throw ConfigParseError("--c must be > 0");
    return *cfg.c;
}

SpectralLaw require_h(const RunConfig& cfg) {
    if (cfg.h_spec.empty()) throw ConfigParseError("missing --h");
    return parse_spectral_law(cfg.h_spec);
}

std::vector<double> grid_for(const RunConfig& cfg, const SpectralLaw& H, const WeightLaw& D, double c) {
    if (cfg.grid) return linear_grid(cfg.grid->min, cfg.grid->max, cfg.grid->count);
    return default_grid(H, D, c);
}

void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& write) {
    if (cfg.out_path.empty()) {
        write(out);
        out.flush();
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::invalid_argument("cannot open output file '" + cfg.out_path + "'");
    write(file);
    file.flush();
    if (!file) throw std::invalid_argument("failed writing '" + cfg.out_path + "'");
}

void emit_json(const RunConfig& cfg, std::ostream& out, const json& j) {
    emit(cfg, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

Format format_or(const RunConfig& cfg, Format fallback) { return cfg.format.value_or(fallback); }

void json_only(const RunConfig& cfg) {
    if (cfg.format && *cfg.format != Format::json) {
        throw ConfigParseError(cfg.command + " writes JSON only");
    }
}

SimConfig sim_config(const RunConfig& cfg) {
    if (!cfg.n) throw ConfigParseError("missing --n");
    SimConfig sim;
    sim.n = *cfg.n;
    sim.c = require_c(cfg);
    sim.noise = parse_noise(cfg.noise);
    sim.seed = cfg.seed;
    sim.rotate_weights = cfg.rotate_weights;
    sim.rotate_population = cfg.rotate_population;
    sim.validate();
    return sim;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
    const auto a = text.find(',');
    const auto b = a == std::string::npos ? std::string::npos : text.find(',', a + 1);
    if (b == std::string::npos || text.find(',', b + 1) != std::string::npos) {
        throw ConfigParseError("grid: expected min,max,count, got '" + text + "'");
    }
    GridSpec g;
    g.min = to_double("grid", text.substr(0, a));
    g.max = to_double("grid", text.substr(a + 1, b - a - 1));
    g.count = to_integer<std::size_t>("grid", text.substr(b + 1));
    if (g.count < 2) throw ConfigParseError("grid: count must be >= 2");
    if (!(g.min < g.max)) throw ConfigParseError("grid: min must be < max");
    if (g.min < 0.0) throw ConfigParseError("grid: min must be >= 0");
    return g;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"Limiting spectra of weighted sample covariance matrices", "wscov"};
    app.set_help_flag("--help", "Print help and exit");

    std::string command, config;
    std::map<std::string, std::string> flags;
    std::map<std::string, CLI::Option*> opts;
    auto value_flag = [&](const std::string& key, const std::string& help) {
        opts[key] = app.add_option("--" + key, flags[key], help);
    };

    app.add_option("command", command, "density | support | simulate | validate | mp-check");
    app.add_option("--config", config, "key = value file; explicit flags override it");
    value_flag("h", "population law, e.g. mix:0.2@1,0.4@3,0.4@10");
    value_flag("d", "weight law, e.g. ewma:1 (default dirac:1)");
    value_flag("reference-d", "weight law of the limit curve in validate (default: --d)");
    value_flag("c", "concentration ratio n / N");
    value_flag("grid", "min,max,count");
    value_flag("eps", "inversion height (default 1e-6)");
    value_flag("threshold", "support cutoff (default 1e-4) or KS cutoff for validate (default 0.05)");
    value_flag("n", "matrix dimension for simulate / validate");
    value_flag("noise", "gauss-r | gauss-c | student:NU");
    value_flag("seed", "64-bit seed");
    value_flag("out", "output file (default stdout)");
    value_flag("format", "csv | json");
    value_flag("threads", "worker threads");
    bool rotate_weights = false, rotate_population = false;
    auto* rw = app.add_flag("--rotate-weights", rotate_weights, "replace W by Q W Q^* with Haar Q");
    auto* rp = app.add_flag("--rotate-population", rotate_population, "replace T by Q T Q^* with Haar Q");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigParseError(e.what());
    }

    RunConfig cfg;
    if (!config.empty()) {
        for (const auto& [key, value] : io::read_config_file(config)) apply(cfg, key, value);
    }
    if (!command.empty()) apply(cfg, "command", command);
    for (const auto& [key, opt] : opts) {
        if (opt->count() > 0) apply(cfg, key, flags[key]);
    }
    if (rw->count() > 0) cfg.rotate_weights = rotate_weights;
    if (rp->count() > 0) cfg.rotate_population = rotate_population;
    if (cfg.command.empty()) throw ConfigParseError("missing command");
    if (!(cfg.epsilon > 0.0)) throw ConfigParseError("--eps must be > 0");
    if (cfg.threshold && !(*cfg.threshold > 0.0)) throw ConfigParseError("--threshold must be > 0");
    if (cfg.threads == 0) throw ConfigParseError("--threads must be >= 1");
    return cfg;
}

int run_density(const RunConfig& cfg, std::ostream& out) {
    const SpectralLaw H = require_h(cfg);
    const WeightLaw D = parse_weight_law(cfg.d_spec);
    const double c = require_c(cfg);
    const DensityCurve curve = density_curve(H, D, c, grid_for(cfg, H, D, c), cfg.epsilon, {}, cfg.threads);
    if (format_or(cfg, Format::csv) == Format::csv) {
        emit(cfg, out, [&](std::ostream& os) { io::write_density_csv(os, curve); });
    } else {
        emit_json(cfg, out, io::density_json(curve));
    }
    return kOk;
}

int run_support(const RunConfig& cfg, std::ostream& out) {
    const SpectralLaw H = require_h(cfg);
    const WeightLaw D = parse_weight_law(cfg.d_spec);
    const double c = require_c(cfg);
    const DensityCurve curve = density_curve(H, D, c, grid_for(cfg, H, D, c), cfg.epsilon, {}, cfg.threads);
    const SupportReport report = support_report(curve, cfg.threshold.value_or(kDefaultThreshold));
    if (format_or(cfg, Format::json) == Format::json) {
        emit_json(cfg, out, io::support_json(report));
    } else {
        emit(cfg, out, [&](std::ostream& os) { io::write_support_csv(os, report); });
    }
    return kOk;
}

int run_simulate(const RunConfig& cfg, std::ostream& out) {
    const SpectralLaw H = require_h(cfg);
    const WeightLaw D = parse_weight_law(cfg.d_spec);
    const SimConfig sim = sim_config(cfg);
    const EmpiricalSpectrum spec = sample_spectrum(H, D, sim);
    if (format_or(cfg, Format::csv) == Format::csv) {
        emit(cfg, out, [&](std::ostream& os) { io::write_spectrum_csv(os, spec); });
    } else {
        emit_json(cfg, out,
                  {{"n", spec.n}, {"N", spec.N}, {"eigenvalues", spec.eigenvalues}, {"trace_mean", trace_mean(spec)}});
    }
    return kOk;
}

int run_validate(const RunConfig& cfg, std::ostream& out) {
    json_only(cfg);
    const auto start = std::chrono::steady_clock::now();
    const SpectralLaw H = require_h(cfg);
    const WeightLaw D = parse_weight_law(cfg.d_spec);
    const WeightLaw D_ref = cfg.reference_d_spec ? parse_weight_law(*cfg.reference_d_spec) : D;
    const SimConfig sim = sim_config(cfg);
    const double threshold = cfg.threshold.value_or(0.05);

    const EmpiricalSpectrum spec = sample_spectrum(H, D, sim);
    const DensityCurve curve =
        density_curve(H, D_ref, sim.c, grid_for(cfg, H, D_ref, sim.c), cfg.epsilon, {}, cfg.threads);
    const CdfTable F(curve);
    const double ks = ks_statistic(spec, std::cref(F));
    const double w1 = wasserstein1(spec, curve);
    const double tm = trace_mean(spec);
    const auto elapsed = std::chrono::steady_clock::now() - start;

    json summary = {
        {"config",
         {{"h", format_law(H)},
          {"d", format_law(D)},
          {"reference_d", format_law(D_ref)},
          {"c", sim.c},
          {"n", sim.n},
          {"N", sim.sample_count()},
          {"noise", format_noise(sim.noise)},
          {"seed", sim.seed},
          {"rotate_weights", sim.rotate_weights},
          {"rotate_population", sim.rotate_population},
          {"eps", cfg.epsilon},
          {"threshold", threshold}}},
        {"ks", ks},
        {"w1", w1},
        {"trace_mean", tm},
        {"runtime_ms", std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()},
    };
    emit_json(cfg, out, summary);
    return ks <= threshold ? kOk : kValidationFailed;
}

int run_mp_check(const RunConfig& cfg, std::ostream& out) {
    json_only(cfg);
    const double c = require_c(cfg);
    constexpr int kPoints = 100;
    constexpr double kTolerance = 1e-10;
    const auto [lo, hi] = oracle::mp_support(oracle::MpParams(c));
    (void)lo;

    const SpectralLaw H = SpectralLaw::point_mass(1.0);
    const WeightLaw D = WeightLaw::point_mass(1.0);
    const SpectralModel model(H, D, c);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> re(0.0, 1.5 * hi);
    std::uniform_real_distribution<double> log_im(std::log(1e-3), std::log(10.0));

    double worst = 0.0;
    for (int k = 0; k < kPoints; ++k) {
        const cplx z{re(rng), std::exp(log_im(rng))};
        const StieltjesSolution s = solve(model, EvalPoint(z));
        worst = std::max(worst, std::abs(s.m - oracle::mp_stieltjes(oracle::MpParams(c), z)));
    }
    const bool pass = worst <= kTolerance;
    emit_json(cfg, out,
              {{"c", c}, {"points", kPoints}, {"max_abs_error", worst}, {"tolerance", kTolerance}, {"pass", pass}});
    return pass ? kOk : kValidationFailed;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "density") return run_density(cfg, out);
        if (cfg.command == "support") return run_support(cfg, out);
        if (cfg.command == "simulate") return run_simulate(cfg, out);
        if (cfg.command == "validate") return run_validate(cfg, out);
        if (cfg.command == "mp-check") return run_mp_check(cfg, out);
        err << "wscov: unknown command '" << cfg.command << "'\n";
        return kParseError;
    } catch (const GridPointError& e) {
        err << "wscov: " << e.what() << '\n';
        return kSolverError;
    } catch (const NonConvergenceError& e) {
        err << "wscov: " << e.what() << '\n';
        return kSolverError;
    } catch (const DegenerateEvaluationError& e) {
        err << "wscov: " << e.what() << '\n';
        return kSolverError;
    } catch (const EigensolverError& e) {
        err << "wscov: " << e.what() << '\n';
        return kEigensolverError;
    } catch (const std::exception& e) {
        err << "wscov: " << e.what() << '\n';
        return kParseError;
    }
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> cfg;
    try {
        cfg = parse_args(args, out);
    } catch (const std::exception& e) {
        err << "wscov: " << e.what() << '\n';
        return kParseError;
    }
    if (!cfg) return kOk;
    return run(*cfg, out, err);
}

}  // namespace wscov::cli
