// Command-line front-end: single-point bound evaluation, parameter
// sweeps, spectrum utilities and oracle verification, emitting CSV.
//
// Exit codes: 0 success, 1 property/verification failure, 2 input error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ferbound/oracle.hpp"
#include "ferbound/spectrum.hpp"
#include "ferbound/sweep.hpp"

namespace {

using ferbound::ChannelSpec;
using ferbound::EvalSettings;
using ferbound::SpectrumSpec;
using ferbound::SweepConfig;
using ferbound::VerifyConfig;

ChannelSpec::Family parse_family(const std::string& name) {
    if (name == "bsc") return ChannelSpec::Family::Bsc;
    if (name == "bec") return ChannelSpec::Family::Bec;
    if (name == "bsc-bec") return ChannelSpec::Family::BscBec;
    if (name == "quinary") return ChannelSpec::Family::Quinary;
    if (name == "raw") return ChannelSpec::Family::Raw;
    throw CLI::ValidationError("--channel", "unknown channel family '" + name + "'");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<double> parse_grid(const std::string& s) {
    // Either "start:stop:count" or a comma-separated list.
    if (s.find(':') != std::string::npos) {
        double start = 0, stop = 0;
        int count = 0;
        if (std::sscanf(s.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 || count < 1)
            throw std::invalid_argument("grid must be start:stop:count or a comma list");
        std::vector<double> pts;
        for (int i = 0; i < count; ++i)
            pts.push_back(count == 1 ? start
                                     : start + (stop - start) * i / (count - 1));
        return pts;
    }
    std::vector<double> pts;
    for (const auto& item : split_list(s)) pts.push_back(std::stod(item));
    return pts;
}

int default_threads() {
    if (const char* env = std::getenv("FERBOUND_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Flags shared by the bound/sweep/verify subcommands; JSON config
// supplies defaults, explicitly passed flags override it.
struct CommonArgs {
    std::string config_path;
    std::string channel = "bsc";
    double eps = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
    std::string p0;
    std::string spectrum_file;
    int n = -1;
    int k = -1;
    std::string binomial;
    std::string generator;
    std::string bounds = "extended";
    std::string rect_m;
    double rect_sigma = 8.0;
    double prune_target = 0.0;
    double prune_offset = 30.0;
    int threads = default_threads();
    std::string output;

    CLI::App* attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file; flags override it");
        cmd->add_option("--channel", channel, "bsc | bec | bsc-bec | quinary | raw");
        cmd->add_option("--eps", eps, "crossover probability");
        cmd->add_option("--delta", delta, "erasure probability");
        cmd->add_option("--gamma", gamma, "weak-correct probability (quinary)");
        cmd->add_option("--p0", p0, "raw channel: comma list of P(y|0), odd length");
        cmd->add_option("--spectrum", spectrum_file, "weight spectrum CSV (w,count)");
        cmd->add_option("--n", n, "block length override for the spectrum");
        cmd->add_option("--k", k, "code dimension override for the spectrum");
        cmd->add_option("--binomial", binomial, "ensemble spectrum, as n,k");
        cmd->add_option("--generator", generator, "0/1 generator matrix file (brute-forced)");
        cmd->add_option("--bounds", bounds,
                        "comma list: extended, poltyrev, bec, bsc-bec, quinary, rect, "
                        "chernoff, sf, gallager");
        cmd->add_option("--rect-m", rect_m, "explicit rectangle caps, comma list");
        cmd->add_option("--rect-sigma", rect_sigma,
                        "caps at mean + sigma_count std deviations (default 8)");
        cmd->add_option("--prune-target", prune_target,
                        "skip types below ln(target) - offset; skipped mass is added back");
        cmd->add_option("--prune-offset", prune_offset, "pruning offset in nats (default 30)");
        cmd->add_option("--threads", threads, "worker threads (env FERBOUND_THREADS)");
        cmd->add_option("-o,--output", output, "output path (default stdout)");
        return cmd;
    }

    // Overlay JSON config for every flag the user did not pass.
    void apply_config(const CLI::App* cmd) {
        if (config_path.empty()) return;
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config file: " + config_path);
        nlohmann::json j;
        in >> j;
        auto absent = [&](const std::string& flag) { return cmd->count(flag) == 0; };
        if (j.contains("channel")) {
            const auto& c = j["channel"];
            if (absent("--channel") && c.contains("family"))
                channel = c["family"].get<std::string>();
            if (absent("--eps") && c.contains("eps")) eps = c["eps"].get<double>();
            if (absent("--delta") && c.contains("delta")) delta = c["delta"].get<double>();
            if (absent("--gamma") && c.contains("gamma")) gamma = c["gamma"].get<double>();
            if (absent("--p0") && c.contains("p0")) {
                p0.clear();
                for (double v : c["p0"]) p0 += (p0.empty() ? "" : ",") + ferbound::format_double(v);
            }
        }
        if (j.contains("spectrum")) {
            const auto& s = j["spectrum"];
            if (absent("--spectrum") && s.contains("file"))
                spectrum_file = s["file"].get<std::string>();
            if (absent("--n") && s.contains("n")) n = s["n"].get<int>();
            if (absent("--k") && s.contains("k")) k = s["k"].get<int>();
            if (absent("--binomial") && s.contains("binomial_n"))
                binomial = std::to_string(s["binomial_n"].get<int>()) + "," +
                           std::to_string(s["binomial_k"].get<int>());
            if (absent("--generator") && s.contains("generator"))
                generator = s["generator"].get<std::string>();
        }
        if (absent("--bounds") && j.contains("bounds")) {
            bounds.clear();
            for (const auto& b : j["bounds"])
                bounds += (bounds.empty() ? "" : ",") + b.get<std::string>();
        }
        if (j.contains("rect")) {
            const auto& r = j["rect"];
            if (absent("--rect-m") && r.contains("m")) {
                rect_m.clear();
                for (int v : r["m"]) rect_m += (rect_m.empty() ? "" : ",") + std::to_string(v);
            }
            if (absent("--rect-sigma") && r.contains("sigma"))
                rect_sigma = r["sigma"].get<double>();
        }
        if (j.contains("prune")) {
            const auto& p = j["prune"];
            if (absent("--prune-target") && p.contains("target"))
                prune_target = p["target"].get<double>();
            if (absent("--prune-offset") && p.contains("offset"))
                prune_offset = p["offset"].get<double>();
        }
        if (absent("--threads") && j.contains("threads")) threads = j["threads"].get<int>();
        if (absent("--output") && j.contains("output")) output = j["output"].get<std::string>();
        extra = j;
    }

    ChannelSpec channel_spec() const {
        ChannelSpec spec;
        spec.family = parse_family(channel);
        spec.eps = eps;
        spec.delta = delta;
        spec.gamma = gamma;
        if (!p0.empty())
            for (const auto& item : split_list(p0)) spec.p0.push_back(std::stod(item));
        return spec;
    }

    SpectrumSpec spectrum_spec() const {
        SpectrumSpec spec;
        spec.file = spectrum_file;
        if (n >= 0) spec.n = n;
        if (k >= 0) spec.k = k;
        if (!binomial.empty()) {
            const auto parts = split_list(binomial);
            if (parts.size() != 2)
                throw std::invalid_argument("--binomial expects n,k");
            spec.binomial_n = std::stoi(parts[0]);
            spec.binomial_k = std::stoi(parts[1]);
        }
        spec.generator_file = generator;
        return spec;
    }

    EvalSettings eval_settings(int bound_threads) const {
        EvalSettings e;
        e.bounds = split_list(bounds);
        if (!rect_m.empty()) {
            std::vector<int> caps;
            for (const auto& item : split_list(rect_m)) caps.push_back(std::stoi(item));
            e.rect_m = caps;
        }
        e.rect_sigma = rect_sigma;
        if (prune_target > 0.0) e.prune_target = prune_target;
        e.prune_offset = prune_offset;
        e.bound_threads = bound_threads;
        return e;
    }

    nlohmann::json extra;  // full config for subcommand-specific keys
};

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ML frame-error-rate upper bounds for binary linear codes over "
                 "binary-input memoryless symmetric channels"};
    app.require_subcommand(1);

    CommonArgs bound_args, sweep_args, verify_args;

    auto* cmd_bound = bound_args.attach(app.add_subcommand(
        "bound", "evaluate the selected bounds at a single channel point"));

    auto* cmd_sweep = sweep_args.attach(app.add_subcommand(
        "sweep", "evaluate bounds over a swept channel parameter"));
    std::string sweep_param = "eps";
    double sweep_start = 0.0, sweep_stop = 0.0;
    int sweep_points_n = 1;
    std::string sweep_spacing = "auto";
    cmd_sweep->add_option("--param", sweep_param, "swept parameter: eps | delta | gamma");
    cmd_sweep->add_option("--start", sweep_start, "sweep start");
    cmd_sweep->add_option("--stop", sweep_stop, "sweep stop");
    cmd_sweep->add_option("--points", sweep_points_n, "number of points");
    cmd_sweep->add_option("--spacing", sweep_spacing, "auto | linear | log");

    auto* cmd_spectrum = app.add_subcommand(
        "spectrum", "brute-force a generator matrix into a spectrum CSV + sidecar");
    std::string spectrum_generator, spectrum_output;
    int spectrum_budget = 24;
    cmd_spectrum->add_option("--generator", spectrum_generator, "0/1 generator matrix file")
        ->required();
    cmd_spectrum->add_option("-o,--output", spectrum_output, "spectrum CSV path")->required();
    cmd_spectrum->add_option("--max-k", spectrum_budget, "enumeration budget, 2^k (default 24)");

    auto* cmd_verify = verify_args.attach(app.add_subcommand(
        "verify", "run bounds beside the exact ML oracle and report soundness margins"));
    std::string verify_eps_grid, verify_delta_grid;
    std::uint64_t verify_trials = 0, verify_seed = 1;
    double verify_budget = 1e7;
    cmd_verify->add_option("--eps-grid", verify_eps_grid, "start:stop:count or comma list");
    cmd_verify->add_option("--delta-grid", verify_delta_grid, "start:stop:count or comma list");
    cmd_verify->add_option("--trials", verify_trials, "Monte-Carlo trials per point (0 = off)");
    cmd_verify->add_option("--seed", verify_seed, "simulation seed");
    cmd_verify->add_option("--budget", verify_budget, "oracle enumeration budget (default 1e7)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_bound->parsed()) {
            bound_args.apply_config(cmd_bound);
            return with_output(bound_args.output, [&](std::ostream& out) {
                return ferbound::run_bound(bound_args.channel_spec(),
                                           bound_args.spectrum_spec(),
                                           bound_args.eval_settings(bound_args.threads), out);
            });
        }
        if (cmd_sweep->parsed()) {
            sweep_args.apply_config(cmd_sweep);
            const auto& j = sweep_args.extra;
            if (j.contains("sweep")) {
                const auto& s = j["sweep"];
                auto absent = [&](const std::string& f) { return cmd_sweep->count(f) == 0; };
                if (absent("--param") && s.contains("param"))
                    sweep_param = s["param"].get<std::string>();
                if (absent("--start") && s.contains("start"))
                    sweep_start = s["start"].get<double>();
                if (absent("--stop") && s.contains("stop")) sweep_stop = s["stop"].get<double>();
                if (absent("--points") && s.contains("points"))
                    sweep_points_n = s["points"].get<int>();
                if (absent("--spacing") && s.contains("spacing"))
                    sweep_spacing = s["spacing"].get<std::string>();
            }
            SweepConfig config;
            config.channel = sweep_args.channel_spec();
            config.swept_param = sweep_param;
            config.start = sweep_start;
            config.stop = sweep_stop;
            config.points = sweep_points_n;
            if (sweep_spacing == "auto") config.spacing = SweepConfig::Spacing::Auto;
            else if (sweep_spacing == "linear") config.spacing = SweepConfig::Spacing::Linear;
            else if (sweep_spacing == "log") config.spacing = SweepConfig::Spacing::Log;
            else throw std::invalid_argument("--spacing must be auto, linear or log");
            config.spectrum = sweep_args.spectrum_spec();
            // Sweeps parallelize across points; each bound call stays
            // single-threaded so output bytes never depend on --threads.
            config.eval = sweep_args.eval_settings(1);
            config.threads = sweep_args.threads;
            return with_output(sweep_args.output, [&](std::ostream& out) {
                return ferbound::run_sweep(config, out);
            });
        }
        if (cmd_spectrum->parsed()) {
            const auto generator = ferbound::load_generator(spectrum_generator);
            const auto result = ferbound::brute_force_spectrum(generator, spectrum_budget);
            ferbound::save_spectrum(result.spectrum, spectrum_output);
            std::cout << "n=" << result.spectrum.n << " k=" << *result.spectrum.k
                      << " d_min=" << result.spectrum.d_min().value_or(0) << " -> "
                      << spectrum_output << "\n";
            return 0;
        }
        if (cmd_verify->parsed()) {
            verify_args.apply_config(cmd_verify);
            VerifyConfig config;
            config.channel = verify_args.channel_spec();
            if (!verify_eps_grid.empty()) config.eps_grid = parse_grid(verify_eps_grid);
            if (!verify_delta_grid.empty()) config.delta_grid = parse_grid(verify_delta_grid);
            config.generator_file = verify_args.generator;
            if (!verify_args.spectrum_file.empty() || !verify_args.binomial.empty()) {
                config.spectrum = verify_args.spectrum_spec();
                config.spectrum.generator_file.clear();
            }
            config.eval = verify_args.eval_settings(verify_args.threads);
            config.trials = verify_trials;
            config.seed = verify_seed;
            config.oracle_budget = verify_budget;
            return with_output(verify_args.output, [&](std::ostream& out) {
                return ferbound::run_verify(config, out);
            });
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
