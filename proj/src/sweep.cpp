#include "ferbound/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ferbound/baselines.hpp"
#include "ferbound/oracle.hpp"

namespace ferbound {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string ChannelSpec::family_name() const {
    switch (family) {
        case Family::Bsc: return "bsc";
        case Family::Bec: return "bec";
        case Family::BscBec: return "bsc-bec";
        case Family::Quinary: return "quinary";
        case Family::Raw: return "raw";
    }
    return "?";
}

BmsChannel make_channel(const ChannelSpec& spec) {
    switch (spec.family) {
        case ChannelSpec::Family::Bsc: return make_bsc(spec.eps);
        case ChannelSpec::Family::Bec: return make_bec(spec.delta);
        case ChannelSpec::Family::BscBec: return make_bsc_bec(spec.eps, spec.delta);
        case ChannelSpec::Family::Quinary:
            return make_quinary(spec.eps, spec.delta, spec.gamma);
        case ChannelSpec::Family::Raw: return BmsChannel(spec.p0);
    }
    throw std::invalid_argument("make_channel: unknown family");
}

WeightSpectrum resolve_spectrum(const SpectrumSpec& spec) {
    const int sources = (!spec.file.empty() ? 1 : 0) +
                        (spec.binomial_n ? 1 : 0) +
                        (!spec.generator_file.empty() ? 1 : 0);
    if (sources != 1)
        throw std::invalid_argument(
            "spectrum: specify exactly one of a CSV file, binomial n/k, or a generator file");
    if (!spec.file.empty()) return load_spectrum(spec.file, spec.n, spec.k);
    if (spec.binomial_n) {
        if (!spec.binomial_k)
            throw std::invalid_argument("spectrum: binomial needs both n and k");
        return binomial_spectrum(*spec.binomial_n, *spec.binomial_k);
    }
    return brute_force_spectrum(load_generator(spec.generator_file)).spectrum;
}

std::vector<double> sweep_points(const SweepConfig& config) {
    if (config.points < 1)
        throw std::invalid_argument("sweep: points must be >= 1");
    if (!(config.start < config.stop))
        throw std::invalid_argument("sweep: need start < stop");

    bool log_spaced = false;
    switch (config.spacing) {
        case SweepConfig::Spacing::Linear: log_spaced = false; break;
        case SweepConfig::Spacing::Log: log_spaced = true; break;
        case SweepConfig::Spacing::Auto:
            // FER curves span decades; default to log spacing for ranges
            // of small probabilities.
            log_spaced = config.start > 0.0 && config.stop <= 0.1;
            break;
    }
    if (log_spaced && config.start <= 0.0)
        throw std::invalid_argument("sweep: log spacing needs start > 0");

    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(config.points));
    if (config.points == 1) {
        pts.push_back(config.start);
        return pts;
    }
    if (log_spaced) {
        const double la = std::log(config.start);
        const double lb = std::log(config.stop);
        for (int i = 0; i < config.points; ++i)
            pts.push_back(std::exp(la + (lb - la) * i / (config.points - 1)));
    } else {
        for (int i = 0; i < config.points; ++i)
            pts.push_back(config.start +
                          (config.stop - config.start) * i / (config.points - 1));
    }
    pts.front() = config.start;  // endpoints exactly as configured
    pts.back() = config.stop;
    return pts;
}

namespace {

void hash_field(std::uint64_t& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // field separator
    h *= 0x100000001b3ULL;
}

std::string channel_canonical(const ChannelSpec& c) {
    std::string s = "family=" + c.family_name() + ";eps=" + format_double(c.eps) +
                    ";delta=" + format_double(c.delta) + ";gamma=" + format_double(c.gamma);
    if (!c.p0.empty()) {
        s += ";p0=";
        for (double p : c.p0) s += format_double(p) + ",";
    }
    return s;
}

std::string settings_canonical(const EvalSettings& e) {
    std::string s = "bounds=";
    for (const auto& b : e.bounds) s += b + ",";
    if (e.rect_m) {
        s += ";rect_m=";
        for (int v : *e.rect_m) s += std::to_string(v) + ",";
    }
    s += ";rect_sigma=" + format_double(e.rect_sigma);
    if (e.prune_target)
        s += ";prune_target=" + format_double(*e.prune_target) +
             ";prune_offset=" + format_double(e.prune_offset);
    return s;
}

std::string spectrum_canonical(const SpectrumSpec& s) {
    std::string out;
    if (!s.file.empty()) out += "file=" + s.file;
    if (s.n) out += ";n=" + std::to_string(*s.n);
    if (s.k) out += ";k=" + std::to_string(*s.k);
    if (s.binomial_n) out += ";binomial_n=" + std::to_string(*s.binomial_n);
    if (s.binomial_k) out += ";binomial_k=" + std::to_string(*s.binomial_k);
    if (!s.generator_file.empty()) out += ";generator=" + s.generator_file;
    return out;
}

const char* spacing_name(SweepConfig::Spacing s) {
    switch (s) {
        case SweepConfig::Spacing::Auto: return "auto";
        case SweepConfig::Spacing::Linear: return "linear";
        case SweepConfig::Spacing::Log: return "log";
    }
    return "?";
}

}  // namespace

std::uint64_t config_hash(const SweepConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    hash_field(h, channel_canonical(config.channel));
    hash_field(h, "swept=" + config.swept_param + ";start=" + format_double(config.start) +
                      ";stop=" + format_double(config.stop) +
                      ";points=" + std::to_string(config.points) +
                      ";spacing=" + spacing_name(config.spacing));
    hash_field(h, spectrum_canonical(config.spectrum));
    hash_field(h, settings_canonical(config.eval));
    return h;
}

namespace {

struct Row {
    std::vector<std::string> cells;
    bool ok = true;
};

std::string join_cells(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    return s;
}

const char* kHeader =
    "bound_name,channel,eps,delta,gamma,n,k,value,log10_value,union_mass,"
    "noise_mass,pruned_mass,types_visited,rect_m,status";

void channel_param_cells(const ChannelSpec& spec, std::vector<std::string>& cells) {
    const bool has_eps = spec.family == ChannelSpec::Family::Bsc ||
                         spec.family == ChannelSpec::Family::BscBec ||
                         spec.family == ChannelSpec::Family::Quinary;
    const bool has_delta = spec.family != ChannelSpec::Family::Bsc &&
                           spec.family != ChannelSpec::Family::Raw;
    const bool has_gamma = spec.family == ChannelSpec::Family::Quinary;
    cells.push_back(has_eps ? format_double(spec.eps) : "");
    cells.push_back(has_delta ? format_double(spec.delta) : "");
    cells.push_back(has_gamma ? format_double(spec.gamma) : "");
}

RectLimits resolve_limits(const EvalSettings& eval, const BmsChannel& channel, int n) {
    if (eval.rect_m) return RectLimits{*eval.rect_m};
    return choose_rect(channel, n, eval.rect_sigma);
}

BoundOptions bound_options(const EvalSettings& eval) {
    BoundOptions o;
    if (eval.prune_target)
        o.prune_log_threshold = std::log(*eval.prune_target) - eval.prune_offset;
    o.threads = eval.bound_threads;
    return o;
}

std::string limits_string(const RectLimits& limits) {
    std::string s;
    for (std::size_t i = 0; i < limits.m.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(limits.m[i]);
    }
    return s;
}

Row evaluate_bound_row(const std::string& name, const ChannelSpec& spec,
                       const WeightSpectrum& spectrum, const EvalSettings& eval,
                       bool with_wall) {
    Row row;
    row.cells.push_back(name);
    row.cells.push_back(spec.family_name());
    channel_param_cells(spec, row.cells);
    row.cells.push_back(std::to_string(spectrum.n));
    row.cells.push_back(spectrum.k ? std::to_string(*spectrum.k) : "");

    try {
        const BmsChannel channel = make_channel(spec);
        BoundResult r;
        std::string rect_cell;
        if (name == "extended") {
            r = extended_bound(channel, spectrum, bound_options(eval));
        } else if (name == "poltyrev") {
            if (spec.family != ChannelSpec::Family::Bsc)
                throw std::invalid_argument("bound 'poltyrev' needs a bsc channel");
            r = poltyrev_bsc(spectrum, spec.eps);
        } else if (name == "bec") {
            if (spec.family != ChannelSpec::Family::Bec)
                throw std::invalid_argument("bound 'bec' needs a bec channel");
            r = bec_bound(spectrum, spec.delta);
        } else if (name == "bsc-bec") {
            if (spec.family != ChannelSpec::Family::BscBec)
                throw std::invalid_argument("bound 'bsc-bec' needs a bsc-bec channel");
            r = bsc_bec_bound(spectrum, spec.eps, spec.delta);
        } else if (name == "quinary") {
            if (spec.family != ChannelSpec::Family::Quinary)
                throw std::invalid_argument("bound 'quinary' needs a quinary channel");
            r = quinary_bound(spectrum, spec.eps, spec.delta, spec.gamma);
        } else if (name == "rect" || name == "chernoff") {
            const RectLimits limits = resolve_limits(eval, channel, spectrum.n);
            rect_cell = limits_string(limits);
            r = name == "rect" ? rect_bound(channel, spectrum, limits)
                               : rect_bound_chernoff(channel, spectrum, limits);
        } else if (name == "sf") {
            r = shulman_feder(channel, spectrum).bound;
        } else if (name == "gallager") {
            const ExponentResult er = gallager_exponent(channel, spectrum.rate());
            r.p_upper = er.bound_for(spectrum.n);
            r.log_p = -spectrum.n * er.exponent * std::log(2.0);
            r.noise_mass = r.log_p;
        } else {
            throw std::invalid_argument("unknown bound '" + name + "'");
        }

        row.cells.push_back(format_double(r.p_upper));
        row.cells.push_back(format_double(r.log_p / std::log(10.0)));
        row.cells.push_back(format_double(std::exp(r.union_mass)));
        row.cells.push_back(format_double(std::exp(r.noise_mass)));
        row.cells.push_back(format_double(std::exp(r.pruned_mass)));
        row.cells.push_back(std::to_string(r.types_visited));
        row.cells.push_back(rect_cell);
        row.cells.push_back("ok");
        if (with_wall) row.cells.push_back(format_double(r.wall_ms));
    } catch (const std::exception& e) {
        row.ok = false;
        row.cells.resize(7);  // keep the identification cells
        row.cells.insert(row.cells.end(), {"", "", "", "", "", "", "", "error"});
        if (with_wall) row.cells.push_back("");
        const std::string msg = "warning: " + name + ": " + e.what() + "\n";
        std::cerr << msg;
    }
    return row;
}

template <typename Fn>
void parallel_indices(int count, int threads, Fn&& fn) {
    threads = std::clamp(threads, 1, std::max(1, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t + 1 < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

void validate_swept_param(const SweepConfig& config) {
    const auto& p = config.swept_param;
    using F = ChannelSpec::Family;
    const F f = config.channel.family;
    const bool ok = (p == "eps" && (f == F::Bsc || f == F::BscBec || f == F::Quinary)) ||
                    (p == "delta" && (f == F::Bec || f == F::BscBec || f == F::Quinary)) ||
                    (p == "gamma" && f == F::Quinary);
    if (!ok)
        throw std::invalid_argument("sweep: parameter '" + p + "' is not valid for family '" +
                                    config.channel.family_name() + "'");
}

ChannelSpec with_param(ChannelSpec spec, const std::string& param, double value) {
    if (param == "eps") spec.eps = value;
    else if (param == "delta") spec.delta = value;
    else if (param == "gamma") spec.gamma = value;
    return spec;
}

}  // namespace

int run_sweep(const SweepConfig& config, std::ostream& out) {
    validate_swept_param(config);
    const std::vector<double> points = sweep_points(config);
    const WeightSpectrum spectrum = resolve_spectrum(config.spectrum);
    if (config.eval.bounds.empty())
        throw std::invalid_argument("sweep: no bounds selected");

    std::vector<std::vector<Row>> results(points.size());
    parallel_indices(static_cast<int>(points.size()), config.threads, [&](int i) {
        const ChannelSpec spec =
            with_param(config.channel, config.swept_param, points[static_cast<std::size_t>(i)]);
        auto& rows = results[static_cast<std::size_t>(i)];
        for (const auto& name : config.eval.bounds)
            rows.push_back(evaluate_bound_row(name, spec, spectrum, config.eval, false));
    });

    bool all_ok = true;
    out << kHeader << "\n";
    for (const auto& rows : results)
        for (const auto& row : rows) {
            out << join_cells(row.cells) << "\n";
            all_ok = all_ok && row.ok;
        }

    char hash_hex[17];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    out << "# ferbound " << kToolVersion << " config_hash=" << hash_hex << "\n";
    return all_ok ? 0 : 1;
}

int run_bound(const ChannelSpec& channel, const SpectrumSpec& spectrum,
              const EvalSettings& eval, std::ostream& out) {
    const WeightSpectrum sp = resolve_spectrum(spectrum);
    if (eval.bounds.empty()) throw std::invalid_argument("bound: no bounds selected");
    bool all_ok = true;
    out << kHeader << ",wall_ms\n";
    for (const auto& name : eval.bounds) {
        const Row row = evaluate_bound_row(name, channel, sp, eval, true);
        out << join_cells(row.cells) << "\n";
        all_ok = all_ok && row.ok;
    }
    return all_ok ? 0 : 1;
}

int run_verify(const VerifyConfig& config, std::ostream& out) {
    if (config.generator_file.empty())
        throw std::invalid_argument("verify: a generator file is required for the oracle");
    const BruteForceResult code = brute_force_spectrum(load_generator(config.generator_file));
    // Bounds normally consume the brute-forced spectrum; an explicit
    // spectrum source lets a suspect table be checked against the oracle.
    const bool external = !config.spectrum.file.empty() || config.spectrum.binomial_n ||
                          !config.spectrum.generator_file.empty();
    const WeightSpectrum spectrum =
        external ? resolve_spectrum(config.spectrum) : code.spectrum;
    if (spectrum.n != code.codebook.n)
        throw std::invalid_argument("verify: spectrum length does not match the generator");

    std::vector<double> eps_grid = config.eps_grid;
    std::vector<double> delta_grid = config.delta_grid;
    if (eps_grid.empty()) eps_grid.push_back(config.channel.eps);
    if (delta_grid.empty()) delta_grid.push_back(config.channel.delta);

    out << "eps,delta,bound_name,value,exact_ml";
    if (config.trials > 0) out << ",sim_fer,sim_stderr";
    out << ",margin,status\n";

    bool all_ok = true;
    for (double eps : eps_grid) {
        for (double delta : delta_grid) {
            ChannelSpec spec = config.channel;
            spec.eps = eps;
            spec.delta = delta;
            const BmsChannel channel = make_channel(spec);
            const double exact = exact_ml_error(channel, code.codebook, config.oracle_budget);
            SimResult sim;
            if (config.trials > 0)
                sim = simulate_fer(channel, code.codebook, config.trials,
                                   SimOptions{config.seed, 1});

            for (const auto& name : config.eval.bounds) {
                const Row row =
                    evaluate_bound_row(name, spec, spectrum, config.eval, false);
                double value = std::numeric_limits<double>::quiet_NaN();
                bool ok = row.ok;
                if (ok) value = std::strtod(row.cells[7].c_str(), nullptr);

                // Exact margins must be non-negative up to 1e-12; the
                // simulated FER gets a 4-sigma allowance.
                double margin = value - exact;
                if (ok && margin < -1e-12) ok = false;
                if (ok && config.trials > 0 &&
                    sim.fer - value > 4.0 * sim.stderr_est + 1e-12)
                    ok = false;

                out << format_double(eps) << ',' << format_double(delta) << ',' << name
                    << ',' << (row.ok ? format_double(value) : "") << ','
                    << format_double(exact);
                if (config.trials > 0)
                    out << ',' << format_double(sim.fer) << ','
                        << format_double(sim.stderr_est);
                out << ',' << (row.ok ? format_double(margin) : "") << ','
                    << (ok ? "ok" : "fail") << "\n";
                all_ok = all_ok && ok;
            }
        }
    }
    out << (all_ok ? "# verify: all margins sound\n" : "# verify: FAILURES detected\n");
    return all_ok ? 0 : 1;
}

}  // namespace ferbound
