#ifndef FERBOUND_SWEEP_HPP
#define FERBOUND_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ferbound/bounds.hpp"
#include "ferbound/channel.hpp"
#include "ferbound/spectrum.hpp"

// Batch evaluation: single points, parameter sweeps and oracle
// verification runs, emitting deterministic CSV. Shared between the CLI
// and the test suites so both drive identical code.

namespace ferbound {

inline constexpr const char* kToolVersion = "0.1.0";

struct ChannelSpec {
    enum class Family { Bsc, Bec, BscBec, Quinary, Raw };
    Family family = Family::Bsc;
    double eps = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
    std::vector<double> p0;  // Raw only

    std::string family_name() const;
};

BmsChannel make_channel(const ChannelSpec& spec);

// Where the weight spectrum comes from: a CSV file, the binomial
// ensemble, or a brute-forced generator matrix.
struct SpectrumSpec {
    std::string file;
    std::optional<int> n;
    std::optional<int> k;
    std::optional<int> binomial_n;
    std::optional<int> binomial_k;
    std::string generator_file;
};

WeightSpectrum resolve_spectrum(const SpectrumSpec& spec);

struct EvalSettings {
    std::vector<std::string> bounds;      // extended, poltyrev, bec, bsc-bec,
                                          // quinary, rect, chernoff, sf, gallager
    std::optional<std::vector<int>> rect_m;
    double rect_sigma = 8.0;
    std::optional<double> prune_target;   // threshold = ln(target) - prune_offset
    double prune_offset = 30.0;
    int bound_threads = 1;                // intra-bound chunk workers
};

struct SweepConfig {
    ChannelSpec channel;
    std::string swept_param;  // "eps", "delta" or "gamma"
    double start = 0.0;
    double stop = 0.0;
    int points = 1;
    enum class Spacing { Auto, Linear, Log };
    Spacing spacing = Spacing::Auto;
    SpectrumSpec spectrum;
    EvalSettings eval;
    int threads = 1;  // sweep-point workers (not hashed; results identical)
};

// The grid the sweep will evaluate (spacing resolved, determinism
// guaranteed by fixed arithmetic).
std::vector<double> sweep_points(const SweepConfig& config);

// FNV-1a over the canonical serialization of the semantic fields
// (threads and output destination excluded).
std::uint64_t config_hash(const SweepConfig& config);

// One CSV row per (point x bound); trailer comment with version and
// config hash. Returns 0, or 1 when any point failed (its rows carry
// status=error).
int run_sweep(const SweepConfig& config, std::ostream& out);

// Single-point evaluation; same columns plus wall_ms.
int run_bound(const ChannelSpec& channel, const SpectrumSpec& spectrum,
              const EvalSettings& eval, std::ostream& out);

struct VerifyConfig {
    ChannelSpec channel;               // gamma fixed; eps/delta grids below
    std::vector<double> eps_grid;      // empty = the spec's fixed value
    std::vector<double> delta_grid;
    std::string generator_file;        // oracle needs an explicit codebook
    SpectrumSpec spectrum;             // bounds input; defaults to the
                                       // brute-forced generator spectrum
    EvalSettings eval;
    std::uint64_t trials = 0;          // 0 = exact oracle only
    std::uint64_t seed = 1;
    double oracle_budget = 1e7;
};

// Bounds beside ground truth; reports the soundness margin per point.
// Returns 0 when every margin >= -1e-12 (simulation margins get a
// 4-sigma statistical allowance), 1 otherwise.
int run_verify(const VerifyConfig& config, std::ostream& out);

// Shortest round-trip decimal formatting (std::to_chars); the CSV
// determinism contract depends on it.
std::string format_double(double v);

}  // namespace ferbound

#endif
