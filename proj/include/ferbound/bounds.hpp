#ifndef FERBOUND_BOUNDS_HPP
#define FERBOUND_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ferbound/channel.hpp"
#include "ferbound/logdomain.hpp"
#include "ferbound/spectrum.hpp"

// Upper bounds on the maximum-likelihood frame error rate of binary
// linear codes over BMS channels: the classic weight-enumerator bound
// for the BSC, its extension to general discrete symmetric outputs via
// the method of types, the closed-form channel specializations, the
// reduced-complexity rectangular-search variants, and the Chernoff-tail
// variant. Everything is evaluated in the log domain with deterministic
// accumulation.

namespace ferbound {

struct BoundResult {
    double p_upper = 0.0;   // clamped to [0, 1]
    double log_p = kNegInf;  // unclamped ln of the accumulated total
    double union_mass = kNegInf;   // ln mass of types where the union arm won
    double noise_mass = kNegInf;   // ln mass of the large-noise region
    double pruned_mass = kNegInf;  // ln mass of skipped types, added into p_upper
    std::uint64_t types_visited = 0;
    double wall_ms = 0.0;
};

// Per-bound evaluation options. prune_log_threshold skips output types
// whose ln probability falls below it; the skipped mass is recovered as
// the exact complement of the retained totals and added back, so the
// result stays a valid upper bound. threads > 1 partitions the outer
// type enumeration into fixed chunks merged in chunk order, which keeps
// results byte-identical across thread counts.
struct BoundOptions {
    std::optional<double> prune_log_threshold;
    int threads = 1;
};

// Classic BSC bound: sum over flip counts of
// eps^l (1-eps)^(n-l) min{ sum_w S_w sum_mu C(w,mu) C(n-w,l-mu), C(n,l) }.
BoundResult poltyrev_bsc(const WeightSpectrum& spectrum, double epsilon);

// Smallest l whose union count reaches C(n,l); n+1 when none does.
// Diagnostic; independent of epsilon.
int zeta_star(const WeightSpectrum& spectrum, double epsilon);

// The general bound over an arbitrary BMS channel: for every output
// type, min{ union of pairwise-error subtype masses, the type's own
// count }, weighted by the type probability.
BoundResult extended_bound(const BmsChannel& channel, const WeightSpectrum& spectrum,
                           const BoundOptions& options = {});

// Closed-form specialization for the erasure channel.
BoundResult bec_bound(const WeightSpectrum& spectrum, double delta);

// Closed-form specialization for the hybrid BSC-BEC channel (flips l,
// erasures u, error condition mu >= (w - rho)/2 with ties included).
BoundResult bsc_bec_bound(const WeightSpectrum& spectrum, double epsilon, double delta);

// Quinary channel bound; evaluated through the general path.
BoundResult quinary_bound(const WeightSpectrum& spectrum, double epsilon, double delta,
                          double gamma);

// Occurrence caps for every symbol except -M (the most likely under
// input 0), indexed j = -M+1 .. M.
struct RectLimits {
    std::vector<int> m;
};

// Reduced-complexity bound: the general min-sum restricted to the
// rectangular type set, plus the exact probability of falling outside
// it (computed as the complement of the inside total).
BoundResult rect_bound(const BmsChannel& channel, const WeightSpectrum& spectrum,
                       const RectLimits& limits);

// Looser tail: the outside mass is replaced by a per-symbol Chernoff
// union, sum_j exp(-n D(m_j/n || p0_j)). Requires m_j/n >= p0_j for
// every capped symbol with p0_j > 0; zero-probability symbols never
// occur and contribute nothing.
BoundResult rect_bound_chernoff(const BmsChannel& channel, const WeightSpectrum& spectrum,
                                const RectLimits& limits);

// Mean + sigma_count standard deviations of each capped symbol's
// occurrence count, rounded up and clamped to n.
RectLimits choose_rect(const BmsChannel& channel, int n, double sigma_count = 8.0);

// Binary KL divergence D(p || q) in nats.
double kl_bernoulli(double p, double q);

}  // namespace ferbound

#endif
