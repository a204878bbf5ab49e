#include "ferbound/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "ferbound/types.hpp"

namespace ferbound {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int require_d_min(const WeightSpectrum& spectrum, const char* who) {
    const auto d = spectrum.d_min();
    if (!d)
        throw std::invalid_argument(std::string(who) +
                                    ": spectrum has no codeword of positive weight (d_min undefined)");
    return *d;
}

struct Support {
    std::vector<int> w;
    std::vector<double> log_s;
};

Support spectrum_support(const WeightSpectrum& spectrum) {
    Support s;
    for (int w = 1; w <= spectrum.n; ++w) {
        const double v = spectrum.log_s[static_cast<std::size_t>(w)];
        if (v != kNegInf) {
            s.w.push_back(w);
            s.log_s.push_back(v);
        }
    }
    return s;
}

BoundResult finalize(const LogAccumulator& union_m, const LogAccumulator& noise_m,
                     double pruned_log, std::uint64_t visited, Clock::time_point start) {
    BoundResult r;
    r.union_mass = union_m.value();
    r.noise_mass = noise_m.value();
    r.pruned_mass = pruned_log;
    r.log_p = log_sum_exp(r.union_mass, r.noise_mass, r.pruned_mass);
    r.p_upper = std::min(1.0, std::exp(r.log_p));
    r.types_visited = visited;
    r.wall_ms = elapsed_ms(start);
    return r;
}

// Fixed chunk decomposition processed by a work-stealing pool; callers
// merge per-chunk results in chunk-index order, so the outcome does not
// depend on the thread count.
template <typename Fn>
void run_chunks(int chunk_count, int threads, Fn&& process) {
    threads = std::clamp(threads, 1, std::max(1, chunk_count));
    if (threads == 1) {
        for (int i = 0; i < chunk_count; ++i) process(i);
        return;
    }
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next.fetch_add(1); i < chunk_count; i = next.fetch_add(1)) process(i);
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int t = 0; t + 1 < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

// Union-arm evaluation for one output type: the pairwise-error subtype
// masses summed over the spectrum support, stopping early once the
// running total reaches stop_at (the other arm of the min).
class UnionTermEvaluator {
public:
    UnionTermEvaluator(const BmsChannel& channel, const Support& support,
                       const LogFactorials& lf)
        : channel_(channel), support_(support), lf_(lf) {
        const int q = channel.alphabet_size();
        llr_order_.resize(static_cast<std::size_t>(q));
        std::iota(llr_order_.begin(), llr_order_.end(), 0);
        const auto llrs = channel.llr_row();
        std::stable_sort(llr_order_.begin(), llr_order_.end(),
                         [&](int a, int b) {
                             return llrs[static_cast<std::size_t>(a)] <
                                    llrs[static_cast<std::size_t>(b)];
                         });
        residual_.resize(static_cast<std::size_t>(q));
    }

    double eval(int n, std::span<const int> ell, double stop_at) {
        LogAccumulator acc;
        const int q = static_cast<int>(ell.size());
        for (std::size_t si = 0; si < support_.w.size(); ++si) {
            const int w = support_.w[si];
            if (no_error_subtype(w, ell)) continue;
            TypeEnumerator mu_en(w, ell);
            while (const TypeVector* mu = mu_en.next()) {
                if (!is_error_type(channel_, mu->counts)) continue;
                for (int i = 0; i < q; ++i)
                    residual_[static_cast<std::size_t>(i)] =
                        ell[static_cast<std::size_t>(i)] - mu->counts[static_cast<std::size_t>(i)];
                acc.add(support_.log_s[si] + lf_.multinomial(w, mu->counts) +
                        lf_.multinomial(n - w, residual_));
            }
            if (acc.value() >= stop_at) return acc.value();
        }
        return acc.value();
    }

private:
    // Greedy check: the smallest achievable LLR sum of a weight-w
    // subtype under the caps. Positive means no subtype of this w is a
    // pairwise error, so the enumeration can be skipped.
    bool no_error_subtype(int w, std::span<const int> caps) const {
        const auto llrs = channel_.llr_row();
        int rem = w;
        double sum = 0.0;
        for (int idx : llr_order_) {
            const int take = std::min(caps[static_cast<std::size_t>(idx)], rem);
            if (take > 0) {
                const double v = llrs[static_cast<std::size_t>(idx)];
                if (v == kPosInf) return true;  // forced onto symbols impossible under input 1
                sum += take * v;
                rem -= take;
            }
            if (rem == 0) break;
        }
        return sum > 0.0;
    }

    const BmsChannel& channel_;
    const Support& support_;
    const LogFactorials& lf_;
    std::vector<int> llr_order_;
    std::vector<int> residual_;
};

struct ChunkResult {
    LogAccumulator union_mass;
    LogAccumulator noise_mass;
    LogAccumulator pruned_mass;
    std::uint64_t visited = 0;
};

}  // namespace

BoundResult poltyrev_bsc(const WeightSpectrum& spectrum, double epsilon) {
    const auto start = Clock::now();
    if (epsilon < 0.0 || epsilon > 0.5)
        throw std::invalid_argument("poltyrev_bsc: epsilon must be in [0, 1/2]");
    require_d_min(spectrum, "poltyrev_bsc");
    const int n = spectrum.n;
    const LogFactorials lf(n);
    const Support support = spectrum_support(spectrum);
    const double log_e = epsilon > 0.0 ? std::log(epsilon) : kNegInf;
    const double log_1e = epsilon < 1.0 ? std::log1p(-epsilon) : kNegInf;

    LogAccumulator union_m, noise_m;
    std::uint64_t visited = 0;
    for (int l = 0; l <= n; ++l) {
        const double weight = log_pow(l, log_e) + log_pow(n - l, log_1e);
        if (weight == kNegInf) continue;
        ++visited;
        const double lm = lf.binomial(n, l);
        LogAccumulator acc;
        for (std::size_t si = 0; si < support.w.size(); ++si) {
            const int w = support.w[si];
            if (w > std::min(2 * l, n)) break;
            const int mu_lo = std::max((w + 1) / 2, l - (n - w));
            const int mu_hi = std::min(l, w);
            for (int mu = mu_lo; mu <= mu_hi; ++mu)
                acc.add(support.log_s[si] + lf.binomial(w, mu) + lf.binomial(n - w, l - mu));
            if (acc.value() >= lm) break;
        }
        const double union_log = acc.value();
        if (union_log >= lm)
            noise_m.add(weight + lm);
        else
            union_m.add(weight + union_log);
    }
    return finalize(union_m, noise_m, kNegInf, visited, start);
}

int zeta_star(const WeightSpectrum& spectrum, double epsilon) {
    (void)epsilon;  // the inequality does not involve the channel parameter
    const int n = spectrum.n;
    if (!spectrum.d_min()) return n + 1;
    const LogFactorials lf(n);
    const Support support = spectrum_support(spectrum);
    for (int l = 0; l <= n; ++l) {
        const double lm = lf.binomial(n, l);
        LogAccumulator acc;
        bool reached = false;
        for (std::size_t si = 0; si < support.w.size() && !reached; ++si) {
            const int w = support.w[si];
            if (w > std::min(2 * l, n)) break;
            const int mu_lo = std::max((w + 1) / 2, l - (n - w));
            const int mu_hi = std::min(l, w);
            for (int mu = mu_lo; mu <= mu_hi; ++mu)
                acc.add(support.log_s[si] + lf.binomial(w, mu) + lf.binomial(n - w, l - mu));
            reached = acc.value() >= lm;
        }
        if (reached || acc.value() >= lm) return l;
    }
    return n + 1;
}

BoundResult extended_bound(const BmsChannel& channel, const WeightSpectrum& spectrum,
                           const BoundOptions& options) {
    const auto start = Clock::now();
    require_d_min(spectrum, "extended_bound");
    const int n = spectrum.n;
    const int q = channel.alphabet_size();
    const LogFactorials lf(n);
    const Support support = spectrum_support(spectrum);
    const bool pruning = options.prune_log_threshold.has_value();
    const double threshold = pruning ? *options.prune_log_threshold : kNegInf;

    // Chunk by the last symbol's count: colex-contiguous, fixed, and
    // independent of the thread count.
    const int chunk_count = n + 1;
    std::vector<ChunkResult> chunks(static_cast<std::size_t>(chunk_count));

    run_chunks(chunk_count, options.threads, [&](int c) {
        ChunkResult& out = chunks[static_cast<std::size_t>(c)];
        UnionTermEvaluator evaluator(channel, support, lf);
        std::vector<int> counts(static_cast<std::size_t>(q), 0);

        auto process = [&](std::span<const int> ell) {
            const double ltp = log_type_probability(channel, ell);
            if (ltp == kNegInf) return;  // unreachable type, zero mass
            const double lm = lf.multinomial(n, ell);
            if (pruning && lm + ltp < threshold) {
                // The skipped type's whole probability is added back, so
                // the result stays an upper bound.
                out.pruned_mass.add(lm + ltp);
                return;
            }
            ++out.visited;
            const double union_log = evaluator.eval(n, ell, lm);
            if (union_log >= lm)
                out.noise_mass.add(ltp + lm);
            else
                out.union_mass.add(ltp + union_log);
        };

        if (q == 1) {
            if (c == n) {
                counts[0] = n;
                process(counts);
            }
            return;
        }
        counts[static_cast<std::size_t>(q - 1)] = c;
        TypeEnumerator en(n - c, q - 1);
        while (const TypeVector* head = en.next()) {
            std::copy(head->counts.begin(), head->counts.end(), counts.begin());
            process(counts);
        }
    });

    LogAccumulator union_m, noise_m, pruned_m;
    std::uint64_t visited = 0;
    for (const ChunkResult& c : chunks) {
        union_m.merge(c.union_mass);
        noise_m.merge(c.noise_mass);
        pruned_m.merge(c.pruned_mass);
        visited += c.visited;
    }
    return finalize(union_m, noise_m, pruned_m.value(), visited, start);
}

BoundResult bec_bound(const WeightSpectrum& spectrum, double delta) {
    const auto start = Clock::now();
    if (delta < 0.0 || delta > 1.0)
        throw std::invalid_argument("bec_bound: delta must be in [0, 1]");
    require_d_min(spectrum, "bec_bound");
    const int n = spectrum.n;
    const LogFactorials lf(n);
    const Support support = spectrum_support(spectrum);
    const double log_d = delta > 0.0 ? std::log(delta) : kNegInf;
    const double log_1d = delta < 1.0 ? std::log1p(-delta) : kNegInf;

    LogAccumulator union_m, noise_m;
    std::uint64_t visited = 0;
    for (int l = 0; l <= n; ++l) {
        const double weight = log_pow(l, log_d) + log_pow(n - l, log_1d);
        if (weight == kNegInf) continue;
        ++visited;
        const double lm = lf.binomial(n, l);
        LogAccumulator acc;
        for (std::size_t si = 0; si < support.w.size(); ++si) {
            const int w = support.w[si];
            if (w > l) break;
            acc.add(support.log_s[si] + lf.binomial(n - w, l - w));
            if (acc.value() >= lm) break;
        }
        const double union_log = acc.value();
        if (union_log >= lm)
            noise_m.add(weight + lm);
        else
            union_m.add(weight + union_log);
    }
    return finalize(union_m, noise_m, kNegInf, visited, start);
}

BoundResult bsc_bec_bound(const WeightSpectrum& spectrum, double epsilon, double delta) {
    const auto start = Clock::now();
    if (epsilon < 0.0 || epsilon > 0.5 || delta < 0.0 || delta > 1.0 ||
        epsilon + delta > 1.0)
        throw std::invalid_argument(
            "bsc_bec_bound: need epsilon in [0, 1/2], delta in [0, 1], epsilon + delta <= 1");
    require_d_min(spectrum, "bsc_bec_bound");
    const int n = spectrum.n;
    const LogFactorials lf(n);
    const Support support = spectrum_support(spectrum);
    const double log_e = epsilon > 0.0 ? std::log(epsilon) : kNegInf;
    const double log_d = delta > 0.0 ? std::log(delta) : kNegInf;
    const double rest = 1.0 - epsilon - delta;
    const double log_r = rest > 0.0 ? std::log(rest) : kNegInf;

    LogAccumulator union_m, noise_m;
    std::uint64_t visited = 0;
    for (int l = 0; l <= n; ++l) {
        for (int u = 0; u <= n - l; ++u) {
            const double weight =
                log_pow(l, log_e) + log_pow(u, log_d) + log_pow(n - l - u, log_r);
            if (weight == kNegInf) continue;
            ++visited;
            const double lm = lf.trinomial(n, l, u);
            LogAccumulator acc;
            for (std::size_t si = 0; si < support.w.size(); ++si) {
                const int w = support.w[si];
                const int rho_hi = std::min(u, w);
                for (int rho = 0; rho <= rho_hi; ++rho) {
                    // mu >= ceil((w - rho)/2), ties included; upper limits
                    // keep every multinomial part non-negative.
                    const int mu_lo =
                        std::max((w - rho + 1) / 2, l + u - rho - (n - w));
                    const int mu_hi = std::min({l, w - rho});
                    for (int mu = mu_lo; mu <= mu_hi; ++mu)
                        acc.add(support.log_s[si] + lf.trinomial(w, mu, rho) +
                                lf.trinomial(n - w, l - mu, u - rho));
                }
                if (acc.value() >= lm) break;
            }
            const double union_log = acc.value();
            if (union_log >= lm)
                noise_m.add(weight + lm);
            else
                union_m.add(weight + union_log);
        }
    }
    return finalize(union_m, noise_m, kNegInf, visited, start);
}

BoundResult quinary_bound(const WeightSpectrum& spectrum, double epsilon, double delta,
                          double gamma) {
    // The general path is normative for this channel class.
    return extended_bound(make_quinary(epsilon, delta, gamma), spectrum);
}

namespace {

void validate_limits(const BmsChannel& channel, const WeightSpectrum& spectrum,
                     const RectLimits& limits, const char* who) {
    const std::size_t expected = 2 * static_cast<std::size_t>(channel.half_width());
    if (limits.m.size() != expected)
        throw std::invalid_argument(std::string(who) + ": limits must have 2M = " +
                                    std::to_string(expected) + " entries");
    for (int v : limits.m)
        if (v < 0 || v > spectrum.n)
            throw std::invalid_argument(std::string(who) + ": caps must lie in [0, n]");
}

struct RectFirstTerm {
    LogAccumulator union_mass;
    LogAccumulator noise_mass;
    KahanSum inside_prob;
    std::uint64_t visited = 0;
};

// The min-sum of the general bound restricted to the rectangular type
// set: caps on every symbol except -M, whose count absorbs the rest.
RectFirstTerm rect_first_term(const BmsChannel& channel, const WeightSpectrum& spectrum,
                              const RectLimits& limits, const LogFactorials& lf,
                              const Support& support) {
    const int n = spectrum.n;
    const int q = channel.alphabet_size();
    RectFirstTerm out;
    UnionTermEvaluator evaluator(channel, support, lf);
    std::vector<int> counts(static_cast<std::size_t>(q), 0);

    auto process = [&](std::span<const int> ell) {
        const double ltp = log_type_probability(channel, ell);
        if (ltp == kNegInf) return;
        const double lm = lf.multinomial(n, ell);
        out.inside_prob.add(std::exp(lm + ltp));
        ++out.visited;
        const double union_log = evaluator.eval(n, ell, lm);
        if (union_log >= lm)
            out.noise_mass.add(ltp + lm);
        else
            out.union_mass.add(ltp + union_log);
    };

    if (q == 1) {
        counts[0] = n;
        process(counts);
        return out;
    }
    const int cap_total = std::accumulate(limits.m.begin(), limits.m.end(), 0);
    for (int s = 0; s <= std::min(n, cap_total); ++s) {
        TypeEnumerator en(s, std::span<const int>(limits.m));
        while (const TypeVector* capped = en.next()) {
            counts[0] = n - s;
            std::copy(capped->counts.begin(), capped->counts.end(), counts.begin() + 1);
            process(counts);
        }
    }
    return out;
}

bool covers_all_types(const RectLimits& limits, int n) {
    return std::all_of(limits.m.begin(), limits.m.end(), [n](int v) { return v >= n; });
}

}  // namespace

BoundResult rect_bound(const BmsChannel& channel, const WeightSpectrum& spectrum,
                       const RectLimits& limits) {
    const auto start = Clock::now();
    validate_limits(channel, spectrum, limits, "rect_bound");
    require_d_min(spectrum, "rect_bound");
    const LogFactorials lf(spectrum.n);
    const Support support = spectrum_support(spectrum);
    RectFirstTerm first = rect_first_term(channel, spectrum, limits, lf, support);

    // Outside-rectangle mass, 1 - sum(inside); exactly zero when the
    // caps cover every type.
    if (!covers_all_types(limits, spectrum.n) && channel.alphabet_size() > 1) {
        const double outside = first.inside_prob.complement_from_one();
        if (outside > 0.0) first.noise_mass.add(std::log(outside));
    }
    return finalize(first.union_mass, first.noise_mass, kNegInf, first.visited, start);
}

BoundResult rect_bound_chernoff(const BmsChannel& channel, const WeightSpectrum& spectrum,
                                const RectLimits& limits) {
    const auto start = Clock::now();
    validate_limits(channel, spectrum, limits, "rect_bound_chernoff");
    require_d_min(spectrum, "rect_bound_chernoff");
    const int n = spectrum.n;
    const int m_half = channel.half_width();

    // Validity regime first: m_j/n may not fall below the symbol
    // probability (equality is allowed, the tail term is then 1).
    for (int j = -m_half + 1; j <= m_half; ++j) {
        const double p = channel.p0(j);
        const double cap = limits.m[static_cast<std::size_t>(j + m_half - 1)];
        if (p > 0.0 && cap / n < p)
            throw std::invalid_argument(
                "rect_bound_chernoff: cap for symbol j = " + std::to_string(j) +
                " gives m_j/n < p0(j); outside the Chernoff regime");
    }

    const LogFactorials lf(n);
    const Support support = spectrum_support(spectrum);
    RectFirstTerm first = rect_first_term(channel, spectrum, limits, lf, support);

    for (int j = -m_half + 1; j <= m_half; ++j) {
        const double p = channel.p0(j);
        if (p == 0.0) continue;  // the symbol never occurs under input 0
        const double frac = limits.m[static_cast<std::size_t>(j + m_half - 1)] /
                            static_cast<double>(n);
        first.noise_mass.add(-static_cast<double>(n) * kl_bernoulli(frac, p));
    }
    return finalize(first.union_mass, first.noise_mass, kNegInf, first.visited, start);
}

RectLimits choose_rect(const BmsChannel& channel, int n, double sigma_count) {
    if (sigma_count <= 0.0)
        throw std::invalid_argument("choose_rect: sigma_count must be positive");
    RectLimits limits;
    const int m_half = channel.half_width();
    limits.m.reserve(2 * static_cast<std::size_t>(m_half));
    for (int j = -m_half + 1; j <= m_half; ++j) {
        const double p = channel.p0(j);
        const double cap =
            std::ceil(n * p + sigma_count * std::sqrt(n * p * (1.0 - p)));
        limits.m.push_back(static_cast<int>(std::min(cap, static_cast<double>(n))));
    }
    return limits;
}

double kl_bernoulli(double p, double q) {
    double r = 0.0;
    if (p > 0.0) r += q > 0.0 ? p * std::log(p / q) : kPosInf;
    if (p < 1.0) r += q < 1.0 ? (1.0 - p) * std::log((1.0 - p) / (1.0 - q)) : kPosInf;
    return r;
}

}  // namespace ferbound
