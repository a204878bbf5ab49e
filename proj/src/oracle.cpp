#include "ferbound/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace ferbound {

namespace {

// Support positions (indices with bit 1) of every nonzero codeword.
std::vector<std::vector<int>> codeword_supports(const Codebook& codebook) {
    std::vector<std::vector<int>> supports;
    supports.reserve(codebook.words.size());
    for (const auto& word : codebook.words) {
        std::vector<int> supp;
        for (int i = 0; i < codebook.n; ++i)
            if (word[static_cast<std::size_t>(i)]) supp.push_back(i);
        if (!supp.empty()) supports.push_back(std::move(supp));
    }
    return supports;
}

// Does any nonzero codeword match the received word at least as well as
// the all-zero word? Ties count.
bool any_pairwise_error(const BmsChannel& channel,
                        const std::vector<std::vector<int>>& supports,
                        const std::vector<int>& y, std::vector<int>& counts_scratch) {
    const int m = channel.half_width();
    for (const auto& supp : supports) {
        std::fill(counts_scratch.begin(), counts_scratch.end(), 0);
        for (int pos : supp)
            ++counts_scratch[static_cast<std::size_t>(y[static_cast<std::size_t>(pos)] + m)];
        if (is_error_type(channel, std::span<const int>(counts_scratch))) return true;
    }
    return false;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

double exact_ml_error(const BmsChannel& channel, const Codebook& codebook,
                      double enumeration_budget) {
    const int n = codebook.n;
    const int m = channel.half_width();

    // Outputs impossible under input 0 carry no probability; enumerate
    // over the input-0 support only.
    std::vector<int> support_symbols;
    for (int j = -m; j <= m; ++j)
        if (channel.p0(j) > 0.0) support_symbols.push_back(j);
    const double outputs = std::pow(static_cast<double>(support_symbols.size()),
                                    static_cast<double>(n));
    if (outputs > enumeration_budget)
        throw std::runtime_error("exact_ml_error: enumeration needs " +
                                 std::to_string(outputs) + " outputs, budget is " +
                                 std::to_string(enumeration_budget));

    const auto supports = codeword_supports(codebook);
    std::vector<int> counts(static_cast<std::size_t>(channel.alphabet_size()));
    std::vector<std::size_t> odo(static_cast<std::size_t>(n), 0);
    std::vector<int> y(static_cast<std::size_t>(n), support_symbols.empty() ? 0 : support_symbols[0]);

    KahanSum error_mass;
    if (support_symbols.empty()) return 0.0;
    for (;;) {
        double prob = 1.0;
        for (int i = 0; i < n; ++i) prob *= channel.p0(y[static_cast<std::size_t>(i)]);
        if (any_pairwise_error(channel, supports, y, counts)) error_mass.add(prob);

        int pos = 0;
        while (pos < n) {
            if (++odo[static_cast<std::size_t>(pos)] < support_symbols.size()) {
                y[static_cast<std::size_t>(pos)] =
                    support_symbols[odo[static_cast<std::size_t>(pos)]];
                break;
            }
            odo[static_cast<std::size_t>(pos)] = 0;
            y[static_cast<std::size_t>(pos)] = support_symbols[0];
            ++pos;
        }
        if (pos == n) break;
    }
    return std::min(1.0, error_mass.value());
}

SimResult simulate_fer(const BmsChannel& channel, const Codebook& codebook,
                       std::uint64_t trials, const SimOptions& options) {
    if (trials == 0) throw std::invalid_argument("simulate_fer: need at least one trial");
    const int n = codebook.n;
    const int m = channel.half_width();
    const auto supports = codeword_supports(codebook);

    // Cumulative input-0 distribution for inverse-CDF sampling.
    std::vector<double> cdf;
    std::vector<int> symbols;
    double acc = 0.0;
    for (int j = -m; j <= m; ++j) {
        if (channel.p0(j) == 0.0) continue;
        acc += channel.p0(j);
        cdf.push_back(acc);
        symbols.push_back(j);
    }
    cdf.back() = 1.0;  // absorb rounding in the last bucket

    const int workers = std::max(1, options.workers);
    std::vector<std::uint64_t> errors_per_worker(static_cast<std::size_t>(workers), 0);

    auto run_worker = [&](int widx) {
        std::uint64_t share = trials / static_cast<std::uint64_t>(workers);
        if (static_cast<std::uint64_t>(widx) < trials % static_cast<std::uint64_t>(workers))
            ++share;
        std::mt19937_64 rng(splitmix64(options.seed ^
                                       splitmix64(static_cast<std::uint64_t>(widx))));
        std::vector<int> y(static_cast<std::size_t>(n));
        std::vector<int> counts(static_cast<std::size_t>(channel.alphabet_size()));
        std::uint64_t errs = 0;
        for (std::uint64_t t = 0; t < share; ++t) {
            for (int i = 0; i < n; ++i) {
                const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
                std::size_t s = 0;
                while (u >= cdf[s]) ++s;
                y[static_cast<std::size_t>(i)] = symbols[s];
            }
            if (any_pairwise_error(channel, supports, y, counts)) ++errs;
        }
        errors_per_worker[static_cast<std::size_t>(widx)] = errs;
    };

    if (workers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
        for (auto& th : pool) th.join();
    }

    SimResult r;
    r.trials = trials;
    for (std::uint64_t e : errors_per_worker) r.errors += e;
    r.fer = static_cast<double>(r.errors) / static_cast<double>(trials);
    r.stderr_est = std::sqrt(r.fer * (1.0 - r.fer) / static_cast<double>(trials));
    r.seed = options.seed;
    return r;
}

namespace {

struct CandidateScore {
    bool possible = false;
    std::vector<int> flip_counts;  // flipped-position symbol counts, by j + M
};

// Sign of ll(a) - ll(b) for two possible candidates: the count
// differences pair up so every +-j pair multiplies one integer with one
// finite LLR magnitude, keeping exact ties exact.
int compare_possible(const BmsChannel& channel, const CandidateScore& a,
                     const CandidateScore& b) {
    const int m = channel.half_width();
    double sum = 0.0;
    for (int j = 1; j <= m; ++j) {
        const int d_minus = b.flip_counts[static_cast<std::size_t>(m - j)] -
                            a.flip_counts[static_cast<std::size_t>(m - j)];
        const int d_plus = b.flip_counts[static_cast<std::size_t>(m + j)] -
                           a.flip_counts[static_cast<std::size_t>(m + j)];
        const int diff = d_minus - d_plus;
        if (diff != 0) sum += diff * channel.llr(-j);
    }
    if (sum > 0.0) return 1;
    if (sum < 0.0) return -1;
    return 0;
}

}  // namespace

DecodeResult ml_decode(const BmsChannel& channel, const std::vector<int>& received,
                       const Codebook& codebook) {
    const int n = codebook.n;
    const int m = channel.half_width();
    if (static_cast<int>(received.size()) != n)
        throw std::invalid_argument("ml_decode: received length must equal the code length");
    for (int s : received)
        if (s < -m || s > m)
            throw std::invalid_argument("ml_decode: received symbol outside the alphabet");

    const std::size_t q = static_cast<std::size_t>(channel.alphabet_size());
    auto score = [&](const std::vector<std::uint8_t>& word) {
        CandidateScore cs;
        cs.flip_counts.assign(q, 0);
        cs.possible = true;
        for (int i = 0; i < n; ++i) {
            const int y = received[static_cast<std::size_t>(i)];
            if (word[static_cast<std::size_t>(i)]) {
                ++cs.flip_counts[static_cast<std::size_t>(y + m)];
                if (channel.p0(-y) == 0.0) cs.possible = false;
            } else {
                if (channel.p0(y) == 0.0) cs.possible = false;
            }
        }
        return cs;
    };

    DecodeResult result;
    CandidateScore best = score(codebook.words[0]);
    for (std::size_t idx = 1; idx < codebook.words.size(); ++idx) {
        CandidateScore cand = score(codebook.words[idx]);
        if (cand.possible != best.possible) {
            if (cand.possible) {
                best = std::move(cand);
                result.index = idx;
                result.tie = false;
            }
            continue;
        }
        if (!cand.possible) {  // both impossible: identical -inf likelihood
            result.tie = true;
            continue;
        }
        const int cmp = compare_possible(channel, cand, best);
        if (cmp > 0) {
            best = std::move(cand);
            result.index = idx;
            result.tie = false;
        } else if (cmp == 0) {
            result.tie = true;
        }
    }
    return result;
}

}  // namespace ferbound
