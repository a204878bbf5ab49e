#ifndef FERBOUND_SPECTRUM_HPP
#define FERBOUND_SPECTRUM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ferbound/bigint.hpp"
#include "ferbound/logdomain.hpp"

// Hamming weight spectra S_w of binary linear codes, stored in the log
// domain with an optional exact big-integer companion, plus explicit
// codebooks for the exhaustive oracle.

namespace ferbound {

struct WeightSpectrum {
    int n = 0;
    std::vector<double> log_s;       // size n+1; ln S_w, -inf for S_w = 0
    std::vector<BigUint> exact_s;    // empty unless the spectrum is exact
    std::optional<int> k;            // code dimension when known

    bool has_exact() const { return !exact_s.empty(); }

    // Smallest w >= 1 with S_w > 0; always derived, never trusted from
    // metadata.
    std::optional<int> d_min() const;

    double rate() const;  // k/n in bits; throws when k is unknown

    // Exact spectrum from integer counts (S_0 must be 1).
    static WeightSpectrum from_exact(int n, std::vector<BigUint> counts,
                                     std::optional<int> k = std::nullopt);
    // Log-domain spectrum (fractional ensemble spectra are first-class).
    static WeightSpectrum from_log(int n, std::vector<double> log_counts,
                                   std::optional<int> k = std::nullopt);
};

struct Codebook {
    int n = 0;
    std::vector<std::vector<std::uint8_t>> words;  // includes the all-zero word

    // XOR-closure check (the linearity invariant); quadratic, test use.
    bool is_linear() const;
};

struct GeneratorMatrix {
    int n = 0;
    int k = 0;
    std::vector<std::vector<std::uint8_t>> rows;
};

// Text format: one 0/1 row per line, optional spaces between digits.
GeneratorMatrix load_generator(const std::string& path);

// Average weight distribution of random linear codes:
// S_w = (2^k - 1) C(n,w) / (2^n - 1) for w >= 1, S_0 = 1. Log-domain only.
WeightSpectrum binomial_spectrum(int n, int k);

// ln of the ensemble-average S_w above; shared with the Shulman-Feder
// reference so the spectrum/reference ratio is exactly 1 for ensembles.
double log_binomial_ensemble_weight(int n, int k, int w, const LogFactorials& lf);

struct BruteForceResult {
    WeightSpectrum spectrum;
    Codebook codebook;
};

// Exhaustive 2^k enumeration; rejects rank-deficient generators and
// k beyond the budget.
BruteForceResult brute_force_spectrum(const GeneratorMatrix& generator,
                                      int max_k_budget = 24);

// CSV spectrum files: header "w,count", counts as exact decimal
// integers. n and k come from (in order of precedence) the explicit
// arguments, a JSON sidecar at <path>.json, or n = max listed w.
WeightSpectrum load_spectrum(const std::string& path,
                             std::optional<int> n = std::nullopt,
                             std::optional<int> k = std::nullopt);

// Writes the CSV plus the <path>.json sidecar; exact spectra only.
void save_spectrum(const WeightSpectrum& spectrum, const std::string& path);

}  // namespace ferbound

#endif
