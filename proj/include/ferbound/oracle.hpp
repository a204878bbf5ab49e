#ifndef FERBOUND_ORACLE_HPP
#define FERBOUND_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "ferbound/channel.hpp"
#include "ferbound/spectrum.hpp"

// Ground truth at desk scale: exact ML frame error probability by
// exhaustive output enumeration, and Monte-Carlo FER simulation. Both
// count likelihood ties as errors, matching the bounds' convention, so
// oracle <= bound is the soundness check.

namespace ferbound {

struct SimResult {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double fer = 0.0;
    double stderr_est = 0.0;  // binomial standard error
    std::uint64_t seed = 0;
};

// Exact error probability conditioned on the all-zero codeword:
// sum over reachable outputs y of P(y|0) [exists c != 0 with
// P(y|c) >= P(y|0)]. Enumerates (support size)^n outputs; refuses when
// that exceeds the budget.
double exact_ml_error(const BmsChannel& channel, const Codebook& codebook,
                      double enumeration_budget = 1e7);

struct SimOptions {
    std::uint64_t seed = 1;
    int workers = 1;  // substreams derived from (seed, worker index)
};

// Transmits the all-zero word `trials` times; ML decoding with
// pessimistic ties. Reproducible for a fixed (seed, workers).
SimResult simulate_fer(const BmsChannel& channel, const Codebook& codebook,
                       std::uint64_t trials, const SimOptions& options = {});

struct DecodeResult {
    std::size_t index = 0;  // lowest-index maximizer
    bool tie = false;       // another codeword attains the same likelihood
};

// Full ML decoding of one received word.
DecodeResult ml_decode(const BmsChannel& channel,
                       const std::vector<int>& received,  // symbols in [-M, M]
                       const Codebook& codebook);

}  // namespace ferbound

#endif
