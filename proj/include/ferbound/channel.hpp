#ifndef FERBOUND_CHANNEL_HPP
#define FERBOUND_CHANNEL_HPP

#include <span>
#include <vector>

#include "ferbound/logdomain.hpp"
#include "ferbound/types.hpp"

// Binary-input memoryless symmetric channels with discrete output
// alphabet {-M, ..., M}. Only the input-0 row is stored; the input-1 row
// is its mirror image, P(y|1) = p0(-y). Per-symbol LLRs are extended
// reals carried as doubles: +inf marks outputs impossible under input 1,
// -inf outputs impossible under input 0.

namespace ferbound {

// Extended-real LLR values. IEEE doubles carry them directly; the one
// forbidden combination, (+inf) + (-inf), never arises because types
// containing zero-probability symbols are skipped before LLR sums form.
using ExtendedReal = double;

class BmsChannel {
public:
    // Raw constructor: p0 over j = -M..M, odd length. Entries must be
    // in [0,1] and sum to 1 within 1e-12 absolute; the stored row is
    // renormalized exactly once.
    explicit BmsChannel(std::vector<double> p0);

    int half_width() const { return half_width_; }
    int alphabet_size() const { return 2 * half_width_ + 1; }

    double p0(int j) const { return p0_[static_cast<std::size_t>(j + half_width_)]; }
    double log_p0(int j) const { return log_p0_[static_cast<std::size_t>(j + half_width_)]; }
    ExtendedReal llr(int j) const { return llr_[static_cast<std::size_t>(j + half_width_)]; }

    // Neither input can produce this symbol.
    bool unreachable(int j) const {
        return p0(j) == 0.0 && p0(-j) == 0.0;
    }

    std::span<const double> p0_row() const { return p0_; }
    std::span<const double> log_p0_row() const { return log_p0_; }
    std::span<const ExtendedReal> llr_row() const { return llr_; }

private:
    int half_width_ = 0;
    std::vector<double> p0_;
    std::vector<double> log_p0_;
    std::vector<ExtendedReal> llr_;
};

// The four channel classes. Parameters are probabilities; violations of
// the stated constraints raise std::invalid_argument.
BmsChannel make_bsc(double epsilon);                               // eps in [0, 1/2]
BmsChannel make_bec(double delta);                                 // delta in [0, 1]
BmsChannel make_bsc_bec(double epsilon, double delta);             // eps+delta <= 1
BmsChannel make_quinary(double epsilon, double delta, double gamma);

ExtendedReal llr(const BmsChannel& channel, int j);

// Pairwise-error membership: sum_j mu[j]*llr[j] <= 0 under extended-real
// arithmetic. Any +inf term forces false; otherwise any -inf term forces
// true; ties (sum exactly zero) count as errors. mu indexes the channel
// alphabet, mu[j + M].
bool is_error_type(const BmsChannel& channel, const TypeVector& mu);
bool is_error_type(const BmsChannel& channel, std::span<const int> mu_counts);

// ln prod_j p0(j)^{ell_j}, with 0^0 = 1; -inf when a zero-probability
// symbol has positive count.
double log_type_probability(const BmsChannel& channel, const TypeVector& ell);
double log_type_probability(const BmsChannel& channel, std::span<const int> ell_counts);

}  // namespace ferbound

#endif
