#include "ferbound/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ferbound {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

BmsChannel::BmsChannel(std::vector<double> row) : p0_(std::move(row)) {
    require(!p0_.empty() && p0_.size() % 2 == 1,
            "BmsChannel: p0 must have odd length 2M+1");
    half_width_ = static_cast<int>(p0_.size() / 2);
    double sum = 0.0;
    for (double p : p0_) {
        require(in_unit(p), "BmsChannel: probabilities must lie in [0,1]");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "BmsChannel: p0 must sum to 1 within 1e-12");
    for (double& p : p0_) p /= sum;  // renormalized exactly once

    const std::size_t q = p0_.size();
    log_p0_.resize(q);
    for (std::size_t i = 0; i < q; ++i)
        log_p0_[i] = p0_[i] > 0.0 ? std::log(p0_[i]) : kNegInf;

    // LLRs built antisymmetric by construction: compute for j > 0 and
    // mirror. Both-zero pairs get 0 (unreachable, never observed).
    llr_.assign(q, 0.0);
    for (int j = 1; j <= half_width_; ++j) {
        const double pj = p0(j);
        const double pm = p0(-j);
        double v = 0.0;
        if (pj > 0.0 && pm > 0.0)
            v = std::log(pj) - std::log(pm);
        else if (pj > 0.0)
            v = kPosInf;
        else if (pm > 0.0)
            v = kNegInf;
        llr_[static_cast<std::size_t>(j + half_width_)] = v;
        llr_[static_cast<std::size_t>(half_width_ - j)] = -v;
    }
}

BmsChannel make_bsc(double epsilon) {
    require(epsilon >= 0.0 && epsilon <= 0.5, "make_bsc: epsilon must be in [0, 1/2]");
    return BmsChannel({1.0 - epsilon, 0.0, epsilon});
}

BmsChannel make_bec(double delta) {
    require(in_unit(delta), "make_bec: delta must be in [0, 1]");
    return BmsChannel({1.0 - delta, delta, 0.0});
}

BmsChannel make_bsc_bec(double epsilon, double delta) {
    require(epsilon >= 0.0 && epsilon <= 0.5, "make_bsc_bec: epsilon must be in [0, 1/2]");
    require(in_unit(delta), "make_bsc_bec: delta must be in [0, 1]");
    require(epsilon + delta <= 1.0, "make_bsc_bec: epsilon + delta must be <= 1");
    return BmsChannel({1.0 - epsilon - delta, delta, epsilon});
}

BmsChannel make_quinary(double epsilon, double delta, double gamma) {
    require(epsilon >= 0.0 && delta >= 0.0 && gamma >= 0.0,
            "make_quinary: parameters must be non-negative");
    require(epsilon + delta + gamma <= 1.0,
            "make_quinary: epsilon + delta + gamma must be <= 1");
    // j = -2: strong correct, -1: weak correct, 0: erasure, +1: weak
    // error; a strong error (+2) never happens.
    return BmsChannel({1.0 - epsilon - delta - gamma, gamma, delta, epsilon, 0.0});
}

ExtendedReal llr(const BmsChannel& channel, int j) { return channel.llr(j); }

bool is_error_type(const BmsChannel& channel, std::span<const int> mu_counts) {
    const int m = channel.half_width();
    const auto llrs = channel.llr_row();

    bool has_neg_inf = false;
    for (int i = 0; i < static_cast<int>(mu_counts.size()); ++i) {
        if (mu_counts[static_cast<std::size_t>(i)] == 0) continue;
        const double v = llrs[static_cast<std::size_t>(i)];
        if (v == kPosInf) return false;
        if (v == kNegInf) has_neg_inf = true;
    }
    if (has_neg_inf) return true;

    // Finite part, paired so that each +-j pair contributes one product
    // of an integer difference with one LLR magnitude; ties stay exact.
    double sum = 0.0;
    for (int j = 1; j <= m; ++j) {
        const int diff = mu_counts[static_cast<std::size_t>(m - j)] -
                         mu_counts[static_cast<std::size_t>(m + j)];
        if (diff != 0) sum += diff * llrs[static_cast<std::size_t>(m - j)];
    }
    return sum <= 0.0;
}

bool is_error_type(const BmsChannel& channel, const TypeVector& mu) {
    return is_error_type(channel, std::span<const int>(mu.counts));
}

double log_type_probability(const BmsChannel& channel, std::span<const int> ell_counts) {
    const auto logs = channel.log_p0_row();
    double sum = 0.0;
    for (std::size_t i = 0; i < ell_counts.size(); ++i) {
        const int c = ell_counts[i];
        if (c == 0) continue;  // 0^0 = 1
        if (logs[i] == kNegInf) return kNegInf;
        sum += c * logs[i];
    }
    return sum;
}

double log_type_probability(const BmsChannel& channel, const TypeVector& ell) {
    return log_type_probability(channel, std::span<const int>(ell.counts));
}

}  // namespace ferbound
