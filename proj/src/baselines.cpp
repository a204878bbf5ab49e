#include "ferbound/baselines.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ferbound {

double ExponentResult::bound_for(int n) const {
    return std::min(1.0, std::exp2(-static_cast<double>(n) * exponent));
}

double gallager_e0(const BmsChannel& channel, double rho) {
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("gallager_e0: rho must be in [0, 1]");
    const int m = channel.half_width();
    const double s = 1.0 / (1.0 + rho);
    double total = 0.0;
    for (int y = -m; y <= m; ++y) {
        const double p0 = channel.p0(y);
        const double p1 = channel.p0(-y);  // P(y|1) by symmetry
        if (p0 == 0.0 && p1 == 0.0) continue;
        const double inner = 0.5 * std::pow(p0, s) + 0.5 * std::pow(p1, s);
        total += std::pow(inner, 1.0 + rho);
    }
    return -std::log2(total);
}

ExponentResult gallager_exponent(const BmsChannel& channel, double rate_bits) {
    if (rate_bits < 0.0 || rate_bits > 1.0)
        throw std::invalid_argument("gallager_exponent: rate must be in [0, 1]");
    const auto f = [&](double rho) { return gallager_e0(channel, rho) - rho * rate_bits; };

    // Golden-section search on the concave maximand.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 1.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-10) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double rho = 0.5 * (a + b);
    double best = f(rho);
    // The endpoints guard boundary maximizers (R >= capacity, R = 0).
    for (double cand : {0.0, 1.0}) {
        const double v = f(cand);
        if (v > best || (v == best && cand < rho)) {
            best = v;
            rho = cand;
        }
    }
    ExponentResult r;
    r.rate = rate_bits;
    r.exponent = std::max(0.0, best);
    r.rho_star = r.exponent > 0.0 ? rho : 0.0;
    return r;
}

ShulmanFederResult shulman_feder(const BmsChannel& channel, const WeightSpectrum& spectrum) {
    const auto start = std::chrono::steady_clock::now();
    if (!spectrum.k)
        throw std::invalid_argument("shulman_feder: spectrum must carry the code dimension k");
    const int n = spectrum.n;
    const int k = *spectrum.k;
    const LogFactorials lf(n);

    // alpha = max over the spectrum support of S_w / ensemble S_w.
    double ln_alpha = kNegInf;
    for (int w = 1; w <= n; ++w) {
        const double ls = spectrum.log_s[static_cast<std::size_t>(w)];
        if (ls == kNegInf) continue;
        ln_alpha = std::max(ln_alpha, ls - log_binomial_ensemble_weight(n, k, w, lf));
    }
    if (ln_alpha == kNegInf)
        throw std::invalid_argument("shulman_feder: spectrum has no codeword of positive weight");

    ShulmanFederResult r;
    r.log2_alpha = ln_alpha / std::log(2.0);
    r.effective_rate = spectrum.rate() + r.log2_alpha / n;
    r.exponent = gallager_exponent(channel, std::min(1.0, std::max(0.0, r.effective_rate)));

    r.bound.log_p = -static_cast<double>(n) * r.exponent.exponent * std::log(2.0);
    r.bound.p_upper = std::min(1.0, std::exp(r.bound.log_p));
    r.bound.noise_mass = r.bound.log_p;  // single-term bound, no region split
    r.bound.types_visited = 0;
    r.bound.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    return r;
}

}  // namespace ferbound
