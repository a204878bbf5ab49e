#ifndef FERBOUND_BASELINES_HPP
#define FERBOUND_BASELINES_HPP

#include "ferbound/bounds.hpp"
#include "ferbound/channel.hpp"
#include "ferbound/spectrum.hpp"

// Comparison baselines: the random-coding exponent and the
// spectrum-penalized random-coding (Shulman-Feder) bound. Exponents are
// in bits; conversion to nats happens only at comparison boundaries.

namespace ferbound {

struct ExponentResult {
    double rate = 0.0;      // R, bits per channel use
    double exponent = 0.0;  // E_r(R), bits
    double rho_star = 0.0;  // maximizer in [0, 1]

    // The random-coding bound 2^(-n E_r) at block length n.
    double bound_for(int n) const;
};

// E_0(rho) in bits with uniform inputs:
// -log2 sum_y [ 1/2 p(y|0)^(1/(1+rho)) + 1/2 p(y|1)^(1/(1+rho)) ]^(1+rho).
double gallager_e0(const BmsChannel& channel, double rho);

// max over rho in [0,1] of E_0(rho) - rho R, by golden-section search
// (E_0 is concave in rho) to 1e-10 in rho.
ExponentResult gallager_exponent(const BmsChannel& channel, double rate_bits);

struct ShulmanFederResult {
    BoundResult bound;
    double log2_alpha = 0.0;      // worst spectrum/ensemble ratio, log2
    double effective_rate = 0.0;  // R + log2(alpha)/n
    ExponentResult exponent;      // E_r at the effective rate
};

// P_e <= 2^(-n E_r(R + log2(alpha)/n)), alpha maximized over the
// spectrum support. Needs the code dimension k.
ShulmanFederResult shulman_feder(const BmsChannel& channel, const WeightSpectrum& spectrum);

}  // namespace ferbound

#endif
