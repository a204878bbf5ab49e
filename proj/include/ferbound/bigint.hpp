#ifndef FERBOUND_BIGINT_HPP
#define FERBOUND_BIGINT_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Arbitrary-precision unsigned integers for exact combinatorics: weight
// spectrum counts, exact binomials, and the exact-mode test paths. Only
// what those need: add, subtract (underflow throws), multiply, decimal
// round-trip, natural log.

namespace ferbound {

class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v);  // NOLINT(google-explicit-constructor)

    static BigUint from_decimal(std::string_view text);
    static BigUint pow2(int k);

    bool is_zero() const { return limbs_.empty(); }

    BigUint& operator+=(const BigUint& rhs);
    BigUint& operator-=(const BigUint& rhs);  // throws if rhs > *this
    BigUint& operator*=(const BigUint& rhs);

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
    friend BigUint operator*(BigUint a, const BigUint& b) { return a *= b; }

    std::strong_ordering operator<=>(const BigUint& rhs) const;
    bool operator==(const BigUint& rhs) const = default;

    std::string to_decimal() const;

    // Natural log; -inf for zero. Accurate to a few ulp regardless of size.
    double log() const;

private:
    // Little-endian limbs, base 1e9; no leading zero limb; empty == 0.
    std::vector<std::uint32_t> limbs_;

    void trim();
};

// Exact C(n, k); zero when k is outside [0, n].
BigUint exact_binomial(int n, int k);

}  // namespace ferbound

#endif
