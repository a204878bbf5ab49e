#ifndef FERBOUND_TYPES_HPP
#define FERBOUND_TYPES_HPP

#include <span>
#include <vector>

#include "ferbound/logdomain.hpp"

// Non-normalized types (symbol occurrence counts) and lazy enumerators
// over them. A TypeVector of length q in a channel context indexes
// symbols j = -M..M as counts[j + M].

namespace ferbound {

struct TypeVector {
    std::vector<int> counts;
    int total = 0;  // invariant: total == sum(counts)

    TypeVector() = default;
    explicit TypeVector(std::vector<int> c);

    int size() const { return static_cast<int>(counts.size()); }
    int operator[](int i) const { return counts[static_cast<std::size_t>(i)]; }

    bool operator==(const TypeVector&) const = default;
};

// Enumerates compositions of `total` into `alphabet_size` non-negative
// parts, optionally box-constrained, in colexicographic order (the part
// vector compared from its last coordinate down). Lazy: O(q) state, the
// exposed TypeVector is mutated in place between next() calls.
//
// TypeEnumerator(2, 2) yields (2,0), (1,1), (0,2).
class TypeEnumerator {
public:
    TypeEnumerator(int total, int alphabet_size);

    // Box-constrained variant: parts satisfy 0 <= part[i] <= caps[i].
    // Yields nothing when total > sum(caps).
    TypeEnumerator(int total, std::span<const int> caps);

    // Returns the next composition, or nullptr when exhausted. The
    // pointee is invalidated by the following next() call.
    const TypeVector* next();

    // Restart with a new total against the same caps.
    void reset(int total);

private:
    std::vector<int> caps_;
    TypeVector current_;
    bool done_ = false;
    bool first_ = true;

    bool fill_lowest(int from, int amount);
    bool advance();
};

// Conditional non-normalized types: every mu with sum(mu) == w and
// 0 <= mu[i] <= ell[i]. Same order as the box-constrained enumerator.
inline TypeEnumerator subtype_enumerator(int w, const TypeVector& ell) {
    return TypeEnumerator(w, std::span<const int>(ell.counts));
}

// Number of compositions of n into q parts, C(n+q-1, q-1), as a double
// (test/diagnostic use).
double count_types(int n, int q);

// ln of the type-class size |T(counts)|.
inline double log_multinomial(const LogFactorials& lf, const TypeVector& counts) {
    return lf.multinomial(counts.total, counts.counts);
}

}  // namespace ferbound

#endif
