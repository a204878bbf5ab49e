#include "ferbound/types.hpp"

#include <numeric>
#include <stdexcept>

namespace ferbound {

TypeVector::TypeVector(std::vector<int> c) : counts(std::move(c)) {
    total = std::accumulate(counts.begin(), counts.end(), 0);
    for (int v : counts)
        if (v < 0) throw std::invalid_argument("TypeVector: negative count");
}

TypeEnumerator::TypeEnumerator(int total, int alphabet_size) {
    if (total < 0 || alphabet_size < 1)
        throw std::invalid_argument("TypeEnumerator: need total >= 0 and alphabet_size >= 1");
    caps_.assign(static_cast<std::size_t>(alphabet_size), total);
    reset(total);
}

TypeEnumerator::TypeEnumerator(int total, std::span<const int> caps) {
    if (total < 0 || caps.empty())
        throw std::invalid_argument("TypeEnumerator: need total >= 0 and at least one part");
    for (int c : caps)
        if (c < 0) throw std::invalid_argument("TypeEnumerator: negative cap");
    caps_.assign(caps.begin(), caps.end());
    reset(total);
}

void TypeEnumerator::reset(int total) {
    current_.counts.assign(caps_.size(), 0);
    current_.total = total;
    first_ = true;
    // Colex-smallest composition: push mass as far left as the caps allow.
    done_ = !fill_lowest(static_cast<int>(caps_.size()) - 1, total);
}

// Distribute `amount` over positions 0..from greedily from position 0.
// Fails (returns false) when the caps cannot absorb it.
bool TypeEnumerator::fill_lowest(int from, int amount) {
    for (int i = 0; i <= from; ++i) {
        const int take = std::min(amount, caps_[static_cast<std::size_t>(i)]);
        current_.counts[static_cast<std::size_t>(i)] = take;
        amount -= take;
    }
    return amount == 0;
}

bool TypeEnumerator::advance() {
    // Colex successor: find the leftmost position j >= 1 that can grow
    // while the positions before it hold one unit less, then reset the
    // prefix to its colex-smallest arrangement.
    const int q = static_cast<int>(caps_.size());
    int rest = 0;
    for (int j = 1; j < q; ++j) {
        rest += current_.counts[static_cast<std::size_t>(j - 1)];
        if (rest >= 1 && current_.counts[static_cast<std::size_t>(j)] <
                             caps_[static_cast<std::size_t>(j)]) {
            ++current_.counts[static_cast<std::size_t>(j)];
            fill_lowest(j - 1, rest - 1);
            return true;
        }
    }
    return false;
}

const TypeVector* TypeEnumerator::next() {
    if (done_) return nullptr;
    if (first_) {
        first_ = false;
        return &current_;
    }
    if (!advance()) {
        done_ = true;
        return nullptr;
    }
    return &current_;
}

double count_types(int n, int q) {
    LogFactorials lf(n + q);
    return std::exp(lf.binomial(n + q - 1, q - 1));
}

}  // namespace ferbound
