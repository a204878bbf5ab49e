#include "ferbound/bigint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ferbound {

namespace {
constexpr std::uint64_t kBase = 1000000000;  // 1e9
constexpr int kBaseDigits = 9;
}  // namespace

BigUint::BigUint(std::uint64_t v) {
    while (v != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
        v /= kBase;
    }
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("BigUint: empty decimal string");
    for (char c : text)
        if (c < '0' || c > '9')
            throw std::invalid_argument("BigUint: invalid decimal digit");
    BigUint r;
    const std::size_t n = text.size();
    // Consume 9-digit groups from the most significant end.
    std::size_t head = n % kBaseDigits;
    std::size_t pos = 0;
    auto push_group = [&](std::string_view group) {
        std::uint64_t g = 0;
        for (char c : group) g = g * 10 + static_cast<std::uint64_t>(c - '0');
        // r = r * 1e9 + g
        std::uint64_t carry = g;
        for (auto& limb : r.limbs_) {
            const std::uint64_t v = static_cast<std::uint64_t>(limb) * kBase + carry;
            limb = static_cast<std::uint32_t>(v % kBase);
            carry = v / kBase;
        }
        while (carry != 0) {
            r.limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
            carry /= kBase;
        }
    };
    if (head != 0) {
        push_group(text.substr(0, head));
        pos = head;
    }
    for (; pos < n; pos += kBaseDigits) push_group(text.substr(pos, kBaseDigits));
    r.trim();
    return r;
}

BigUint BigUint::pow2(int k) {
    if (k < 0) throw std::invalid_argument("BigUint::pow2: negative exponent");
    BigUint r(1);
    BigUint two(2);
    for (int i = 0; i < k; ++i) r *= two;
    return r;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
    const std::size_t n = std::max(limbs_.size(), rhs.limbs_.size());
    limbs_.resize(n, 0);
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) + carry;
        if (i < rhs.limbs_.size()) v += rhs.limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(v % kBase);
        carry = static_cast<std::uint32_t>(v / kBase);
    }
    if (carry != 0) limbs_.push_back(carry);
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
    if (*this < rhs) throw std::underflow_error("BigUint: subtraction underflow");
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::int64_t v = static_cast<std::int64_t>(limbs_[i]) - borrow -
                         (i < rhs.limbs_.size() ? rhs.limbs_[i] : 0);
        if (v < 0) {
            v += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        limbs_[i] = static_cast<std::uint32_t>(v);
    }
    trim();
    return *this;
}

BigUint& BigUint::operator*=(const BigUint& rhs) {
    if (is_zero() || rhs.is_zero()) {
        limbs_.clear();
        return *this;
    }
    std::vector<std::uint32_t> out(limbs_.size() + rhs.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < rhs.limbs_.size() || carry != 0; ++j) {
            std::uint64_t v = out[i + j] + carry;
            if (j < rhs.limbs_.size())
                v += static_cast<std::uint64_t>(limbs_[i]) * rhs.limbs_[j];
            out[i + j] = static_cast<std::uint32_t>(v % kBase);
            carry = v / kBase;
        }
    }
    limbs_ = std::move(out);
    trim();
    return *this;
}

std::strong_ordering BigUint::operator<=>(const BigUint& rhs) const {
    if (limbs_.size() != rhs.limbs_.size())
        return limbs_.size() <=> rhs.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
    }
    return std::strong_ordering::equal;
}

std::string BigUint::to_decimal() const {
    if (is_zero()) return "0";
    std::string s = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        s.append(kBaseDigits - part.size(), '0');
        s += part;
    }
    return s;
}

double BigUint::log() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    // Top limbs give the mantissa; the rest shifts the exponent.
    double mantissa = 0.0;
    const std::size_t top = limbs_.size();
    const std::size_t take = std::min<std::size_t>(top, 3);
    for (std::size_t i = 0; i < take; ++i)
        mantissa = mantissa * static_cast<double>(kBase) +
                   static_cast<double>(limbs_[top - 1 - i]);
    const double skipped = static_cast<double>(top - take);
    return std::log(mantissa) + skipped * std::log(static_cast<double>(kBase));
}

BigUint exact_binomial(int n, int k) {
    if (k < 0 || k > n) return BigUint();
    k = std::min(k, n - k);
    // One Pascal row, built in place right-to-left.
    std::vector<BigUint> row(static_cast<std::size_t>(k) + 1);
    row[0] = BigUint(1);
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j)
            row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
    }
    return row[static_cast<std::size_t>(k)];
}

}  // namespace ferbound
