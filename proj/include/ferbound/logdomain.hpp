#ifndef FERBOUND_LOGDOMAIN_HPP
#define FERBOUND_LOGDOMAIN_HPP

#include <cmath>
#include <limits>
#include <span>
#include <vector>

// Log-domain scalar machinery. Quantities are carried as natural-log
// magnitudes; -inf encodes an exact zero. Accumulation is deterministic:
// a fixed enumeration order plus compensated addition after max-shift,
// so results are bit-stable across runs and, with the fixed-chunk merge
// used by the bounds, across worker counts.

namespace ferbound {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// ln(base^count) with the 0^0 = 1 convention: count = 0 gives 0 even
// when log_base is -inf.
inline double log_pow(int count, double log_base) {
    return count == 0 ? 0.0 : count * log_base;
}

// Neumaier-compensated running sum of doubles.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }

    // 1 - value(), evaluated so that the compensation survives the
    // subtraction; clamped at zero. Used for exact complements of
    // probability totals that approach 1.
    double complement_from_one() const {
        const double c = (1.0 - sum) - comp;
        return c > 0.0 ? c : 0.0;
    }
};

// Streaming log-sum-exp accumulator: keeps a running max-shift and a
// compensated linear-domain sum. add() order defines the result.
class LogAccumulator {
public:
    void add(double log_v) {
        if (log_v == kNegInf) return;
        if (shift_ == kNegInf) {
            shift_ = log_v;
            body_.add(1.0);
            return;
        }
        if (log_v <= shift_) {
            body_.add(std::exp(log_v - shift_));
        } else {
            const double f = std::exp(shift_ - log_v);
            body_.sum *= f;
            body_.comp *= f;
            shift_ = log_v;
            body_.add(1.0);
        }
    }

    // Fold another accumulator into this one. Merging chunk results in
    // fixed chunk-index order keeps totals thread-count independent.
    void merge(const LogAccumulator& other) {
        if (other.shift_ == kNegInf) return;
        if (shift_ == kNegInf) {
            *this = other;
            return;
        }
        if (other.shift_ <= shift_) {
            const double f = std::exp(other.shift_ - shift_);
            body_.add(other.body_.sum * f);
            body_.add(other.body_.comp * f);
        } else {
            const double f = std::exp(shift_ - other.shift_);
            body_.sum *= f;
            body_.comp *= f;
            shift_ = other.shift_;
            body_.add(other.body_.sum);
            body_.add(other.body_.comp);
        }
    }

    bool empty() const { return shift_ == kNegInf; }

    double value() const {
        if (shift_ == kNegInf) return kNegInf;
        const double s = body_.value();
        if (s <= 0.0) return kNegInf;
        return shift_ + std::log(s);
    }

private:
    double shift_ = kNegInf;
    KahanSum body_;
};

// ln(sum(exp(v))) over a sequence; empty input gives -inf.
double log_sum_exp(std::span<const double> values);
double log_sum_exp(double a, double b);
double log_sum_exp(double a, double b, double c);

// Precomputed ln k! table, built once with compensated summation; no
// lgamma calls afterwards.
class LogFactorials {
public:
    explicit LogFactorials(int max_n);

    int max_n() const { return static_cast<int>(table_.size()) - 1; }
    double operator()(int k) const { return table_[static_cast<std::size_t>(k)]; }

    // ln C(n, k); -inf when k is outside [0, n].
    double binomial(int n, int k) const {
        if (k < 0 || k > n) return kNegInf;
        return table_[n] - table_[k] - table_[n - k];
    }

    // ln of total! / prod(parts!); -inf when any part is negative.
    // Caller guarantees sum(parts) == total.
    double multinomial(int total, std::span<const int> parts) const;

    // ln C(total; a, b, total-a-b); -inf when any part is negative.
    double trinomial(int total, int a, int b) const {
        const int c = total - a - b;
        if (a < 0 || b < 0 || c < 0) return kNegInf;
        return table_[total] - table_[a] - table_[b] - table_[c];
    }

private:
    std::vector<double> table_;
};

}  // namespace ferbound

#endif
