#include "ferbound/logdomain.hpp"

#include <algorithm>
#include <stdexcept>

namespace ferbound {

double log_sum_exp(std::span<const double> values) {
    double max_v = kNegInf;
    for (double v : values) max_v = std::max(max_v, v);
    if (max_v == kNegInf) return kNegInf;
    KahanSum s;
    for (double v : values) {
        if (v == kNegInf) continue;
        s.add(std::exp(v - max_v));
    }
    return max_v + std::log(s.value());
}

double log_sum_exp(double a, double b) {
    const double v[] = {a, b};
    return log_sum_exp(std::span<const double>(v));
}

double log_sum_exp(double a, double b, double c) {
    const double v[] = {a, b, c};
    return log_sum_exp(std::span<const double>(v));
}

LogFactorials::LogFactorials(int max_n) {
    if (max_n < 0) throw std::invalid_argument("LogFactorials: max_n must be >= 0");
    table_.resize(static_cast<std::size_t>(max_n) + 1);
    table_[0] = 0.0;
    KahanSum s;
    for (int k = 1; k <= max_n; ++k) {
        s.add(std::log(static_cast<double>(k)));
        table_[static_cast<std::size_t>(k)] = s.value();
    }
}

double LogFactorials::multinomial(int total, std::span<const int> parts) const {
    double r = table_[static_cast<std::size_t>(total)];
    for (int p : parts) {
        if (p < 0) return kNegInf;
        r -= table_[static_cast<std::size_t>(p)];
    }
    return r;
}

}  // namespace ferbound
