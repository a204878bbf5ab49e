#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ferbound/logdomain.hpp"

using namespace ferbound;

TEST_CASE("log_sum_exp basics") {
    const double v1[] = {std::log(1.0), std::log(1.0)};
    CHECK(log_sum_exp(std::span<const double>(v1)) == doctest::Approx(std::log(2.0)));

    CHECK(log_sum_exp(std::span<const double>{}) == kNegInf);

    const double v2[] = {std::log(3.0), kNegInf};
    CHECK(log_sum_exp(std::span<const double>(v2)) == doctest::Approx(std::log(3.0)));

    CHECK(log_sum_exp(kNegInf, kNegInf) == kNegInf);
}

TEST_CASE("LogAccumulator matches two-pass log_sum_exp") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mag(-500.0, 10.0);
    std::vector<double> values;
    for (int i = 0; i < 1000; ++i) values.push_back(mag(rng));
    values.push_back(kNegInf);

    LogAccumulator acc;
    for (double v : values) acc.add(v);
    const double direct = log_sum_exp(values);
    CHECK(acc.value() == doctest::Approx(direct).epsilon(1e-13));

    LogAccumulator empty;
    CHECK(empty.value() == kNegInf);
    CHECK(empty.empty());
}

TEST_CASE("LogAccumulator merge covers the whole sequence") {
    std::vector<double> values;
    for (int i = 0; i < 100; ++i) values.push_back(-0.37 * i);

    LogAccumulator whole;
    for (double v : values) whole.add(v);

    LogAccumulator left, right, merged;
    for (int i = 0; i < 50; ++i) left.add(values[static_cast<std::size_t>(i)]);
    for (int i = 50; i < 100; ++i) right.add(values[static_cast<std::size_t>(i)]);
    merged.merge(left);
    merged.merge(right);
    CHECK(merged.value() == doctest::Approx(whole.value()).epsilon(1e-14));

    LogAccumulator with_empty;
    with_empty.merge(LogAccumulator{});
    with_empty.merge(whole);
    with_empty.merge(LogAccumulator{});
    CHECK(with_empty.value() == whole.value());
}

TEST_CASE("LogFactorials examples") {
    LogFactorials lf(10);
    const int parts1[] = {2, 1, 1};
    CHECK(lf.multinomial(4, parts1) == doctest::Approx(std::log(12.0)));
    const int parts2[] = {10, 0, 0};
    CHECK(lf.multinomial(10, parts2) == doctest::Approx(0.0));
    const int parts3[] = {1, 1, 1, 1, 1};
    CHECK(lf.multinomial(5, parts3) == doctest::Approx(std::log(120.0)));

    CHECK(lf.binomial(7, 3) == doctest::Approx(std::log(35.0)));
    CHECK(lf.binomial(7, 8) == kNegInf);
    CHECK(lf.binomial(7, -1) == kNegInf);
    CHECK(lf.trinomial(4, 2, 1) == doctest::Approx(std::log(12.0)));
    CHECK(lf.trinomial(4, 3, 2) == kNegInf);
}

TEST_CASE("LogFactorials tracks lgamma") {
    LogFactorials lf(200);
    for (int k : {1, 2, 17, 60, 127, 200})
        CHECK(lf(k) == doctest::Approx(std::lgamma(k + 1.0)).epsilon(1e-13));
}

TEST_CASE("log_pow honors 0^0 = 1") {
    CHECK(log_pow(0, kNegInf) == 0.0);
    CHECK(log_pow(3, kNegInf) == kNegInf);
    CHECK(log_pow(2, std::log(0.5)) == doctest::Approx(std::log(0.25)));
}

TEST_CASE("KahanSum complement from one") {
    KahanSum s;
    for (int i = 0; i < 10; ++i) s.add(0.1);
    CHECK(s.complement_from_one() == doctest::Approx(0.0).epsilon(1e-15));

    KahanSum t;  // complement survives below the double granularity near 1
    t.add(0.5);
    t.add(0.5 - 1e-16);
    CHECK(t.complement_from_one() == doctest::Approx(1e-16).epsilon(1e-6));

    KahanSum over;
    over.add(1.25);
    CHECK(over.complement_from_one() == 0.0);
}
