#include <doctest.h>

#include <cmath>

#include "ferbound/bigint.hpp"
#include "ferbound/logdomain.hpp"
#include "ferbound/types.hpp"

using namespace ferbound;

TEST_CASE("exact_binomial examples") {
    CHECK(exact_binomial(7, 3).to_decimal() == "35");
    CHECK(exact_binomial(127, 0).to_decimal() == "1");
    CHECK(exact_binomial(10, 5).to_decimal() == "252");
    CHECK(exact_binomial(5, 9).is_zero());
    CHECK(exact_binomial(5, -1).is_zero());
}

TEST_CASE("decimal round-trip and arithmetic") {
    const BigUint big = BigUint::from_decimal("340282366920938463463374607431768211455");
    CHECK(BigUint::from_decimal(big.to_decimal()) == big);

    CHECK((BigUint(999999999) + BigUint(1)).to_decimal() == "1000000000");
    CHECK((BigUint::pow2(10)).to_decimal() == "1024");
    CHECK((BigUint(1000) - BigUint(1)).to_decimal() == "999");
    CHECK((BigUint(123456789) * BigUint(987654321)).to_decimal() == "121932631112635269");
    CHECK(BigUint(5) < BigUint(6));
    CHECK_THROWS(BigUint(1) - BigUint(2));
    CHECK_THROWS(BigUint::from_decimal("12a"));
    CHECK_THROWS(BigUint::from_decimal(""));
}

TEST_CASE("BigUint::log is accurate on large values") {
    LogFactorials lf(200);
    for (auto [n, k] : {std::pair{127, 63}, {127, 20}, {60, 30}, {200, 100}}) {
        const double exact_log = exact_binomial(n, k).log();
        CHECK(exact_log == doctest::Approx(lf.binomial(n, k)).epsilon(1e-13));
    }
    CHECK(BigUint().log() == kNegInf);
    CHECK(BigUint(1).log() == doctest::Approx(0.0));
}

TEST_CASE("log_multinomial agrees with exact binomial compositions") {
    // multinomial(total; parts) as a product of binomials, exactly.
    const std::vector<std::vector<int>> part_sets = {
        {30, 20, 10}, {1, 1, 58}, {15, 15, 15, 15}, {60}, {0, 0, 60}, {7, 13, 21, 19}};
    LogFactorials lf(60);
    for (const auto& parts : part_sets) {
        int total = 0;
        for (int p : parts) total += p;
        BigUint product(1);
        int rest = total;
        for (int p : parts) {
            product *= exact_binomial(rest, p);
            rest -= p;
        }
        CHECK(lf.multinomial(total, parts) ==
              doctest::Approx(product.log()).epsilon(1e-12));
    }
}

TEST_CASE("Vandermonde consistency over conditional subtypes") {
    // Two symbols: sum over mu of C(w,mu1) C(n-w, l1-mu1) = C(n, l1).
    for (int n : {6, 13, 30}) {
        for (int l1 : {0, 1, n / 2, n}) {
            for (int w : {0, 1, 3, n / 2, n}) {
                const TypeVector ell(std::vector<int>{n - l1, l1});
                BigUint total;
                auto en = subtype_enumerator(w, ell);
                while (const TypeVector* mu = en.next())
                    total += exact_binomial(w, mu->counts[1]) *
                             exact_binomial(n - w, l1 - mu->counts[1]);
                CHECK(total == exact_binomial(n, l1));
            }
        }
    }
}
