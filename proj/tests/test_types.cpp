#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "ferbound/bigint.hpp"
#include "ferbound/types.hpp"

using namespace ferbound;

namespace {

std::vector<std::vector<int>> collect(TypeEnumerator en) {
    std::vector<std::vector<int>> out;
    while (const TypeVector* t = en.next()) out.push_back(t->counts);
    return out;
}

// Colex: compare from the last coordinate down.
bool colex_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

}  // namespace

TEST_CASE("composition enumeration examples") {
    CHECK(collect(TypeEnumerator(2, 2)) ==
          std::vector<std::vector<int>>{{2, 0}, {1, 1}, {0, 2}});

    const auto zero = collect(TypeEnumerator(0, 4));
    CHECK(zero == std::vector<std::vector<int>>{{0, 0, 0, 0}});

    CHECK(collect(TypeEnumerator(7, 3)).size() == 36);  // C(9,2)
}

TEST_CASE("enumeration is colexicographic and duplicate-free") {
    for (int q : {2, 3, 5}) {
        for (int n : {0, 1, 4, 9}) {
            const auto all = collect(TypeEnumerator(n, q));
            const double expected =
                std::stod(exact_binomial(n + q - 1, q - 1).to_decimal());
            CHECK(static_cast<double>(all.size()) == expected);
            for (std::size_t i = 0; i + 1 < all.size(); ++i)
                CHECK(colex_less(all[i], all[i + 1]));
            for (const auto& t : all) {
                int sum = 0;
                for (int v : t) sum += v;
                CHECK(sum == n);
            }
        }
    }
}

TEST_CASE("subtype enumeration examples") {
    const TypeVector ell1(std::vector<int>{1, 0, 1});
    CHECK(collect(subtype_enumerator(1, ell1)) ==
          std::vector<std::vector<int>>{{1, 0, 0}, {0, 0, 1}});

    const TypeVector ell2(std::vector<int>{2, 3, 1});
    const auto full = collect(subtype_enumerator(ell2.total, ell2));
    CHECK(full == std::vector<std::vector<int>>{{2, 3, 1}});

    const TypeVector ell3(std::vector<int>{2, 2});
    CHECK(collect(subtype_enumerator(2, ell3)) ==
          std::vector<std::vector<int>>{{2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("subtypes equal the box-filtered compositions") {
    const std::vector<std::vector<int>> cap_sets = {
        {3, 0, 2}, {1, 1, 1, 1}, {8, 2}, {0, 0, 5}, {2, 4, 1, 3}};
    for (const auto& caps : cap_sets) {
        const TypeVector ell{std::vector<int>(caps)};
        for (int w = 0; w <= std::min(ell.total, 8); ++w) {
            std::set<std::vector<int>> from_subtypes;
            {
                auto en = subtype_enumerator(w, ell);
                while (const TypeVector* mu = en.next()) {
                    CHECK(mu->total == w);
                    from_subtypes.insert(mu->counts);
                }
            }
            std::set<std::vector<int>> filtered;
            TypeEnumerator en(w, static_cast<int>(caps.size()));
            while (const TypeVector* mu = en.next()) {
                bool inside = true;
                for (std::size_t i = 0; i < caps.size(); ++i)
                    inside = inside && mu->counts[i] <= caps[i];
                if (inside) filtered.insert(mu->counts);
            }
            CHECK(from_subtypes == filtered);
        }
    }
}

TEST_CASE("enumerator reset reuses the caps") {
    const TypeVector ell(std::vector<int>{2, 1});
    auto en = subtype_enumerator(2, ell);
    CHECK(collect(en).size() == 2);  // (2,0), (1,1)
    en.reset(1);
    CHECK(collect(en) == std::vector<std::vector<int>>{{1, 0}, {0, 1}});
    en.reset(4);  // beyond the caps: nothing
    CHECK(en.next() == nullptr);
}

TEST_CASE("count_types matches the closed form") {
    CHECK(count_types(7, 3) == doctest::Approx(36.0));
    CHECK(count_types(0, 5) == doctest::Approx(1.0));
}
