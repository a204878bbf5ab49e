#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "ferbound/bounds.hpp"
#include "ferbound/oracle.hpp"

using namespace ferbound;

namespace {

// Independent re-derivation of the exact error probability conditioned
// on an arbitrary transmitted codeword: enumerate outputs reachable
// under that codeword and compare full likelihoods.
double exact_error_given(const BmsChannel& channel, const Codebook& codebook,
                         std::size_t sent_idx) {
    const int n = codebook.n;
    const int m = channel.half_width();
    const auto& sent = codebook.words[sent_idx];
    std::vector<int> symbols;
    for (int j = -m; j <= m; ++j)
        if (channel.p0(j) > 0.0 || channel.p0(-j) > 0.0) symbols.push_back(j);

    auto prob_given = [&](const std::vector<int>& y, const std::vector<std::uint8_t>& c) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) {
            const int yy = c[static_cast<std::size_t>(i)]
                               ? -y[static_cast<std::size_t>(i)]
                               : y[static_cast<std::size_t>(i)];
            p *= channel.p0(yy);
        }
        return p;
    };

    std::vector<std::size_t> odo(static_cast<std::size_t>(n), 0);
    std::vector<int> y(static_cast<std::size_t>(n), symbols[0]);
    double err = 0.0;
    for (;;) {
        const double p_sent = prob_given(y, sent);
        if (p_sent > 0.0) {
            bool error = false;
            for (std::size_t c = 0; c < codebook.words.size() && !error; ++c) {
                if (c == sent_idx) continue;
                // Exact likelihood ties show up with rounding noise far
                // below any genuine ratio between distinct products.
                error = prob_given(y, codebook.words[c]) >= p_sent * (1.0 - 1e-9);
            }
            if (error) err += p_sent;
        }
        int pos = 0;
        while (pos < n) {
            if (++odo[static_cast<std::size_t>(pos)] < symbols.size()) {
                y[static_cast<std::size_t>(pos)] = symbols[odo[static_cast<std::size_t>(pos)]];
                break;
            }
            odo[static_cast<std::size_t>(pos)] = 0;
            y[static_cast<std::size_t>(pos)] = symbols[0];
            ++pos;
        }
        if (pos == n) break;
    }
    return err;
}

}  // namespace

TEST_CASE("exact_ml_error on the repetition code") {
    const auto rep = brute_force_spectrum(fixtures::repetition(3));
    CHECK(std::abs(exact_ml_error(make_bsc(0.1), rep.codebook) - 0.028) <= 1e-12);
    for (double d : {0.1, 0.5})
        CHECK(std::abs(exact_ml_error(make_bec(d), rep.codebook) - d * d * d) <= 1e-12);
    CHECK(exact_ml_error(make_bsc_bec(0.0, 0.0), rep.codebook) == 0.0);
}

TEST_CASE("exact_ml_error budget refusal") {
    const auto ham = brute_force_spectrum(fixtures::hamming74());
    CHECK_THROWS_WITH_AS(
        static_cast<void>(exact_ml_error(make_bsc_bec(0.05, 0.1), ham.codebook, 100.0)),
        doctest::Contains("budget"), std::runtime_error);
}

TEST_CASE("exact_ml_error is invariant to codebook word order") {
    auto ham = brute_force_spectrum(fixtures::hamming74());
    const BmsChannel channel = make_bsc_bec(0.07, 0.12);
    const double base = exact_ml_error(channel, ham.codebook);
    std::reverse(ham.codebook.words.begin(), ham.codebook.words.end());
    CHECK(exact_ml_error(channel, ham.codebook) == doctest::Approx(base).epsilon(1e-15));
}

TEST_CASE("conditioning on a nonzero codeword gives the same error rate") {
    const auto ham = brute_force_spectrum(fixtures::hamming74());
    const BmsChannel channel = make_bsc_bec(0.06, 0.15);
    const double from_zero = exact_ml_error(channel, ham.codebook);
    for (std::size_t sent : {std::size_t{1}, std::size_t{5}, std::size_t{15}})
        CHECK(std::abs(exact_error_given(channel, ham.codebook, sent) - from_zero) <= 1e-12);
}

TEST_CASE("oracle never exceeds the bounds") {
    const auto ham = brute_force_spectrum(fixtures::hamming74());
    for (auto [eps, delta] : {std::pair{0.02, 0.05}, {0.08, 0.1}, {0.0, 0.3}}) {
        const BmsChannel channel = make_bsc_bec(eps, delta);
        const double truth = exact_ml_error(channel, ham.codebook);
        CHECK(extended_bound(channel, ham.spectrum).p_upper >= truth - 1e-12);
        CHECK(bsc_bec_bound(ham.spectrum, eps, delta).p_upper >= truth - 1e-12);
    }
}

TEST_CASE("simulate_fer basics") {
    const auto rep = brute_force_spectrum(fixtures::repetition(5));
    const SimResult clean = simulate_fer(make_bsc(0.0), rep.codebook, 500);
    CHECK(clean.fer == 0.0);

    const SimResult erased = simulate_fer(make_bec(1.0), rep.codebook, 500);
    CHECK(erased.fer == 1.0);  // everything erased ties with every codeword

    CHECK_THROWS_AS(simulate_fer(make_bsc(0.1), rep.codebook, 0), std::invalid_argument);
}

TEST_CASE("simulate_fer stays within 4 sigma across 100 seeds") {
    const auto ham = brute_force_spectrum(fixtures::hamming74());
    const BmsChannel channel = make_bsc_bec(0.05, 0.05);
    const double exact = exact_ml_error(channel, ham.codebook);
    int within = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const SimResult r = simulate_fer(channel, ham.codebook, 2000, {seed, 1});
        if (std::abs(r.fer - exact) <= 4.0 * r.stderr_est + 1e-12) ++within;
    }
    CHECK(within >= 99);
}

TEST_CASE("simulate_fer is reproducible and converges to the exact value") {
    const auto ham = brute_force_spectrum(fixtures::hamming74());
    const BmsChannel channel = make_bsc_bec(0.05, 0.05);

    const SimResult a = simulate_fer(channel, ham.codebook, 20000, {42, 1});
    const SimResult b = simulate_fer(channel, ham.codebook, 20000, {42, 1});
    CHECK(a.errors == b.errors);

    const double exact = exact_ml_error(channel, ham.codebook);
    CHECK(std::abs(a.fer - exact) <= 4.0 * a.stderr_est + 1e-9);

    const SimResult split = simulate_fer(channel, ham.codebook, 20000, {42, 3});
    CHECK(split.trials == 20000);
    CHECK(std::abs(split.fer - exact) <= 4.0 * split.stderr_est + 1e-9);
}

TEST_CASE("ml_decode picks the likeliest codeword") {
    const auto rep = brute_force_spectrum(fixtures::repetition(3));
    const BmsChannel bsc = make_bsc(0.1);

    // Strongest evidence for zero: the all -1 word.
    const DecodeResult zero = ml_decode(bsc, {-1, -1, -1}, rep.codebook);
    CHECK(rep.codebook.words[zero.index] == std::vector<std::uint8_t>{0, 0, 0});
    CHECK_FALSE(zero.tie);

    // Majority of +1: the all-ones codeword, no tie.
    const DecodeResult ones = ml_decode(bsc, {1, 1, -1}, rep.codebook);
    CHECK(rep.codebook.words[ones.index] == std::vector<std::uint8_t>{1, 1, 1});
    CHECK_FALSE(ones.tie);

    // All erased: every codeword ties.
    const BmsChannel bec = make_bec(0.3);
    const DecodeResult tie = ml_decode(bec, {0, 0, 0}, rep.codebook);
    CHECK(tie.index == 0);
    CHECK(tie.tie);

    const auto ham = brute_force_spectrum(fixtures::hamming74());
    const BmsChannel hybrid = make_bsc_bec(0.05, 0.1);
    // A codeword's noiseless image decodes to itself.
    for (std::size_t idx : {std::size_t{3}, std::size_t{9}}) {
        std::vector<int> received;
        for (std::uint8_t bit : ham.codebook.words[idx]) received.push_back(bit ? 1 : -1);
        const DecodeResult r = ml_decode(hybrid, received, ham.codebook);
        CHECK(r.index == idx);
        CHECK_FALSE(r.tie);
    }

    CHECK_THROWS_AS(ml_decode(bsc, {5, 0, 0}, rep.codebook), std::invalid_argument);
    CHECK_THROWS_AS(ml_decode(bsc, {1, 1}, rep.codebook), std::invalid_argument);
}
