#ifndef FERBOUND_TESTS_FIXTURES_HPP
#define FERBOUND_TESTS_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include "ferbound/spectrum.hpp"

// Small standard codes used across the suites.

namespace fixtures {

inline ferbound::GeneratorMatrix repetition(int n) {
    ferbound::GeneratorMatrix g;
    g.n = n;
    g.k = 1;
    g.rows = {std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1)};
    return g;
}

// Systematic Hamming(7,4): G = [I4 | P], P rows 011, 101, 110, 111.
inline ferbound::GeneratorMatrix hamming74() {
    ferbound::GeneratorMatrix g;
    g.n = 7;
    g.k = 4;
    g.rows = {
        {1, 0, 0, 0, 0, 1, 1},
        {0, 1, 0, 0, 1, 0, 1},
        {0, 0, 1, 0, 1, 1, 0},
        {0, 0, 0, 1, 1, 1, 1},
    };
    return g;
}

// Dual of the above: the simplex(7,3) code, G = [P^T | I3].
inline ferbound::GeneratorMatrix simplex73() {
    ferbound::GeneratorMatrix g;
    g.n = 7;
    g.k = 3;
    g.rows = {
        {0, 1, 1, 1, 1, 0, 0},
        {1, 0, 1, 1, 0, 1, 0},
        {1, 1, 0, 1, 0, 0, 1},
    };
    return g;
}

// Single parity check (n, n-1): rows e_i + e_n.
inline ferbound::GeneratorMatrix spc(int n) {
    ferbound::GeneratorMatrix g;
    g.n = n;
    g.k = n - 1;
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<std::uint8_t> row(static_cast<std::size_t>(n), 0);
        row[static_cast<std::size_t>(i)] = 1;
        row[static_cast<std::size_t>(n - 1)] = 1;
        g.rows.push_back(std::move(row));
    }
    return g;
}

// BCH(15,7), generator polynomial x^8 + x^7 + x^6 + x^4 + 1; rows are
// its cyclic shifts.
inline ferbound::GeneratorMatrix bch15_7() {
    ferbound::GeneratorMatrix g;
    g.n = 15;
    g.k = 7;
    const std::vector<std::uint8_t> poly = {1, 0, 0, 0, 1, 0, 1, 1, 1};  // x^0 .. x^8
    for (int shift = 0; shift < 7; ++shift) {
        std::vector<std::uint8_t> row(15, 0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            row[i + static_cast<std::size_t>(shift)] = poly[i];
        g.rows.push_back(std::move(row));
    }
    return g;
}

inline ferbound::WeightSpectrum spectrum_of(const ferbound::GeneratorMatrix& g) {
    return ferbound::brute_force_spectrum(g).spectrum;
}

inline ferbound::Codebook codebook_of(const ferbound::GeneratorMatrix& g) {
    return ferbound::brute_force_spectrum(g).codebook;
}

}  // namespace fixtures

#endif
