#include "ferbound/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ferbound {

namespace {

[[noreturn]] void load_fail(const std::string& path, std::size_t line,
                            const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

// ln(2^j - 1) without forming the big integer.
double log_pow2_minus_1(int j) {
    return j * std::log(2.0) + std::log1p(-std::exp2(-j));
}

std::string sidecar_path(const std::string& path) { return path + ".json"; }

}  // namespace

std::optional<int> WeightSpectrum::d_min() const {
    for (int w = 1; w <= n; ++w)
        if (log_s[static_cast<std::size_t>(w)] != kNegInf) return w;
    return std::nullopt;
}

double WeightSpectrum::rate() const {
    if (!k) throw std::invalid_argument("WeightSpectrum: rate requested but k unknown");
    return static_cast<double>(*k) / static_cast<double>(n);
}

WeightSpectrum WeightSpectrum::from_exact(int n, std::vector<BigUint> counts,
                                          std::optional<int> k) {
    if (n < 0 || counts.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("WeightSpectrum: counts must have n+1 entries");
    if (counts[0] != BigUint(1))
        throw std::invalid_argument("WeightSpectrum: S_0 must be 1");
    WeightSpectrum s;
    s.n = n;
    s.k = k;
    s.log_s.resize(counts.size());
    for (std::size_t w = 0; w < counts.size(); ++w) s.log_s[w] = counts[w].log();
    s.exact_s = std::move(counts);
    if (k) {
        BigUint total;
        for (const auto& c : s.exact_s) total += c;
        if (total != BigUint::pow2(*k))
            throw std::invalid_argument(
                "WeightSpectrum: counts sum to " + total.to_decimal() +
                ", expected 2^" + std::to_string(*k));
    }
    return s;
}

WeightSpectrum WeightSpectrum::from_log(int n, std::vector<double> log_counts,
                                        std::optional<int> k) {
    if (n < 0 || log_counts.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("WeightSpectrum: log counts must have n+1 entries");
    if (log_counts[0] != 0.0)
        throw std::invalid_argument("WeightSpectrum: S_0 must be 1");
    WeightSpectrum s;
    s.n = n;
    s.k = k;
    s.log_s = std::move(log_counts);
    return s;
}

bool Codebook::is_linear() const {
    const auto has = [&](const std::vector<std::uint8_t>& w) {
        return std::find(words.begin(), words.end(), w) != words.end();
    };
    for (const auto& a : words) {
        for (const auto& b : words) {
            std::vector<std::uint8_t> x(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) x[i] = a[i] ^ b[i];
            if (!has(x)) return false;
        }
    }
    return true;
}

GeneratorMatrix load_generator(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open generator file: " + path);
    GeneratorMatrix g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::uint8_t> row;
        for (char c : line) {
            if (c == '0' || c == '1')
                row.push_back(static_cast<std::uint8_t>(c - '0'));
            else if (c != ' ' && c != '\t' && c != '\r')
                load_fail(path, lineno, "generator rows must contain only 0/1");
        }
        if (row.empty()) continue;
        if (g.rows.empty())
            g.n = static_cast<int>(row.size());
        else if (static_cast<int>(row.size()) != g.n)
            load_fail(path, lineno, "generator rows must have equal length");
        g.rows.push_back(std::move(row));
    }
    if (g.rows.empty()) throw std::runtime_error(path + ": generator file has no rows");
    g.k = static_cast<int>(g.rows.size());
    return g;
}

double log_binomial_ensemble_weight(int n, int k, int w, const LogFactorials& lf) {
    return log_pow2_minus_1(k) + lf.binomial(n, w) - log_pow2_minus_1(n);
}

WeightSpectrum binomial_spectrum(int n, int k) {
    if (k <= 0 || k > n)
        throw std::invalid_argument("binomial_spectrum: need 0 < k <= n");
    LogFactorials lf(n);
    std::vector<double> log_s(static_cast<std::size_t>(n) + 1);
    log_s[0] = 0.0;
    for (int w = 1; w <= n; ++w)
        log_s[static_cast<std::size_t>(w)] = log_binomial_ensemble_weight(n, k, w, lf);
    return WeightSpectrum::from_log(n, std::move(log_s), k);
}

namespace {

// Packed GF(2) row, 64 bits per block.
std::vector<std::uint64_t> pack_row(const std::vector<std::uint8_t>& row) {
    std::vector<std::uint64_t> packed((row.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) packed[i / 64] |= std::uint64_t{1} << (i % 64);
    return packed;
}

int gf2_rank(std::vector<std::vector<std::uint64_t>> rows, int n) {
    int rank = 0;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        const std::size_t blk = static_cast<std::size_t>(col) / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[static_cast<std::size_t>(r)][blk] & bit) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank) continue;
            if (rows[static_cast<std::size_t>(r)][blk] & bit)
                for (std::size_t b = 0; b < rows[static_cast<std::size_t>(r)].size(); ++b)
                    rows[static_cast<std::size_t>(r)][b] ^=
                        rows[static_cast<std::size_t>(rank)][b];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

BruteForceResult brute_force_spectrum(const GeneratorMatrix& generator, int max_k_budget) {
    const int n = generator.n;
    const int k = generator.k;
    if (k > std::min(max_k_budget, 30))
        throw std::invalid_argument("brute_force_spectrum: k = " + std::to_string(k) +
                                    " exceeds the enumeration budget of 2^" +
                                    std::to_string(std::min(max_k_budget, 30)));

    std::vector<std::vector<std::uint64_t>> packed;
    packed.reserve(static_cast<std::size_t>(k));
    for (const auto& row : generator.rows) packed.push_back(pack_row(row));
    if (gf2_rank(packed, n) != k)
        throw std::invalid_argument("brute_force_spectrum: generator rows are dependent over GF(2)");

    const std::uint64_t count = std::uint64_t{1} << k;
    std::vector<std::uint64_t> histogram(static_cast<std::size_t>(n) + 1, 0);

    Codebook book;
    book.n = n;
    book.words.reserve(count);

    // Gray-code walk: successive messages differ in one bit, so each
    // codeword is one row-XOR away from the previous.
    std::vector<std::uint64_t> word(packed[0].size(), 0);
    auto emit = [&]() {
        int weight = 0;
        for (std::uint64_t blk : word) weight += std::popcount(blk);
        ++histogram[static_cast<std::size_t>(weight)];
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            bits[static_cast<std::size_t>(i)] =
                (word[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1;
        book.words.push_back(std::move(bits));
    };
    emit();  // message 0 -> the all-zero word sits at index 0
    for (std::uint64_t msg = 1; msg < count; ++msg) {
        const int flip = std::countr_zero(msg);  // Gray-code bit change
        const auto& row = packed[static_cast<std::size_t>(flip)];
        for (std::size_t b = 0; b < word.size(); ++b) word[b] ^= row[b];
        emit();
    }

    std::vector<BigUint> counts(histogram.size());
    for (std::size_t w = 0; w < histogram.size(); ++w) counts[w] = BigUint(histogram[w]);
    BruteForceResult result;
    result.spectrum = WeightSpectrum::from_exact(n, std::move(counts), k);
    result.codebook = std::move(book);
    return result;
}

WeightSpectrum load_spectrum(const std::string& path, std::optional<int> n,
                             std::optional<int> k) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spectrum file: " + path);

    std::optional<int> sidecar_d_min;
    {
        std::ifstream side(sidecar_path(path));
        if (side) {
            nlohmann::json j;
            try {
                side >> j;
            } catch (const nlohmann::json::exception& e) {
                throw std::runtime_error(sidecar_path(path) + ": " + e.what());
            }
            if (!n && j.contains("n")) n = j["n"].get<int>();
            if (!k && j.contains("k")) k = j["k"].get<int>();
            if (j.contains("d_min")) sidecar_d_min = j["d_min"].get<int>();
        }
    }

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty spectrum file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "w,count") load_fail(path, lineno, "expected header 'w,count'");

    std::vector<std::pair<int, BigUint>> rows;
    int max_w = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) load_fail(path, lineno, "expected 'w,count'");
        int w = 0;
        try {
            std::size_t used = 0;
            w = std::stoi(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            load_fail(path, lineno, "malformed weight field");
        }
        if (w < 0) load_fail(path, lineno, "weight must be non-negative");
        BigUint c;
        try {
            c = BigUint::from_decimal(line.substr(comma + 1));
        } catch (const std::exception&) {
            load_fail(path, lineno, "count must be an exact decimal integer");
        }
        for (const auto& [pw, pc] : rows)
            if (pw == w) load_fail(path, lineno, "duplicate weight " + std::to_string(w));
        max_w = std::max(max_w, w);
        rows.emplace_back(w, std::move(c));
    }

    if (!n) {
        if (max_w < 1)
            throw std::runtime_error(path +
                                     ": block length unknown (no w >= 1 rows; declare n "
                                     "via sidecar or flag)");
        n = max_w;
    }
    if (max_w > *n)
        throw std::runtime_error(path + ": weight " + std::to_string(max_w) +
                                 " exceeds block length " + std::to_string(*n));

    std::vector<BigUint> counts(static_cast<std::size_t>(*n) + 1);
    for (auto& [w, c] : rows) counts[static_cast<std::size_t>(w)] = std::move(c);
    if (counts[0] != BigUint(1))
        throw std::runtime_error(path + ": S_0 must be 1");

    WeightSpectrum s = WeightSpectrum::from_exact(*n, std::move(counts), k);
    if (sidecar_d_min && s.d_min() && *sidecar_d_min != *s.d_min())
        std::cerr << "warning: " << path << ": sidecar d_min " << *sidecar_d_min
                  << " disagrees with derived d_min " << *s.d_min()
                  << "; using the derived value\n";
    return s;
}

void save_spectrum(const WeightSpectrum& spectrum, const std::string& path) {
    if (!spectrum.has_exact())
        throw std::invalid_argument("save_spectrum: only exact spectra can be saved");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write spectrum file: " + path);
    out << "w,count\n";
    for (int w = 0; w <= spectrum.n; ++w) {
        const auto& c = spectrum.exact_s[static_cast<std::size_t>(w)];
        if (!c.is_zero()) out << w << "," << c.to_decimal() << "\n";
    }

    nlohmann::json j;
    j["n"] = spectrum.n;
    if (spectrum.k) j["k"] = *spectrum.k;
    if (auto d = spectrum.d_min()) j["d_min"] = *d;
    std::ofstream side(sidecar_path(path));
    if (!side) throw std::runtime_error("cannot write sidecar: " + sidecar_path(path));
    side << j.dump(2) << "\n";
}

}  // namespace ferbound
