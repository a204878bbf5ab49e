#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ferbound/sweep.hpp"

using namespace ferbound;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) { path = "/tmp/ferbound_sweep_" + name; }
    ~TempFile() {
        std::remove(path.c_str());
        std::remove((path + ".json").c_str());
    }
};

SweepConfig small_sweep() {
    SweepConfig config;
    config.channel.family = ChannelSpec::Family::BscBec;
    config.channel.delta = 0.1;
    config.swept_param = "eps";
    config.start = 1e-3;
    config.stop = 5e-2;
    config.points = 10;
    config.spectrum.generator_file = "";
    config.spectrum.binomial_n = 15;
    config.spectrum.binomial_k = 7;
    config.eval.bounds = {"extended", "rect", "sf"};
    return config;
}

int count_lines(const std::string& text, char first) {
    int n = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] == first) ++n;
    return n;
}

}  // namespace

TEST_CASE("sweep_points spacing rules") {
    SweepConfig c = small_sweep();
    const auto pts = sweep_points(c);  // auto resolves to log below 0.1
    CHECK(pts.size() == 10);
    CHECK(pts.front() == doctest::Approx(1e-3));
    CHECK(pts.back() == doctest::Approx(5e-2));
    CHECK(pts[1] / pts[0] == doctest::Approx(pts[2] / pts[1]));

    c.start = 0.0;
    c.stop = 0.08;
    const auto linear = sweep_points(c);  // start at 0 forces linear
    CHECK(linear[1] - linear[0] == doctest::Approx(linear[2] - linear[1]));

    c.spacing = SweepConfig::Spacing::Log;
    CHECK_THROWS_AS(sweep_points(c), std::invalid_argument);

    c.spacing = SweepConfig::Spacing::Auto;
    c.start = 0.2;
    c.stop = 0.1;
    CHECK_THROWS_AS(sweep_points(c), std::invalid_argument);  // start < stop required
    c.stop = 0.4;
    c.points = 0;
    CHECK_THROWS_AS(sweep_points(c), std::invalid_argument);
}

TEST_CASE("sweep emits points x bounds rows plus header and trailer") {
    std::ostringstream out;
    const int status = run_sweep(small_sweep(), out);
    CHECK(status == 0);
    const std::string text = out.str();
    CHECK(count_lines(text, 'b') == 1);   // header
    CHECK(count_lines(text, '#') == 1);   // trailer
    int rows = 0;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 30);
    CHECK(text.find("config_hash=") != std::string::npos);
    CHECK(text.find("status") != std::string::npos);
}

TEST_CASE("sweep output is byte-identical across runs and thread counts") {
    std::ostringstream a, b, c;
    SweepConfig config = small_sweep();
    config.threads = 1;
    run_sweep(config, a);
    config.threads = 2;
    run_sweep(config, b);
    config.threads = 7;
    run_sweep(config, c);
    CHECK(a.str() == b.str());
    CHECK(a.str() == c.str());
}

TEST_CASE("rect rows dominate extended rows") {
    std::ostringstream out;
    SweepConfig config = small_sweep();
    config.eval.bounds = {"extended", "rect"};
    run_sweep(config, out);

    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    double ext = -1.0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        const double value = std::stod(cells[7]);
        if (cells[0] == "extended") {
            ext = value;
        } else {
            REQUIRE(cells[0] == "rect");
            CHECK(value >= ext * (1 - 1e-12));
        }
    }
}

TEST_CASE("config_hash tracks semantic fields only") {
    const SweepConfig base = small_sweep();
    const std::uint64_t h0 = config_hash(base);

    SweepConfig threads = base;
    threads.threads = 8;
    CHECK(config_hash(threads) == h0);

    SweepConfig eps = base;
    eps.stop = 6e-2;
    CHECK(config_hash(eps) != h0);

    SweepConfig bounds = base;
    bounds.eval.bounds = {"extended"};
    CHECK(config_hash(bounds) != h0);

    SweepConfig prune = base;
    prune.eval.prune_target = 1e-12;
    CHECK(config_hash(prune) != h0);
}

TEST_CASE("sweep validates the swept parameter against the family") {
    SweepConfig config = small_sweep();
    config.channel.family = ChannelSpec::Family::Bsc;
    config.swept_param = "delta";
    std::ostringstream out;
    CHECK_THROWS_AS(run_sweep(config, out), std::invalid_argument);
}

TEST_CASE("a failing point yields error rows and exit 1") {
    SweepConfig config = small_sweep();
    config.channel.family = ChannelSpec::Family::Bsc;
    config.swept_param = "eps";
    config.start = 0.4;
    config.stop = 0.6;  // beyond the BSC parameter range -> channel error
    config.points = 3;
    config.spacing = SweepConfig::Spacing::Linear;
    config.eval.bounds = {"extended"};
    std::ostringstream out;
    CHECK(run_sweep(config, out) == 1);
    CHECK(out.str().find("error") != std::string::npos);
}

TEST_CASE("missing spectrum file reports the path") {
    SpectrumSpec spec;
    spec.file = "/nonexistent/spec.csv";
    CHECK_THROWS_WITH_AS(static_cast<void>(resolve_spectrum(spec)),
                         doctest::Contains("/nonexistent/spec.csv"), std::runtime_error);

    SpectrumSpec none;
    CHECK_THROWS_AS(static_cast<void>(resolve_spectrum(none)), std::invalid_argument);
}

TEST_CASE("run_bound emits wall_ms") {
    ChannelSpec channel;
    channel.family = ChannelSpec::Family::BscBec;
    channel.eps = 0.01;
    channel.delta = 0.1;
    SpectrumSpec spectrum;
    spectrum.binomial_n = 15;
    spectrum.binomial_k = 7;
    EvalSettings eval;
    eval.bounds = {"extended", "sf"};
    std::ostringstream out;
    CHECK(run_bound(channel, spectrum, eval, out) == 0);
    CHECK(out.str().find("wall_ms") != std::string::npos);
    CHECK(count_lines(out.str(), 'e') == 1);  // one extended row
}

TEST_CASE("verify is sound on Hamming(7,4) and catches a corrupted spectrum") {
    // Generator file for the oracle.
    TempFile gen("ham_gen.txt");
    {
        std::ofstream g(gen.path);
        for (const auto& row : fixtures::hamming74().rows) {
            for (int b : row) g << b;
            g << "\n";
        }
    }

    VerifyConfig config;
    config.channel.family = ChannelSpec::Family::BscBec;
    config.generator_file = gen.path;
    config.eps_grid = {0.0, 0.05, 0.1};
    config.delta_grid = {0.0, 0.1};
    config.eval.bounds = {"extended"};
    std::ostringstream out;
    CHECK(run_verify(config, out) == 0);
    CHECK(out.str().find("fail") == std::string::npos);

    // Halving S_3 understates the union term; the oracle must notice.
    TempFile bad("ham_bad.csv");
    {
        std::ofstream s(bad.path);
        s << "w,count\n0,1\n3,3\n4,7\n7,1\n";
    }
    VerifyConfig corrupted = config;
    corrupted.spectrum.file = bad.path;
    corrupted.spectrum.n = 7;
    // Small parameters: the true error is S_3-dominated there, so the
    // understated bound falls below it.
    corrupted.eps_grid = {0.02, 0.04};
    corrupted.delta_grid = {0.02, 0.04};
    std::ostringstream out2;
    CHECK(run_verify(corrupted, out2) == 1);
    CHECK(out2.str().find("fail") != std::string::npos);

    // Monte-Carlo alongside the exact oracle.
    VerifyConfig with_sim = config;
    with_sim.eps_grid = {0.05};
    with_sim.delta_grid = {0.05};
    with_sim.trials = 20000;
    with_sim.seed = 7;
    std::ostringstream out3;
    CHECK(run_verify(with_sim, out3) == 0);
    CHECK(out3.str().find("sim_fer") != std::string::npos);
}

TEST_CASE("format_double round-trips shortest representations") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-3) == "0.001");
    CHECK(format_double(0.0) == "0");
    for (double v : {1.0 / 3.0, 6.02e23, 1e-300})
        CHECK(std::stod(format_double(v)) == v);
}
