#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "corrlife/errors.hpp"
#include "corrlife/format.hpp"

using namespace corrlife;
using corrlife::cli::run;

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("corrlife_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string synth_fixture(const fs::path& dir, std::size_t n, std::size_t length, const std::string& extra = "") {
    std::string tickers;
    for (std::size_t i = 0; i < n; ++i) tickers += (i ? "," : "") + std::string("S") + std::to_string(100 + i);
    std::vector<std::string> args{"synth", "--tickers", tickers, "--length", std::to_string(length), "--out",
                                  dir.string(), "--seed", "3"};
    if (!extra.empty()) {
        args.push_back("--pair-rho");
        args.push_back(extra);
    }
    const auto r = invoke(args);
    REQUIRE(r.code == 0);
    return (dir / "prices.csv").string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("window lists") {
    CHECK(cli::parse_window_list("10,20,40") == std::vector<int>{10, 20, 40});
    CHECK(cli::parse_window_list("2..5") == std::vector<int>{2, 3, 4, 5});
    CHECK(cli::parse_window_list("50..200/50,20,50") == std::vector<int>{20, 50, 100, 150, 200});
    CHECK(cli::parse_window_list("").empty());
    CHECK_THROWS_AS(cli::parse_window_list("5..2"), ConfigError);
    CHECK_THROWS_AS(cli::parse_window_list("ten"), ConfigError);
}

TEST_CASE("synth writes the requested rows and is byte-stable") {
    const auto a = fresh_dir("synth_a"), b = fresh_dir("synth_b");
    synth_fixture(a, 2, 10);
    synth_fixture(b, 2, 10);
    const auto text = slurp(a / "prices.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 21);
    CHECK(text.rfind("date,ticker,close\n", 0) == 0);
    CHECK(text == slurp(b / "prices.csv"));
}

TEST_CASE("corr census sums to the pair count") {
    for (const std::size_t n : {2u, 20u, 30u}) {
        const auto dir = fresh_dir("corr_" + std::to_string(n));
        const auto data = synth_fixture(dir, n, 80);
        const auto r = invoke({"corr", "--data", data, "--out", dir.string()});
        REQUIRE(r.code == 0);
        const auto census = slurp(dir / "census.txt");
        unsigned s = 0, w = 0, ng = 0, u = 0;
        REQUIRE(std::sscanf(census.c_str(), "strong=%u weak=%u negative=%u undefined=%u", &s, &w, &ng, &u) == 4);
        CHECK(s + w + ng + u == n * (n - 1) / 2);
        CHECK(r.out.find("strong=") == 0);
    }
}

TEST_CASE("corr finds one engineered strong pair") {
    const auto dir = fresh_dir("corr_pair");
    const auto data = synth_fixture(dir, 4, 2000, "S100:S101:0.8");
    const auto r = invoke({"corr", "--data", data, "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("strong=1 ", 0) == 0);
    CHECK(slurp(dir / "pairs.csv").find("S100,S101,") != std::string::npos);

    const auto j = invoke({"corr", "--data", data, "--out", dir.string(), "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(fs::exists(dir / "pairs.json"));
    CHECK(fs::exists(dir / "correlation_matrix.json"));
}

TEST_CASE("lifetime outputs and window validation") {
    const auto dir = fresh_dir("lifetime");
    const auto data = synth_fixture(dir, 4, 1500, "S100:S101:0.8");
    const auto r = invoke({"lifetime", "--data", data, "--windows", "2..5,60,80", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto runs = slurp(dir / "runs.csv");
    CHECK(runs.rfind("pair,window_width,run_index,start,end,length,censored\n", 0) == 0);
    const auto portfolio = slurp(dir / "portfolio.csv");
    CHECK(portfolio.rfind("window_width,mean,stddev,pair_count\n2,", 0) == 0);

    std::istringstream rows(slurp(dir / "pair_mltc.csv"));
    std::string line;
    std::getline(rows, line);
    CHECK(line == "pair,window_width,mltc,run_count");
    while (std::getline(rows, line)) {
        const auto fields = split_fields(line);
        const int width = std::stoi(fields[1]);
        const double value = std::stod(fields[2]);
        if (fields[0] == "S100-S101") {
            if (width >= 60) CHECK(value > 0.0);
        } else if (width >= 60) {
            CHECK(value == 0.0);
        }
    }
    const auto iid = fresh_dir("lifetime_iid");
    const auto noise = synth_fixture(iid, 6, 1500);
    REQUIRE(invoke({"lifetime", "--data", noise, "--windows", "2..5", "--out", iid.string()}).code == 0);
    std::istringstream curve(slurp(iid / "portfolio.csv"));
    std::getline(curve, line);
    while (std::getline(curve, line)) CHECK(std::stod(split_fields(line)[2]) < 1.0);

    CHECK(invoke({"lifetime", "--data", data, "--out", dir.string()}).code == 1);
    CHECK(invoke({"lifetime", "--data", data, "--window", "1", "--out", dir.string()}).code == 1);
    CHECK(invoke({"lifetime", "--data", data, "--window", "5000", "--out", dir.string()}).code == 1);
    CHECK(invoke({"lifetime", "--data", data, "--window", "5", "--strong-threshold", "0", "--out", dir.string()})
              .code == 1);
}

TEST_CASE("mst outputs") {
    SUBCASE("two tickers") {
        const auto dir = fresh_dir("mst_two");
        const auto data = synth_fixture(dir, 2, 200);
        const auto r = invoke({"mst", "--data", data, "--windows", "20,40", "--out", dir.string()});
        REQUIRE(r.code == 0);
        CHECK(slurp(dir / "half_life.csv") == "window_width,half_life,trees,skipped\n20,NA,180,0\n40,NA,160,0\n");
        const auto survival = slurp(dir / "survival.csv");
        CHECK(survival.find(",0.5") == std::string::npos);
        CHECK(slurp(dir / "trees_w20.csv").rfind("window_end,ticker_i,ticker_j,distance\n", 0) == 0);
        CHECK(fs::exists(dir / "mst_full.edgelist"));
    }
    SUBCASE("stationary market has a half-life that grows with the window") {
        const auto dir = fresh_dir("mst_stationary");
        const auto r0 = invoke({"synth", "--tickers", "A,B,C,D,E,F", "--rho", "0.3", "--length", "3000", "--seed",
                                "8", "--out", dir.string()});
        REQUIRE(r0.code == 0);
        const auto r = invoke(
            {"mst", "--data", (dir / "prices.csv").string(), "--windows", "50,100,200", "--out", dir.string()});
        REQUIRE(r.code == 0);
        std::istringstream rows(slurp(dir / "half_life.csv"));
        std::string line;
        std::getline(rows, line);
        int previous = 0;
        while (std::getline(rows, line)) {
            const auto fields = split_fields(line);
            REQUIRE(fields[1] != "NA");
            CHECK(std::stoi(fields[1]) > previous);
            previous = std::stoi(fields[1]);
        }
    }
    SUBCASE("regime flip pulls survival below one half near the flip") {
        const auto dir = fresh_dir("mst_flip");
        const auto r0 = invoke({"synth", "--tickers", "A,B,C,D", "--rho", "0.1", "--pair-rho", "A:B:0.9,C:D:0.9",
                                "--length", "300", "--regime-length", "300", "--regime-pair-rho", "A:C:0.9,B:D:0.9",
                                "--seed", "2", "--out", dir.string()});
        REQUIRE(r0.code == 0);
        const auto r = invoke({"mst", "--data", (dir / "prices.csv").string(), "--window", "40", "--step", "10",
                               "--out", dir.string()});
        REQUIRE(r.code == 0);
        const auto hl = slurp(dir / "half_life.csv");
        CHECK(hl.find("40,NA") == std::string::npos);
    }
}

TEST_CASE("epps command") {
    const auto dir = fresh_dir("epps");
    const auto r = invoke({"epps", "--horizon", "390000", "--out", dir.string()});
    REQUIRE(r.code == 0);
    std::istringstream rows(slurp(dir / "epps.csv"));
    std::string line;
    std::getline(rows, line);
    CHECK(line == "interval,measured_rho,true_rho,samples,stderr");
    double previous = -1.0;
    while (std::getline(rows, line)) {
        const auto fields = split_fields(line);
        CHECK(fields[2] == "0.7");
        CHECK(std::stod(fields[1]) > previous);
        previous = std::stod(fields[1]);
    }

    const auto zero = invoke({"epps", "--rho", "0", "--horizon", "390000", "--out", dir.string()});
    REQUIRE(zero.code == 0);
    std::istringstream zrows(slurp(dir / "epps.csv"));
    std::getline(zrows, line);
    while (std::getline(zrows, line)) CHECK(std::abs(std::stod(split_fields(line)[1])) < 0.1);

    CHECK(invoke({"epps", "--horizon", "100", "--out", dir.string()}).code == 1);
}

TEST_CASE("config file values are overridden by flags") {
    const auto dir = fresh_dir("config");
    const auto data = synth_fixture(dir, 3, 300);
    std::ofstream(dir / "run.cfg") << "data = " << data << "\nwindows = 10,20\nout = " << dir.string()
                                   << "\nstrong-threshold = 0.4\n";
    REQUIRE(invoke({"lifetime", "--config", (dir / "run.cfg").string()}).code == 0);
    CHECK(slurp(dir / "portfolio.csv").find("\n20,") != std::string::npos);

    REQUIRE(invoke({"lifetime", "--config", (dir / "run.cfg").string(), "--windows", "30"}).code == 0);
    const auto curve = slurp(dir / "portfolio.csv");
    CHECK(curve.find("\n30,") != std::string::npos);
    CHECK(curve.find("\n20,") == std::string::npos);
}

TEST_CASE("exit codes") {
    const auto dir = fresh_dir("codes");
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"corr", "--bogus"}).code == 1);
    CHECK(invoke({"corr", "--data", (dir / "missing.csv").string()}).code == 2);
    std::ofstream(dir / "bad.csv") << "date,ticker,close\n2020-01-02,AAA,-1\n";
    const auto bad = invoke({"corr", "--data", (dir / "bad.csv").string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("non-positive price") != std::string::npos);
    CHECK(invoke({"corr", "--data", (dir / "bad.csv").string(), "--from", "2020-13-01"}).code == 1);

    const auto help = invoke({"--help"});
    CHECK(help.code == 0);
    for (const char* flag : {"--data", "--from", "--to", "--window", "--windows", "--step", "--strong-threshold",
                             "--align", "--out", "--format", "--seed", "--config"}) {
        CHECK_MESSAGE(help.out.find(flag) != std::string::npos, flag);
    }
}

}  // TEST_SUITE
