#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "../support/panels.hpp"
#include "corrlife/lifetime.hpp"
#include "corrlife/synth.hpp"

using namespace corrlife;

namespace {

// 'S' strong, 'W' weak, 'N' negative, 'U' undefined.
RollingCorrelationSeries series_from(std::string_view pattern, int step = 1) {
    RollingCorrelationSeries s{"A", "B", 10, step, {}};
    Date day = parse_date("2015-01-05");
    for (const char c : pattern) {
        std::optional<double> rho;
        if (c == 'S') rho = 0.9;
        else if (c == 'W') rho = 0.1;
        else if (c == 'N') rho = -0.3;
        s.points.push_back({day, rho});
        for (int k = 0; k < step; ++k) day = next_weekday(day);
    }
    return s;
}

std::vector<int> lengths(const std::vector<LifetimeRun>& runs) {
    std::vector<int> out;
    for (const auto& r : runs) out.push_back(r.length);
    return out;
}

}  // namespace

TEST_SUITE("lifetime") {

TEST_CASE("runs from level patterns") {
    CHECK(lengths(extract_runs(series_from("SSSWSS"))) == std::vector<int>{3, 2});
    CHECK(extract_runs(series_from("WWW")).empty());
    CHECK(mltc(extract_runs(series_from("WWW"))) == 0.0);

    const auto six = extract_runs(series_from("SWSWSWSWSWSW"));
    CHECK(six.size() == 6);
    CHECK(std::all_of(six.begin(), six.end(), [](const LifetimeRun& r) { return r.length == 1; }));

    CHECK(lengths(extract_runs(series_from("SSUSS"))) == std::vector<int>{2, 2});
    CHECK(lengths(extract_runs(series_from("SSNSS"))) == std::vector<int>{2, 2});
    CHECK(lengths(extract_runs(series_from("SSSWSS", 5))) == std::vector<int>{15, 10});
    CHECK(lengths(extract_runs(series_from("WNNWN"), CorrelationLevel::Negative)) == std::vector<int>{2, 1});
}

TEST_CASE("run dates and censoring") {
    const auto s = series_from("SSWWSWSS");
    const auto runs = extract_runs(s);
    REQUIRE(runs.size() == 3);
    CHECK(runs[0].start == s.points[0].window_end);
    CHECK(runs[0].end == s.points[1].window_end);
    CHECK(runs[0].censored_left);
    CHECK_FALSE(runs[0].censored_right);
    CHECK_FALSE(runs[1].censored());
    CHECK(runs[2].censored_right);
    CHECK(runs[0].ticker_i == "A");

    const auto whole = extract_runs(series_from("SSS"));
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].censored_left);
    CHECK(whole[0].censored_right);
}

TEST_CASE("mltc is the plain mean of run lengths") {
    const auto runs = extract_runs(series_from("SSSWSS"));
    CHECK(mltc(runs) == 2.5);
    CHECK(mltc(std::vector<LifetimeRun>{}) == 0.0);

    // The only uncensored run is the middle one.
    const auto inner = extract_runs(series_from("SWSSSWSS"));
    CHECK(mltc(inner) == doctest::Approx(2.0));
    CHECK(mltc(inner, false) == 3.0);
    CHECK(mltc(extract_runs(series_from("SSS")), false) == 0.0);
}

TEST_CASE("property: runs match the brute-force scanner and partition strong positions") {
    std::mt19937_64 gen(21);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> len(0, 50);
    const char symbols[] = {'S', 'W', 'N', 'U'};
    for (int trial = 0; trial < 300; ++trial) {
        std::string pattern;
        const int n = len(gen);
        for (int k = 0; k < n; ++k) pattern.push_back(symbols[pick(gen)]);
        const int step = 1 + trial % 3;
        const auto s = series_from(pattern, step);

        std::vector<CorrelationLevel> levels;
        for (const auto& p : s.points) levels.push_back(classify(p.rho));
        const auto expected = oracle::brute_force_segments(levels, CorrelationLevel::Strong);
        const auto spans = find_runs(levels, CorrelationLevel::Strong);
        REQUIRE(spans.size() == expected.size());
        for (std::size_t k = 0; k < spans.size(); ++k) {
            CHECK(spans[k].first == expected[k].first);
            CHECK(spans[k].count == expected[k].second);
        }

        const auto runs = extract_runs(s);
        const auto strong = std::count(pattern.begin(), pattern.end(), 'S');
        int total = 0;
        for (const auto& r : runs) total += r.length;
        CHECK(total == step * strong);
    }
}

TEST_CASE("mltc curve and pair lifetime on synthetic pairs") {
    auto spec = uniform_market({"A", "B", "C"}, 0.1, 0.01, 3001, 12);
    set_pair_correlation(spec, 0, 1, 0.8);
    const auto market = generate_panel(spec);
    const auto& r = market.returns;
    const std::vector<int> widths{10, 20, 40, 80};

    const auto strong = mltc_curve(r, 0, 1, widths, 1);
    REQUIRE(strong.size() == widths.size());
    // Once every window is strong the single run shrinks with the window count, so one drop is allowed.
    int drops = 0;
    for (std::size_t k = 1; k < strong.size(); ++k) drops += strong[k].value < strong[k - 1].value;
    CHECK(drops <= 1);
    CHECK(strong.front().value > 0.0);

    const std::vector<int> large{60, 80, 120};
    for (const auto& p : mltc_curve(r, 0, 2, large, 1)) CHECK(p.value == 0.0);

    // Swapping the pair does not change the result.
    CHECK(pair_lifetime(r, 1, 0, 20, 1).mltc == pair_lifetime(r, 0, 1, 20, 1).mltc);

    // A single window gives 0 or one step.
    const auto last = static_cast<int>(r.length());
    for (const int step : {1, 3}) {
        const double one = mltc_curve(r, 0, 1, std::vector<int>{last}, step).front().value;
        CHECK((one == 0.0 || one == step));
    }
}

TEST_CASE("portfolio aggregates") {
    SUBCASE("one pair") {
        const auto market = generate_panel(uniform_market({"A", "B"}, 0.6, 0.01, 400, 4));
        const auto p = portfolio_mltc(market.returns, 20, 1);
        CHECK(p.pair_count == 1);
        CHECK(p.mean == pair_lifetime(market.returns, 0, 1, 20, 1).mltc);
        CHECK(p.stddev == 0.0);
        for (const auto& pt : stddev_curve(market.returns, std::vector<int>{5, 10, 30}, 1)) CHECK(pt.value == 0.0);
    }
    SUBCASE("four tickers, brute-force average of six pairs") {
        auto spec = uniform_market({"A", "B", "C", "D"}, 0.45, 0.01, 800, 6);
        set_pair_correlation(spec, 0, 1, 0.8);
        const auto market = generate_panel(spec);
        std::vector<double> per_pair;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                const auto series = rolling_correlation(market.returns, i, j, 15, 2);
                per_pair.push_back(mltc(extract_runs(series)));
            }
        }
        REQUIRE(per_pair.size() == 6);
        double mean = 0.0;
        for (const double v : per_pair) mean += v;
        mean /= 6.0;
        double ss = 0.0;
        for (const double v : per_pair) ss += (v - mean) * (v - mean);

        const auto p = portfolio_mltc(market.returns, 15, 2, {}, "toy");
        CHECK(p.portfolio == "toy");
        CHECK(p.pair_count == 6);
        CHECK(p.mean == doctest::Approx(mean).epsilon(1e-14));
        CHECK(p.stddev == doctest::Approx(std::sqrt(ss / 6.0)).epsilon(1e-14));
        CHECK(p.mean >= *std::min_element(per_pair.begin(), per_pair.end()));
        CHECK(p.mean <= *std::max_element(per_pair.begin(), per_pair.end()));
    }
    SUBCASE("identical dynamics give zero spread") {
        auto spec = uniform_market({"A", "B", "C"}, 1.0, 0.01, 300, 2);
        const auto market = generate_panel(spec);
        CHECK(portfolio_mltc(market.returns, 10, 1).stddev == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("stddev curve on i.i.d. and mixed panels") {
    auto spec = uniform_market(test::tickers(6), 0.0, 0.01, 2001, 31);
    const auto iid = generate_panel(spec);
    for (const auto& pt : stddev_curve(iid.returns, std::vector<int>{2, 3, 4, 5}, 1)) CHECK(pt.value < 1.0);

    set_pair_correlation(spec, 0, 1, 0.8);
    const auto mixed = generate_panel(spec);
    const auto curve = stddev_curve(mixed.returns, std::vector<int>{5, 10, 20, 40}, 1);
    for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k].value > curve[k - 1].value);
}

TEST_CASE("run and curve exports") {
    std::vector<LifetimeStats> stats{{"C", "JPM", 65, extract_runs(series_from("SSWS")), 0.0}};
    stats[0].mltc = mltc(stats[0].runs);
    std::ostringstream runs;
    write_runs_csv(stats, runs);
    CHECK(runs.str() ==
          "pair,window_width,run_index,start,end,length,censored\n"
          "C-JPM,65,0,2015-01-05,2015-01-06,2,left\n"
          "C-JPM,65,1,2015-01-08,2015-01-08,1,right\n");

    std::ostringstream curve;
    const std::vector<PortfolioLifetime> rows{{"p", 10, 1.5, 0.25, 3}};
    write_portfolio_csv(rows, curve);
    CHECK(curve.str() == "window_width,mean,stddev,pair_count\n10,1.5,0.25,3\n");

    std::ostringstream json;
    write_runs_json(stats, json);
    CHECK(json.str().find("\"censored\": \"left\"") != std::string::npos);
}

}  // TEST_SUITE
