#include "corrlife/lifetime.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "corrlife/errors.hpp"
#include "corrlife/format.hpp"

namespace corrlife {

namespace {

std::string_view censor_tag(const LifetimeRun& run) {
    if (run.censored_left && run.censored_right) return "both";
    if (run.censored_left) return "left";
    if (run.censored_right) return "right";
    return "none";
}

}  // namespace

std::vector<RunSpan> find_runs(std::span<const CorrelationLevel> levels, CorrelationLevel target) {
    std::vector<RunSpan> runs;
    std::size_t k = 0;
    while (k < levels.size()) {
        if (levels[k] != target) {
            ++k;
            continue;
        }
        const auto first = k;
        while (k < levels.size() && levels[k] == target) ++k;
        runs.push_back({first, k - first});
    }
    return runs;
}

std::vector<LifetimeRun> extract_runs(const RollingCorrelationSeries& series, CorrelationLevel level,
                                      double strong_threshold) {
    std::vector<CorrelationLevel> levels;
    levels.reserve(series.points.size());
    for (const auto& p : series.points) levels.push_back(classify(p.rho, strong_threshold));

    std::vector<LifetimeRun> runs;
    for (const auto& span : find_runs(levels, level)) {
        const auto last = span.first + span.count - 1;
        runs.push_back({series.ticker_i, series.ticker_j, series.points[span.first].window_end,
                        series.points[last].window_end, static_cast<int>(span.count) * series.step,
                        span.first == 0, last + 1 == levels.size()});
    }
    return runs;
}

double mltc(std::span<const LifetimeRun> runs, bool include_censored) {
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& run : runs) {
        if (!include_censored && run.censored()) continue;
        total += run.length;
        ++count;
    }
    return count == 0 ? 0.0 : total / static_cast<double>(count);
}

LifetimeStats pair_lifetime(const ReturnPanel& panel, std::size_t i, std::size_t j, int window_width, int step,
                            const LifetimeOptions& options) {
    const auto series = rolling_correlation(panel, i, j, window_width, step);
    LifetimeStats stats{series.ticker_i, series.ticker_j, window_width,
                        extract_runs(series, options.level, options.strong_threshold), 0.0};
    stats.mltc = mltc(stats.runs, options.include_censored);
    return stats;
}

std::vector<LifetimeStats> all_pair_lifetimes(const ReturnPanel& panel, int window_width, int step,
                                              const LifetimeOptions& options) {
    const auto n = panel.ticker_count();
    if (n < 2) {
        throw DataError("lifetime statistics need at least 2 tickers");
    }
    std::vector<LifetimeStats> out;
    out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.push_back(pair_lifetime(panel, i, j, window_width, step, options));
        }
    }
    return out;
}

std::vector<CurvePoint> mltc_curve(const ReturnPanel& panel, std::size_t i, std::size_t j,
                                   std::span<const int> window_widths, int step, const LifetimeOptions& options) {
    std::vector<CurvePoint> curve;
    curve.reserve(window_widths.size());
    for (const int width : window_widths) {
        curve.push_back({width, pair_lifetime(panel, i, j, width, step, options).mltc});
    }
    return curve;
}

PortfolioLifetime summarize(std::string portfolio, int window_width, std::span<const LifetimeStats> pairs) {
    PortfolioLifetime out{std::move(portfolio), window_width, 0.0, 0.0, pairs.size()};
    if (pairs.empty()) return out;
    const auto count = static_cast<double>(pairs.size());
    for (const auto& p : pairs) out.mean += p.mltc;
    out.mean /= count;
    double ss = 0.0;
    for (const auto& p : pairs) ss += (p.mltc - out.mean) * (p.mltc - out.mean);
    out.stddev = std::sqrt(ss / count);
    return out;
}

PortfolioLifetime portfolio_mltc(const ReturnPanel& panel, int window_width, int step,
                                 const LifetimeOptions& options, std::string portfolio) {
    const auto pairs = all_pair_lifetimes(panel, window_width, step, options);
    return summarize(std::move(portfolio), window_width, pairs);
}

std::vector<CurvePoint> stddev_curve(const ReturnPanel& panel, std::span<const int> window_widths, int step,
                                     const LifetimeOptions& options) {
    std::vector<CurvePoint> curve;
    curve.reserve(window_widths.size());
    for (const int width : window_widths) {
        curve.push_back({width, portfolio_mltc(panel, width, step, options).stddev});
    }
    return curve;
}

std::string pair_label(const std::string& ticker_i, const std::string& ticker_j) {
    return ticker_i + "-" + ticker_j;
}

void write_runs_csv(std::span<const LifetimeStats> stats, std::ostream& out) {
    out << "pair,window_width,run_index,start,end,length,censored\n";
    for (const auto& s : stats) {
        const auto label = pair_label(s.ticker_i, s.ticker_j);
        for (std::size_t k = 0; k < s.runs.size(); ++k) {
            const auto& run = s.runs[k];
            out << label << ',' << s.window_width << ',' << k << ',' << format_date(run.start) << ','
                << format_date(run.end) << ',' << run.length << ',' << censor_tag(run) << '\n';
        }
    }
}

void write_runs_json(std::span<const LifetimeStats> stats, std::ostream& out) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : stats) {
        const auto label = pair_label(s.ticker_i, s.ticker_j);
        for (std::size_t k = 0; k < s.runs.size(); ++k) {
            const auto& run = s.runs[k];
            rows.push_back({{"pair", label},
                            {"window_width", s.window_width},
                            {"run_index", k},
                            {"start", format_date(run.start)},
                            {"end", format_date(run.end)},
                            {"length", run.length},
                            {"censored", censor_tag(run)}});
        }
    }
    out << rows.dump(2) << '\n';
}

void write_pair_mltc_csv(std::span<const LifetimeStats> stats, std::ostream& out) {
    out << "pair,window_width,mltc,run_count\n";
    for (const auto& s : stats) {
        out << pair_label(s.ticker_i, s.ticker_j) << ',' << s.window_width << ',' << format_double(s.mltc) << ','
            << s.runs.size() << '\n';
    }
}

void write_pair_mltc_json(std::span<const LifetimeStats> stats, std::ostream& out) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : stats) {
        rows.push_back({{"pair", pair_label(s.ticker_i, s.ticker_j)},
                        {"window_width", s.window_width},
                        {"mltc", s.mltc},
                        {"run_count", s.runs.size()}});
    }
    out << rows.dump(2) << '\n';
}

void write_portfolio_csv(std::span<const PortfolioLifetime> curve, std::ostream& out) {
    out << "window_width,mean,stddev,pair_count\n";
    for (const auto& p : curve) {
        out << p.window_width << ',' << format_double(p.mean) << ',' << format_double(p.stddev) << ','
            << p.pair_count << '\n';
    }
}

void write_portfolio_json(std::span<const PortfolioLifetime> curve, std::ostream& out) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : curve) {
        rows.push_back({{"portfolio", p.portfolio},
                        {"window_width", p.window_width},
                        {"mean", p.mean},
                        {"stddev", p.stddev},
                        {"pair_count", p.pair_count}});
    }
    out << rows.dump(2) << '\n';
}

}  // namespace corrlife
