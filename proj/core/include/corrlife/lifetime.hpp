/**
 * @file lifetime.hpp
 * @brief Lifetime of correlation: how long a rolling coefficient stays strong.
 *
 * A lifetime is a maximal stretch of consecutive window positions whose
 * rolling coefficient sits on the target level (STRONG by default). Its
 * length is counted in trading days as positions x step. The mean lifetime
 * of a pair at window width dt is the arithmetic mean of its run lengths
 * (0 with no runs); the portfolio figure averages those means over all
 * n(n-1)/2 pairs and reports their population standard deviation.
 */
#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "corrlife/correlation.hpp"
#include "corrlife/date.hpp"
#include "corrlife/ingest.hpp"

namespace corrlife {

/// Half-open run of positions [first, first + count) in a level sequence.
struct RunSpan {
    std::size_t first = 0;
    std::size_t count = 0;

    friend bool operator==(const RunSpan&, const RunSpan&) = default;
};

/// Maximal runs of `target` in `levels`. Any other level, UNDEFINED included,
/// ends a run.
std::vector<RunSpan> find_runs(std::span<const CorrelationLevel> levels, CorrelationLevel target);

struct LifetimeRun {
    std::string ticker_i;
    std::string ticker_j;
    Date start;          ///< window-end date of the first position in the run
    Date end;            ///< window-end date of the last position in the run
    int length = 0;      ///< trading days (positions x step)
    bool censored_left = false;   ///< run begins at the first window position
    bool censored_right = false;  ///< run ends at the last window position

    bool censored() const { return censored_left || censored_right; }
};

struct LifetimeOptions {
    double strong_threshold = kDefaultStrongThreshold;
    CorrelationLevel level = CorrelationLevel::Strong;
    /// Runs cut off by either end of the series still count toward the mean.
    bool include_censored = true;
};

std::vector<LifetimeRun> extract_runs(const RollingCorrelationSeries& series,
                                      CorrelationLevel level = CorrelationLevel::Strong,
                                      double strong_threshold = kDefaultStrongThreshold);

/// Mean run length in trading days; 0 for no (eligible) runs.
double mltc(std::span<const LifetimeRun> runs, bool include_censored = true);

struct LifetimeStats {
    std::string ticker_i;
    std::string ticker_j;
    int window_width = 0;
    std::vector<LifetimeRun> runs;
    double mltc = 0.0;
};

LifetimeStats pair_lifetime(const ReturnPanel& panel, std::size_t i, std::size_t j, int window_width, int step,
                            const LifetimeOptions& options = {});

/// Every unordered pair i < j, in ticker order.
std::vector<LifetimeStats> all_pair_lifetimes(const ReturnPanel& panel, int window_width, int step,
                                              const LifetimeOptions& options = {});

struct CurvePoint {
    int window_width = 0;
    double value = 0.0;
};

std::vector<CurvePoint> mltc_curve(const ReturnPanel& panel, std::size_t i, std::size_t j,
                                   std::span<const int> window_widths, int step,
                                   const LifetimeOptions& options = {});

struct PortfolioLifetime {
    std::string portfolio;
    int window_width = 0;
    double mean = 0.0;    ///< trading days
    double stddev = 0.0;  ///< population standard deviation, trading days
    std::size_t pair_count = 0;
};

/// Aggregates per-pair results taken at one window width.
PortfolioLifetime summarize(std::string portfolio, int window_width, std::span<const LifetimeStats> pairs);

PortfolioLifetime portfolio_mltc(const ReturnPanel& panel, int window_width, int step,
                                 const LifetimeOptions& options = {}, std::string portfolio = "portfolio");

std::vector<CurvePoint> stddev_curve(const ReturnPanel& panel, std::span<const int> window_widths, int step,
                                     const LifetimeOptions& options = {});

/// Pair label used in output files, e.g. `C-JPM`.
std::string pair_label(const std::string& ticker_i, const std::string& ticker_j);

/// `pair,window_width,run_index,start,end,length,censored` where censored is
/// one of none, left, right, both.
void write_runs_csv(std::span<const LifetimeStats> stats, std::ostream& out);
void write_runs_json(std::span<const LifetimeStats> stats, std::ostream& out);

/// `pair,window_width,mltc,run_count`
void write_pair_mltc_csv(std::span<const LifetimeStats> stats, std::ostream& out);
void write_pair_mltc_json(std::span<const LifetimeStats> stats, std::ostream& out);

/// `window_width,mean,stddev,pair_count`
void write_portfolio_csv(std::span<const PortfolioLifetime> curve, std::ostream& out);
void write_portfolio_json(std::span<const PortfolioLifetime> curve, std::ostream& out);

}  // namespace corrlife
