#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corrlife/date.hpp"
#include "corrlife/ingest.hpp"
#include "corrlife/synth.hpp"

namespace corrlife::cli {

enum class OutputFormat { Csv, Json };

/// Everything one invocation needs. Filled from the config file first, then
/// overridden by command-line flags.
struct RunConfig {
    // shared
    std::string data;
    std::optional<Date> from;
    std::optional<Date> to;
    std::vector<int> window_widths;
    int step = 1;
    double strong_threshold = 0.5;
    AlignPolicy align;
    std::filesystem::path out = ".";
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 42;

    // lifetime
    bool exclude_censored = false;
    std::string portfolio = "portfolio";

    // synth
    std::vector<std::string> tickers;
    std::size_t length = 0;
    std::optional<double> rho;
    std::vector<std::string> pair_rho;
    double volatility = 0.02;
    Date start = kDefaultStartDate;
    std::size_t regime_length = 0;
    std::optional<double> regime_rho;
    std::vector<std::string> regime_pair_rho;

    // epps
    double intensity = 50.0;
    std::vector<double> intervals;
    double horizon = 0.0;
    double day_length = 390.0;
};

/// Parses `10,20,40`, `2..5` or `50..400/50`, or any comma-separated mix.
/// Result is sorted and free of duplicates. Throws ConfigError.
std::vector<int> parse_window_list(std::string_view text);

/// Window list, step and threshold checks shared by every analysis command.
void validate_windows(const RunConfig& config);
void validate_threshold(const RunConfig& config);

/// Builds the market from `tickers`, `length`, `rho`, `pair-rho` and `vol`
/// (plus the regime settings when `regime_length` > 0). Pair overrides are
/// written `TICKER_A:TICKER_B:rho`.
MarketSpec market_spec(const RunConfig& config);
std::optional<MarketSpec> regime_spec(const RunConfig& config);

AsyncTradeSpec async_trade_spec(const RunConfig& config);

}  // namespace corrlife::cli
