/**
 * @file synth.hpp
 * @brief Synthetic markets with known correlation, and the Epps experiment.
 *
 * generate_panel draws Gaussian daily log-returns r = diag(vol) F z, where
 * F F^T is the target correlation matrix (pivoted LDL^T, so singular but
 * positive-semidefinite targets such as rho = 1 are allowed). Prices start
 * from a base of 100 on the day before the first date:
 * close[t] = 100 exp(r[0] + ... + r[t]). Dates are consecutive weekdays.
 *
 * epps_experiment simulates two correlated continuous-time random walks
 * observed only at independent Poisson trade times, then samples each ticker
 * with the previous-tick rule on a grid of width dt and measures the
 * correlation of the grid returns.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "corrlife/date.hpp"
#include "corrlife/ingest.hpp"

namespace corrlife {

inline constexpr double kBasePrice = 100.0;
inline constexpr Date kDefaultStartDate{std::chrono::year{2000}, std::chrono::January, std::chrono::day{3}};

struct MarketSpec {
    std::vector<std::string> tickers;
    Eigen::MatrixXd target_correlation;
    std::vector<double> daily_volatility;
    std::size_t length = 0;  ///< trading days (price observations)
    std::uint64_t seed = 0;
    Date start = kDefaultStartDate;
};

/// Every off-diagonal correlation set to `rho`, every volatility to `vol`.
MarketSpec uniform_market(std::vector<std::string> tickers, double rho, double vol, std::size_t length,
                          std::uint64_t seed);

/// Sets target_correlation(i, j) and (j, i).
void set_pair_correlation(MarketSpec& spec, std::size_t i, std::size_t j, double rho);

/// Throws ConfigError unless the target is symmetric with unit diagonal and
/// the volatilities are positive and match the tickers.
void validate(const MarketSpec& spec);

/// F with F F^T = correlation. Throws ConfigError if correlation is not
/// positive-semidefinite.
Eigen::MatrixXd correlation_factor(const Eigen::MatrixXd& correlation);

struct SyntheticMarket {
    PricePanel prices;
    ReturnPanel returns;  ///< log_returns(prices)
};

SyntheticMarket generate_panel(const MarketSpec& spec);

/// `a` followed by `b`: the first a.length days follow a's correlation and
/// seed, the remainder b's. Dates and the base price come from `a`. Tickers
/// and volatilities must match. `a.length` may be 0.
SyntheticMarket regime_panel(const MarketSpec& a, const MarketSpec& b);

/// Fewer grid returns than this leave a sampling interval undefined.
inline constexpr std::size_t kMinEppsSamples = 100;

struct AsyncTradeSpec {
    double true_correlation = 0.7;
    double trade_intensity = 50.0;            ///< mean trades per day, per ticker
    std::vector<double> sampling_intervals;   ///< minutes
    double horizon = 0.0;                     ///< minutes
    std::uint64_t seed = 0;
    double day_length = 390.0;                ///< minutes in one trading day
    double daily_volatility = 0.02;
};

/// Throws ConfigError.
void validate(const AsyncTradeSpec& spec);

struct EppsPoint {
    double interval = 0.0;
    std::optional<double> measured;
    std::size_t samples = 0;
    /// (1 - r^2) / sqrt(samples - 1); NaN when undefined.
    double standard_error = 0.0;
};

std::vector<EppsPoint> epps_experiment(const AsyncTradeSpec& spec);

/// `interval,measured_rho,true_rho,samples,stderr`
void write_epps_csv(std::span<const EppsPoint> points, double true_correlation, std::ostream& out);
void write_epps_json(std::span<const EppsPoint> points, double true_correlation, std::ostream& out);

}  // namespace corrlife
