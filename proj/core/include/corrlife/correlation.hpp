/**
 * @file correlation.hpp
 * @brief Pearson correlation of log-returns, full-period and rolling.
 *
 * Coefficients are temporal averages over the observations in the window:
 *
 *     rho = (<xy> - <x><y>) / sqrt((<x^2> - <x>^2) (<y^2> - <y>^2))
 *
 * evaluated in centred form. A window where either series has zero variance
 * has no coefficient; it is carried as an empty optional (UNDEFINED) and never
 * silently replaced by zero.
 */
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrlife/date.hpp"
#include "corrlife/ingest.hpp"
#include "corrlife/matrix.hpp"

namespace corrlife {

inline constexpr double kDefaultStrongThreshold = 0.5;

/// Round-off allowance before |rho| > 1 is treated as a broken input.
inline constexpr double kClampTolerance = 1e-12;

/// Pearson coefficient of two equally long series, clamped to [-1, 1].
/// Empty result when either variance is zero. Throws std::invalid_argument
/// on length mismatch or fewer than 2 observations, and InvariantError when
/// round-off pushes |rho| beyond 1 + kClampTolerance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

enum class CorrelationLevel { Strong, Weak, Negative, Undefined };

std::string_view to_string(CorrelationLevel level);

/// STRONG for rho in [threshold, 1], WEAK for [0, threshold), NEGATIVE for [-1, 0).
CorrelationLevel classify(std::optional<double> rho, double strong_threshold = kDefaultStrongThreshold);

/// Correlation distance sqrt(2 (1 - rho)), a metric on [0, 2].
/// Throws std::domain_error for rho outside [-1, 1].
double distance(double rho);

/// Symmetric n x n coefficient matrix. Undefined entries are stored as NaN.
class CorrelationMatrix {
public:
    CorrelationMatrix() = default;
    CorrelationMatrix(std::vector<std::string> tickers, Matrix rho);

    const std::vector<std::string>& tickers() const { return tickers_; }
    std::size_t size() const { return tickers_.size(); }
    const Matrix& values() const { return rho_; }

    std::optional<double> at(std::size_t i, std::size_t j) const;
    bool defined(std::size_t i, std::size_t j) const { return at(i, j).has_value(); }

    /// Index pairs (i < j) whose coefficient is undefined.
    std::vector<std::pair<std::size_t, std::size_t>> undefined_pairs() const;

private:
    std::vector<std::string> tickers_;
    Matrix rho_;
};

/// Coefficient matrix over every return in the panel.
CorrelationMatrix full_period_matrix(const ReturnPanel& panel);

/// Coefficient matrix over return columns [first, first + width).
CorrelationMatrix window_matrix(const ReturnPanel& panel, std::size_t first, std::size_t width);

struct RollingPoint {
    Date window_end;
    std::optional<double> rho;
};

struct RollingCorrelationSeries {
    std::string ticker_i;
    std::string ticker_j;
    int window_width = 0;
    int step = 1;
    std::vector<RollingPoint> points;
};

/// Number of window positions: floor((length - width) / step) + 1.
std::size_t window_count(std::size_t length, int window_width, int step);

/// Validates a window configuration against a return series length.
/// Throws ConfigError.
void check_window(std::size_t length, int window_width, int step);

/// Coefficient over each trailing window of `window_width` returns.
/// Window k covers columns [k*step, k*step + width) and is dated at its
/// last column.
RollingCorrelationSeries rolling_correlation(const ReturnPanel& panel, std::size_t i, std::size_t j,
                                             int window_width, int step = 1);

/// Overload resolving tickers by name; throws ConfigError for unknown tickers.
RollingCorrelationSeries rolling_correlation(const ReturnPanel& panel, std::string_view ticker_i,
                                             std::string_view ticker_j, int window_width, int step = 1);

struct LevelCensus {
    std::size_t strong = 0;
    std::size_t weak = 0;
    std::size_t negative = 0;
    std::size_t undefined = 0;

    std::size_t total() const { return strong + weak + negative + undefined; }
};

/// Level counts over the n(n-1)/2 off-diagonal pairs.
LevelCensus census(const CorrelationMatrix& matrix, double strong_threshold = kDefaultStrongThreshold);

/// `strong=<a> weak=<b> negative=<c> undefined=<d>`
std::string format_census(const LevelCensus& census);

/// Square matrix with a header row and a leading ticker column; undefined
/// entries are written as `NA`.
void write_matrix_csv(const CorrelationMatrix& matrix, std::ostream& out);
void write_matrix_json(const CorrelationMatrix& matrix, std::ostream& out);

/// One row per unordered pair: `ticker_i,ticker_j,rho,level`.
void write_pair_list_csv(const CorrelationMatrix& matrix, double strong_threshold, std::ostream& out);
void write_pair_list_json(const CorrelationMatrix& matrix, double strong_threshold, std::ostream& out);

}  // namespace corrlife
