/**
 * @file ingest.hpp
 * @brief Price loading, calendar alignment and log-returns.
 *
 * Two CSV layouts are accepted (UTF-8, comma separated, `.` decimal point,
 * ISO-8601 dates, header row required):
 *
 *   long:       date,ticker,close      one file, many tickers
 *   per-ticker: date,close             one file per ticker, ticker = file stem
 *
 * Columns are located by header name (case-insensitive) so extra columns
 * such as `open` or `volume` are ignored.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrlife/date.hpp"
#include "corrlife/matrix.hpp"

namespace corrlife {

struct PriceObservation {
    Date date;
    double close = 0.0;
};

/// Closing prices of one ticker, dates strictly increasing, closes > 0.
struct PriceSeries {
    std::string ticker;
    std::vector<PriceObservation> observations;
};

enum class CsvLayout { Long, PerTicker };

/// Loads every ticker found at `source`. Series are returned sorted by ticker.
/// Throws DataError naming file and line on malformed rows, non-positive
/// prices, and duplicate (ticker, date) pairs.
std::vector<PriceSeries> load_prices(const std::filesystem::path& source, CsvLayout layout);

/// Chooses the layout from the path: a directory is read as per-ticker files
/// (`*.csv`), a regular file as long format.
std::vector<PriceSeries> load_prices(const std::filesystem::path& source);

std::vector<PriceSeries> parse_long_csv(std::istream& in, const std::string& source_name);
PriceSeries parse_ticker_csv(std::istream& in, std::string ticker, const std::string& source_name);

/// Drops observations outside [from, to] (either bound optional).
std::vector<PriceSeries> restrict_dates(std::vector<PriceSeries> series, std::optional<Date> from,
                                        std::optional<Date> to);

struct AlignPolicy {
    enum class Kind { Intersect, ForwardFill };
    Kind kind = Kind::Intersect;
    /// Longest run of consecutive missing calendar days that forward-fill
    /// will bridge. Only meaningful for ForwardFill.
    int max_gap = 0;

    static AlignPolicy intersect() { return {}; }
    static AlignPolicy forward_fill(int max_gap) { return {Kind::ForwardFill, max_gap}; }
};

/// Parses `intersect` or `ffill:<max_gap>`. Throws ConfigError.
AlignPolicy parse_align_policy(std::string_view text);

/// Rectangular n x T grid of closes on a shared calendar.
struct PricePanel {
    std::vector<std::string> tickers;
    std::vector<Date> calendar;
    Matrix closes;  // rows = tickers, cols = calendar

    std::size_t ticker_count() const { return tickers.size(); }
    std::size_t day_count() const { return calendar.size(); }
    std::optional<std::size_t> index_of(std::string_view ticker) const;
};

/// Log-returns of a PricePanel; column t is dated at the later of its two days.
struct ReturnPanel {
    std::vector<std::string> tickers;
    std::vector<Date> calendar;
    Matrix returns;  // rows = tickers, cols = return dates

    std::size_t ticker_count() const { return tickers.size(); }
    std::size_t length() const { return calendar.size(); }
    std::optional<std::size_t> index_of(std::string_view ticker) const;

    std::span<const double> row(std::size_t ticker) const {
        return {returns.data() + ticker * static_cast<std::size_t>(returns.cols()),
                static_cast<std::size_t>(returns.cols())};
    }
};

/**
 * Aligns series onto one calendar.
 *
 * Intersect keeps only dates every ticker traded. ForwardFill starts from the
 * union of all dates; a run of missing days no longer than `max_gap` is filled
 * with the ticker's last close, while a longer run (or any date before the
 * ticker's first observation) removes those dates for every ticker.
 *
 * Throws DataError for fewer than 2 series or an empty resulting calendar.
 */
PricePanel align_panel(std::span<const PriceSeries> series, AlignPolicy policy = AlignPolicy::intersect());

/// returns[i][t] = ln(closes[i][t+1]) - ln(closes[i][t]). Throws DataError if T < 2.
ReturnPanel log_returns(const PricePanel& panel);

/// Writes the panel in long layout (`date,ticker,close`), date-major, with
/// closes printed in shortest round-trip form.
void write_long_csv(const PricePanel& panel, std::ostream& out);

}  // namespace corrlife
