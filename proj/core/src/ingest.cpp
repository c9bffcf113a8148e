#include "corrlife/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "corrlife/errors.hpp"
#include "corrlife/format.hpp"

namespace corrlife {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct Columns {
    std::optional<std::size_t> date, ticker, close;
};

Columns locate_columns(const std::vector<std::string>& header) {
    Columns cols;
    for (std::size_t k = 0; k < header.size(); ++k) {
        const auto name = lower(header[k]);
        if (name == "date") cols.date = k;
        else if (name == "ticker") cols.ticker = k;
        else if (name == "close") cols.close = k;
    }
    return cols;
}

double parse_close(const std::string& field, const std::string& file, std::size_t line) {
    double value = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw DataError(file, line, "close '" + field + "' is not a number");
    }
    if (value <= 0.0) {
        throw DataError(file, line, "non-positive price " + field);
    }
    return value;
}

Date parse_row_date(const std::string& field, const std::string& file, std::size_t line) {
    try {
        return parse_date(field);
    } catch (const std::invalid_argument& e) {
        throw DataError(file, line, e.what());
    }
}

struct Row {
    Date date;
    double close;
    std::size_t line;
};

// Sorts by date and rejects duplicates, reporting the line of the second one.
PriceSeries finish_series(std::string ticker, std::vector<Row> rows, const std::string& file) {
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    PriceSeries series{std::move(ticker), {}};
    series.observations.reserve(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k > 0 && rows[k].date == rows[k - 1].date) {
            const auto line = std::max(rows[k].line, rows[k - 1].line);
            throw DataError(file, line,
                            "duplicate (ticker, date) " + series.ticker + " " + format_date(rows[k].date));
        }
        series.observations.push_back({rows[k].date, rows[k].close});
    }
    return series;
}

std::vector<std::string> read_header(std::istream& in, const std::string& file) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError(file, 1, "missing header row");
    }
    // Tolerate a UTF-8 byte order mark.
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) {
        line.erase(0, 3);
    }
    return split_fields(line);
}

}  // namespace

std::optional<std::size_t> PricePanel::index_of(std::string_view ticker) const {
    const auto it = std::find(tickers.begin(), tickers.end(), ticker);
    if (it == tickers.end()) return std::nullopt;
    return static_cast<std::size_t>(it - tickers.begin());
}

std::optional<std::size_t> ReturnPanel::index_of(std::string_view ticker) const {
    const auto it = std::find(tickers.begin(), tickers.end(), ticker);
    if (it == tickers.end()) return std::nullopt;
    return static_cast<std::size_t>(it - tickers.begin());
}

std::vector<PriceSeries> parse_long_csv(std::istream& in, const std::string& source_name) {
    const auto header = read_header(in, source_name);
    const auto cols = locate_columns(header);
    if (!cols.date || !cols.ticker || !cols.close) {
        throw DataError(source_name, 1, "header must name date, ticker and close columns");
    }
    const auto width = std::max({*cols.date, *cols.ticker, *cols.close}) + 1;

    std::map<std::string, std::vector<Row>> by_ticker;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() < width) {
            throw DataError(source_name, line_no,
                            "expected at least " + std::to_string(width) + " fields, got " +
                                std::to_string(fields.size()));
        }
        const auto& ticker = fields[*cols.ticker];
        if (ticker.empty()) {
            throw DataError(source_name, line_no, "empty ticker");
        }
        by_ticker[ticker].push_back({parse_row_date(fields[*cols.date], source_name, line_no),
                                     parse_close(fields[*cols.close], source_name, line_no), line_no});
    }

    std::vector<PriceSeries> out;
    out.reserve(by_ticker.size());
    for (auto& [ticker, rows] : by_ticker) {
        out.push_back(finish_series(ticker, std::move(rows), source_name));
    }
    return out;
}

PriceSeries parse_ticker_csv(std::istream& in, std::string ticker, const std::string& source_name) {
    const auto header = read_header(in, source_name);
    const auto cols = locate_columns(header);
    if (!cols.date || !cols.close) {
        throw DataError(source_name, 1, "header must name date and close columns");
    }
    const auto width = std::max(*cols.date, *cols.close) + 1;

    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() < width) {
            throw DataError(source_name, line_no,
                            "expected at least " + std::to_string(width) + " fields, got " +
                                std::to_string(fields.size()));
        }
        rows.push_back({parse_row_date(fields[*cols.date], source_name, line_no),
                        parse_close(fields[*cols.close], source_name, line_no), line_no});
    }
    return finish_series(std::move(ticker), std::move(rows), source_name);
}

std::vector<PriceSeries> load_prices(const std::filesystem::path& source, CsvLayout layout) {
    namespace fs = std::filesystem;
    if (!fs::exists(source)) {
        throw DataError("no such file or directory: " + source.string());
    }

    if (layout == CsvLayout::Long) {
        std::ifstream in(source);
        if (!in) throw DataError("cannot open " + source.string());
        return parse_long_csv(in, source.string());
    }

    std::vector<fs::path> files;
    if (fs::is_directory(source)) {
        for (const auto& entry : fs::directory_iterator(source)) {
            if (entry.is_regular_file() && lower(entry.path().extension().string()) == ".csv") {
                files.push_back(entry.path());
            }
        }
    } else {
        files.push_back(source);
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.stem().string() < b.stem().string(); });

    std::vector<PriceSeries> out;
    out.reserve(files.size());
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw DataError("cannot open " + file.string());
        out.push_back(parse_ticker_csv(in, file.stem().string(), file.string()));
    }
    return out;
}

std::vector<PriceSeries> load_prices(const std::filesystem::path& source) {
    return load_prices(source, std::filesystem::is_directory(source) ? CsvLayout::PerTicker : CsvLayout::Long);
}

std::vector<PriceSeries> restrict_dates(std::vector<PriceSeries> series, std::optional<Date> from,
                                        std::optional<Date> to) {
    for (auto& s : series) {
        std::erase_if(s.observations, [&](const PriceObservation& obs) {
            return (from && obs.date < *from) || (to && obs.date > *to);
        });
    }
    return series;
}

AlignPolicy parse_align_policy(std::string_view text) {
    if (text == "intersect") return AlignPolicy::intersect();
    constexpr std::string_view prefix = "ffill:";
    if (text.substr(0, prefix.size()) == prefix) {
        const auto digits = text.substr(prefix.size());
        int gap = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), gap);
        if (!digits.empty() && ec == std::errc{} && ptr == digits.data() + digits.size() && gap >= 0) {
            return AlignPolicy::forward_fill(gap);
        }
    }
    throw ConfigError("alignment policy must be 'intersect' or 'ffill:<max_gap>', got '" + std::string(text) + "'");
}

PricePanel align_panel(std::span<const PriceSeries> series, AlignPolicy policy) {
    if (series.size() < 2) {
        throw DataError("fewer than 2 series to align");
    }
    std::set<std::string> seen;
    for (const auto& s : series) {
        if (!seen.insert(s.ticker).second) {
            throw DataError("ticker " + s.ticker + " appears twice");
        }
    }

    std::set<Date> all_dates;
    for (const auto& s : series) {
        for (const auto& obs : s.observations) all_dates.insert(obs.date);
    }
    const std::vector<Date> universe(all_dates.begin(), all_dates.end());
    const auto n = series.size();
    const auto days = universe.size();

    // cell[i][t] = close on universe[t] or NaN when the ticker did not trade.
    std::vector<std::vector<double>> cell(n, std::vector<double>(days, std::nan("")));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t t = 0;
        for (const auto& obs : series[i].observations) {
            while (universe[t] < obs.date) ++t;
            cell[i][t] = obs.close;
        }
    }

    std::vector<bool> keep(days, true);
    const int max_gap = policy.kind == AlignPolicy::Kind::ForwardFill ? policy.max_gap : 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = cell[i];
        std::size_t t = 0;
        while (t < days) {
            if (!std::isnan(row[t])) {
                ++t;
                continue;
            }
            std::size_t end = t;
            while (end < days && std::isnan(row[end])) ++end;
            const bool leading = (t == 0);
            const bool fillable = !leading && static_cast<int>(end - t) <= max_gap;
            for (std::size_t k = t; k < end; ++k) {
                if (fillable) row[k] = row[t - 1];
                else keep[k] = false;
            }
            t = end;
        }
    }

    PricePanel panel;
    for (const auto& s : series) panel.tickers.push_back(s.ticker);
    for (std::size_t t = 0; t < days; ++t) {
        if (keep[t]) panel.calendar.push_back(universe[t]);
    }
    if (panel.calendar.empty()) {
        throw DataError("aligned calendar is empty (no date shared by all tickers)");
    }
    panel.closes.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(panel.calendar.size()));
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::Index col = 0;
        for (std::size_t t = 0; t < days; ++t) {
            if (keep[t]) panel.closes(static_cast<Eigen::Index>(i), col++) = cell[i][t];
        }
    }
    return panel;
}

ReturnPanel log_returns(const PricePanel& panel) {
    const auto days = panel.day_count();
    if (days < 2) {
        throw DataError("need at least 2 trading days to compute returns, got " + std::to_string(days));
    }
    ReturnPanel out;
    out.tickers = panel.tickers;
    out.calendar.assign(panel.calendar.begin() + 1, panel.calendar.end());
    const auto n = panel.closes.rows();
    const auto cols = static_cast<Eigen::Index>(days - 1);
    out.returns.resize(n, cols);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index t = 0; t < cols; ++t) {
            out.returns(i, t) = std::log(panel.closes(i, t + 1)) - std::log(panel.closes(i, t));
        }
    }
    return out;
}

void write_long_csv(const PricePanel& panel, std::ostream& out) {
    out << "date,ticker,close\n";
    for (std::size_t t = 0; t < panel.day_count(); ++t) {
        const auto date = format_date(panel.calendar[t]);
        for (std::size_t i = 0; i < panel.ticker_count(); ++i) {
            out << date << ',' << panel.tickers[i] << ','
                << format_double(panel.closes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t))) << '\n';
        }
    }
}

}  // namespace corrlife
