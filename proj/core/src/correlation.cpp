#include "corrlife/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "corrlife/errors.hpp"
#include "corrlife/format.hpp"

namespace corrlife {

namespace {

bool is_constant(std::span<const double> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi;
}

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
    const auto m = x.size();
    if (m < 2) {
        throw std::invalid_argument("pearson: need at least 2 observations");
    }
    // Exact test first: a constant series can still show round-off variance.
    if (is_constant(x) || is_constant(y)) {
        return std::nullopt;
    }

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        mean_x += x[k];
        mean_y += y[k];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);

    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double dx = x[k] - mean_x;
        const double dy = y[k] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        return std::nullopt;
    }
    const double rho = sxy / (std::sqrt(sxx) * std::sqrt(syy));
    if (!std::isfinite(rho) || std::abs(rho) > 1.0 + kClampTolerance) {
        throw InvariantError("pearson: coefficient " + format_double(rho) + " outside [-1, 1]");
    }
    return std::clamp(rho, -1.0, 1.0);
}

std::string_view to_string(CorrelationLevel level) {
    switch (level) {
        case CorrelationLevel::Strong: return "strong";
        case CorrelationLevel::Weak: return "weak";
        case CorrelationLevel::Negative: return "negative";
        case CorrelationLevel::Undefined: return "undefined";
    }
    return "undefined";
}

CorrelationLevel classify(std::optional<double> rho, double strong_threshold) {
    if (!rho) return CorrelationLevel::Undefined;
    if (*rho >= strong_threshold) return CorrelationLevel::Strong;
    if (*rho >= 0.0) return CorrelationLevel::Weak;
    return CorrelationLevel::Negative;
}

double distance(double rho) {
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw std::domain_error("distance: coefficient " + format_double(rho) + " outside [-1, 1]");
    }
    return std::sqrt(2.0 * (1.0 - rho));
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> tickers, Matrix rho)
    : tickers_(std::move(tickers)), rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || static_cast<std::size_t>(rho_.rows()) != tickers_.size()) {
        throw InvariantError("correlation matrix shape does not match ticker count");
    }
}

std::optional<double> CorrelationMatrix::at(std::size_t i, std::size_t j) const {
    const double v = rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (std::isnan(v)) return std::nullopt;
    return v;
}

std::vector<std::pair<std::size_t, std::size_t>> CorrelationMatrix::undefined_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            if (!defined(i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

CorrelationMatrix window_matrix(const ReturnPanel& panel, std::size_t first, std::size_t width) {
    const auto n = panel.ticker_count();
    if (first + width > panel.length()) {
        throw std::out_of_range("window_matrix: window extends past the panel");
    }
    Matrix rho = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = panel.row(i).subspan(first, width);
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto r = pearson(xi, panel.row(j).subspan(first, width));
            const double v = r ? *r : std::numeric_limits<double>::quiet_NaN();
            rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            rho(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }
    return CorrelationMatrix(panel.tickers, std::move(rho));
}

CorrelationMatrix full_period_matrix(const ReturnPanel& panel) {
    if (panel.ticker_count() < 2) {
        throw DataError("correlation matrix needs at least 2 tickers");
    }
    if (panel.length() < 2) {
        throw DataError("correlation matrix needs at least 2 returns per ticker");
    }
    return window_matrix(panel, 0, panel.length());
}

std::size_t window_count(std::size_t length, int window_width, int step) {
    check_window(length, window_width, step);
    return (length - static_cast<std::size_t>(window_width)) / static_cast<std::size_t>(step) + 1;
}

void check_window(std::size_t length, int window_width, int step) {
    if (window_width < 2) {
        throw ConfigError("window width must be at least 2, got " + std::to_string(window_width));
    }
    if (step < 1) {
        throw ConfigError("step must be at least 1, got " + std::to_string(step));
    }
    if (static_cast<std::size_t>(window_width) > length) {
        throw ConfigError("window width " + std::to_string(window_width) + " exceeds the " +
                          std::to_string(length) + " available returns");
    }
}

RollingCorrelationSeries rolling_correlation(const ReturnPanel& panel, std::size_t i, std::size_t j,
                                             int window_width, int step) {
    if (i >= panel.ticker_count() || j >= panel.ticker_count()) {
        throw ConfigError("ticker index out of range");
    }
    const auto count = window_count(panel.length(), window_width, step);
    const auto width = static_cast<std::size_t>(window_width);

    RollingCorrelationSeries series{panel.tickers[i], panel.tickers[j], window_width, step, {}};
    series.points.reserve(count);
    const auto xi = panel.row(i);
    const auto xj = panel.row(j);
    for (std::size_t k = 0; k < count; ++k) {
        const auto first = k * static_cast<std::size_t>(step);
        series.points.push_back(
            {panel.calendar[first + width - 1], pearson(xi.subspan(first, width), xj.subspan(first, width))});
    }
    return series;
}

RollingCorrelationSeries rolling_correlation(const ReturnPanel& panel, std::string_view ticker_i,
                                             std::string_view ticker_j, int window_width, int step) {
    const auto i = panel.index_of(ticker_i);
    const auto j = panel.index_of(ticker_j);
    if (!i) throw ConfigError("unknown ticker " + std::string(ticker_i));
    if (!j) throw ConfigError("unknown ticker " + std::string(ticker_j));
    return rolling_correlation(panel, *i, *j, window_width, step);
}

LevelCensus census(const CorrelationMatrix& matrix, double strong_threshold) {
    LevelCensus c;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            switch (classify(matrix.at(i, j), strong_threshold)) {
                case CorrelationLevel::Strong: ++c.strong; break;
                case CorrelationLevel::Weak: ++c.weak; break;
                case CorrelationLevel::Negative: ++c.negative; break;
                case CorrelationLevel::Undefined: ++c.undefined; break;
            }
        }
    }
    return c;
}

std::string format_census(const LevelCensus& c) {
    return "strong=" + std::to_string(c.strong) + " weak=" + std::to_string(c.weak) +
           " negative=" + std::to_string(c.negative) + " undefined=" + std::to_string(c.undefined);
}

void write_matrix_csv(const CorrelationMatrix& matrix, std::ostream& out) {
    out << "ticker";
    for (const auto& t : matrix.tickers()) out << ',' << t;
    out << '\n';
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << matrix.tickers()[i];
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            out << ',' << format_optional(matrix.at(i, j));
        }
        out << '\n';
    }
}

void write_matrix_json(const CorrelationMatrix& matrix, std::ostream& out) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < matrix.size(); ++j) row.push_back(optional_json(matrix.at(i, j)));
        rows.push_back(std::move(row));
    }
    out << nlohmann::json{{"tickers", matrix.tickers()}, {"rho", std::move(rows)}}.dump(2) << '\n';
}

void write_pair_list_csv(const CorrelationMatrix& matrix, double strong_threshold, std::ostream& out) {
    out << "ticker_i,ticker_j,rho,level\n";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            const auto rho = matrix.at(i, j);
            out << matrix.tickers()[i] << ',' << matrix.tickers()[j] << ',' << format_optional(rho) << ','
                << to_string(classify(rho, strong_threshold)) << '\n';
        }
    }
}

void write_pair_list_json(const CorrelationMatrix& matrix, double strong_threshold, std::ostream& out) {
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            const auto rho = matrix.at(i, j);
            pairs.push_back({{"ticker_i", matrix.tickers()[i]},
                             {"ticker_j", matrix.tickers()[j]},
                             {"rho", optional_json(rho)},
                             {"level", to_string(classify(rho, strong_threshold))}});
        }
    }
    out << pairs.dump(2) << '\n';
}

}  // namespace corrlife
