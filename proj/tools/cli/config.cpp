#include "config.hpp"

#include <algorithm>
#include <charconv>

#include "corrlife/errors.hpp"
#include "corrlife/format.hpp"

namespace corrlife::cli {

namespace {

int parse_int(std::string_view text, std::string_view what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

double parse_real(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

void apply_pair_overrides(MarketSpec& spec, const std::vector<std::string>& overrides) {
    for (const auto& item : overrides) {
        const auto parts = split_fields(item, ':');
        if (parts.size() != 3) {
            throw ConfigError("pair correlation must look like A:B:rho, got '" + item + "'");
        }
        const auto a = std::find(spec.tickers.begin(), spec.tickers.end(), parts[0]);
        const auto b = std::find(spec.tickers.begin(), spec.tickers.end(), parts[1]);
        if (a == spec.tickers.end() || b == spec.tickers.end()) {
            throw ConfigError("pair correlation names an unknown ticker: '" + item + "'");
        }
        set_pair_correlation(spec, static_cast<std::size_t>(a - spec.tickers.begin()),
                             static_cast<std::size_t>(b - spec.tickers.begin()), parse_real(parts[2], "pair rho"));
    }
}

}  // namespace

std::vector<int> parse_window_list(std::string_view text) {
    std::vector<int> widths;
    for (const auto& item : split_fields(text, ',')) {
        if (item.empty()) continue;
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            widths.push_back(parse_int(item, "window width"));
            continue;
        }
        const auto rest = std::string_view(item).substr(dots + 2);
        const auto slash = rest.find('/');
        const int lo = parse_int(std::string_view(item).substr(0, dots), "window range");
        const int hi = parse_int(rest.substr(0, slash), "window range");
        const int stride = slash == std::string_view::npos ? 1 : parse_int(rest.substr(slash + 1), "window stride");
        if (stride < 1 || hi < lo) {
            throw ConfigError("bad window range '" + item + "'");
        }
        for (int w = lo; w <= hi; w += stride) widths.push_back(w);
    }
    std::sort(widths.begin(), widths.end());
    widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
    return widths;
}

void validate_windows(const RunConfig& config) {
    if (config.window_widths.empty()) {
        throw ConfigError("no window widths given (use --window or --windows)");
    }
    for (const int w : config.window_widths) {
        if (w < 2) throw ConfigError("window widths must be at least 2, got " + std::to_string(w));
    }
    if (config.step < 1) {
        throw ConfigError("step must be at least 1, got " + std::to_string(config.step));
    }
}

void validate_threshold(const RunConfig& config) {
    if (!(config.strong_threshold > 0.0 && config.strong_threshold <= 1.0)) {
        throw ConfigError("strong threshold must lie in (0, 1], got " + format_double(config.strong_threshold));
    }
}

MarketSpec market_spec(const RunConfig& config) {
    if (config.tickers.empty()) throw ConfigError("synth needs --tickers");
    if (config.length < 2) throw ConfigError("synth needs --length of at least 2");
    auto spec = uniform_market(config.tickers, config.rho.value_or(0.0), config.volatility, config.length,
                               config.seed);
    spec.start = config.start;
    apply_pair_overrides(spec, config.pair_rho);
    validate(spec);
    return spec;
}

std::optional<MarketSpec> regime_spec(const RunConfig& config) {
    if (config.regime_length == 0) return std::nullopt;
    auto spec = uniform_market(config.tickers, config.regime_rho.value_or(config.rho.value_or(0.0)),
                               config.volatility, config.regime_length, config.seed + 1);
    apply_pair_overrides(spec, config.regime_pair_rho);
    validate(spec);
    return spec;
}

AsyncTradeSpec async_trade_spec(const RunConfig& config) {
    AsyncTradeSpec spec;
    spec.true_correlation = config.rho.value_or(0.7);
    spec.trade_intensity = config.intensity;
    spec.sampling_intervals = config.intervals;
    spec.horizon = config.horizon;
    spec.seed = config.seed;
    spec.day_length = config.day_length;
    spec.daily_volatility = config.volatility;
    validate(spec);
    return spec;
}

}  // namespace corrlife::cli
