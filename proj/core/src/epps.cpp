#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "corrlife/correlation.hpp"
#include "corrlife/errors.hpp"
#include "corrlife/format.hpp"
#include "corrlife/random.hpp"
#include "corrlife/synth.hpp"

namespace corrlife {

namespace {

// Latent log-price recorded at each of one ticker's trades.
struct TradeTape {
    std::vector<double> times;
    std::vector<double> values;
};

std::vector<double> poisson_times(Rng& rng, double rate, double horizon) {
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(rate * horizon * 1.1) + 16);
    double t = rng.exponential(rate);
    while (t <= horizon) {
        times.push_back(t);
        t += rng.exponential(rate);
    }
    return times;
}

// Previous-tick samples at 0, dt, 2 dt, ... ; the tape starts at 0 with value 0.
std::vector<double> sample_previous_tick(const TradeTape& tape, double dt, std::size_t count) {
    std::vector<double> out(count + 1);
    std::size_t k = 0;
    double last = 0.0;
    for (std::size_t m = 0; m <= count; ++m) {
        const double when = static_cast<double>(m) * dt;
        while (k < tape.times.size() && tape.times[k] <= when) last = tape.values[k++];
        out[m] = last;
    }
    return out;
}

}  // namespace

void validate(const AsyncTradeSpec& spec) {
    if (!(spec.true_correlation > -1.0 && spec.true_correlation < 1.0)) {
        throw ConfigError("true correlation must lie in (-1, 1)");
    }
    if (!(spec.trade_intensity > 0.0) || !std::isfinite(spec.trade_intensity)) {
        throw ConfigError("trade intensity must be positive");
    }
    if (!(spec.day_length > 0.0)) throw ConfigError("day length must be positive");
    if (!(spec.daily_volatility > 0.0)) throw ConfigError("daily volatility must be positive");
    if (spec.sampling_intervals.empty()) throw ConfigError("no sampling intervals given");
    for (const double dt : spec.sampling_intervals) {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("sampling intervals must be positive");
    }
    const double longest = *std::max_element(spec.sampling_intervals.begin(), spec.sampling_intervals.end());
    if (!(spec.horizon > longest)) {
        throw ConfigError("horizon " + format_double(spec.horizon) + " must exceed the longest sampling interval " +
                          format_double(longest));
    }
}

std::vector<EppsPoint> epps_experiment(const AsyncTradeSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    const double rate = spec.trade_intensity / spec.day_length;  // per minute
    const double sigma = spec.daily_volatility / std::sqrt(spec.day_length);  // per sqrt(minute)
    const double rho = spec.true_correlation;
    const double rho_c = std::sqrt(1.0 - rho * rho);

    TradeTape tapes[2];
    tapes[0].times = poisson_times(rng, rate, spec.horizon);
    tapes[1].times = poisson_times(rng, rate, spec.horizon);
    tapes[0].values.reserve(tapes[0].times.size());
    tapes[1].values.reserve(tapes[1].times.size());

    // Walk the merged trade times, advancing both latent walks together.
    double latent[2] = {0.0, 0.0};
    double now = 0.0;
    std::size_t next[2] = {0, 0};
    while (next[0] < tapes[0].times.size() || next[1] < tapes[1].times.size()) {
        const double t0 = next[0] < tapes[0].times.size() ? tapes[0].times[next[0]] : std::numeric_limits<double>::infinity();
        const double t1 = next[1] < tapes[1].times.size() ? tapes[1].times[next[1]] : std::numeric_limits<double>::infinity();
        const int who = t0 <= t1 ? 0 : 1;
        const double when = who == 0 ? t0 : t1;
        const double scale = sigma * std::sqrt(when - now);
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        latent[0] += scale * z1;
        latent[1] += scale * (rho * z1 + rho_c * z2);
        now = when;
        tapes[who].values.push_back(latent[who]);
        ++next[who];
    }

    std::vector<EppsPoint> points;
    points.reserve(spec.sampling_intervals.size());
    for (const double dt : spec.sampling_intervals) {
        const auto count = static_cast<std::size_t>(std::floor(spec.horizon / dt));
        EppsPoint point{dt, std::nullopt, count, std::numeric_limits<double>::quiet_NaN()};
        if (count >= kMinEppsSamples) {
            const auto a = sample_previous_tick(tapes[0], dt, count);
            const auto b = sample_previous_tick(tapes[1], dt, count);
            std::vector<double> ra(count);
            std::vector<double> rb(count);
            for (std::size_t m = 0; m < count; ++m) {
                ra[m] = a[m + 1] - a[m];
                rb[m] = b[m + 1] - b[m];
            }
            point.measured = pearson(ra, rb);
            if (point.measured) {
                const double r = *point.measured;
                point.standard_error = (1.0 - r * r) / std::sqrt(static_cast<double>(count - 1));
            }
        }
        points.push_back(point);
    }
    return points;
}

void write_epps_csv(std::span<const EppsPoint> points, double true_correlation, std::ostream& out) {
    out << "interval,measured_rho,true_rho,samples,stderr\n";
    for (const auto& p : points) {
        out << format_double(p.interval) << ',' << format_optional(p.measured) << ','
            << format_double(true_correlation) << ',' << p.samples << ','
            << (std::isnan(p.standard_error) ? std::string("NA") : format_double(p.standard_error)) << '\n';
    }
}

void write_epps_json(std::span<const EppsPoint> points, double true_correlation, std::ostream& out) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : points) {
        rows.push_back({{"interval", p.interval},
                        {"measured_rho", p.measured ? nlohmann::json(*p.measured) : nlohmann::json(nullptr)},
                        {"true_rho", true_correlation},
                        {"samples", p.samples},
                        {"stderr", std::isnan(p.standard_error) ? nlohmann::json(nullptr)
                                                                : nlohmann::json(p.standard_error)}});
    }
    out << rows.dump(2) << '\n';
}

}  // namespace corrlife
