#include "corrlife/synth.hpp"

#include <cmath>
#include <set>

#include <Eigen/Cholesky>

#include "corrlife/errors.hpp"
#include "corrlife/random.hpp"

namespace corrlife {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;

// n x length matrix of daily log-returns.
Matrix draw_returns(const MarketSpec& spec) {
    const auto n = static_cast<Eigen::Index>(spec.tickers.size());
    const auto days = static_cast<Eigen::Index>(spec.length);
    Matrix out(n, days);
    if (days == 0) return out;

    const Eigen::MatrixXd factor = correlation_factor(spec.target_correlation);
    Rng rng(spec.seed);
    Eigen::VectorXd z(n);
    for (Eigen::Index t = 0; t < days; ++t) {
        for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
        const Eigen::VectorXd shock = factor * z;
        for (Eigen::Index i = 0; i < n; ++i) {
            out(i, t) = spec.daily_volatility[static_cast<std::size_t>(i)] * shock(i);
        }
    }
    return out;
}

SyntheticMarket assemble(const std::vector<std::string>& tickers, Date start, const Matrix& draws) {
    const auto days = draws.cols();
    if (days < 2) {
        throw ConfigError("synthetic market needs at least 2 trading days");
    }
    SyntheticMarket market;
    market.prices.tickers = tickers;
    market.prices.calendar.reserve(static_cast<std::size_t>(days));
    Date date = start;
    for (Eigen::Index t = 0; t < days; ++t) {
        market.prices.calendar.push_back(date);
        date = next_weekday(date);
    }
    market.prices.closes.resize(draws.rows(), days);
    for (Eigen::Index i = 0; i < draws.rows(); ++i) {
        double cumulative = 0.0;
        for (Eigen::Index t = 0; t < days; ++t) {
            cumulative += draws(i, t);
            market.prices.closes(i, t) = kBasePrice * std::exp(cumulative);
        }
    }
    market.returns = log_returns(market.prices);
    return market;
}

}  // namespace

MarketSpec uniform_market(std::vector<std::string> tickers, double rho, double vol, std::size_t length,
                          std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(tickers.size());
    Eigen::MatrixXd corr = Eigen::MatrixXd::Constant(n, n, rho);
    corr.diagonal().setOnes();
    MarketSpec spec;
    spec.daily_volatility.assign(tickers.size(), vol);
    spec.tickers = std::move(tickers);
    spec.target_correlation = std::move(corr);
    spec.length = length;
    spec.seed = seed;
    return spec;
}

void set_pair_correlation(MarketSpec& spec, std::size_t i, std::size_t j, double rho) {
    const auto n = static_cast<std::size_t>(spec.target_correlation.rows());
    if (i >= n || j >= n || i == j) {
        throw ConfigError("pair correlation needs two distinct ticker indices");
    }
    spec.target_correlation(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rho;
    spec.target_correlation(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = rho;
}

void validate(const MarketSpec& spec) {
    const auto n = spec.tickers.size();
    if (n == 0) throw ConfigError("market spec has no tickers");
    if (std::set<std::string>(spec.tickers.begin(), spec.tickers.end()).size() != n) {
        throw ConfigError("market spec has duplicate tickers");
    }
    const auto& c = spec.target_correlation;
    if (static_cast<std::size_t>(c.rows()) != n || static_cast<std::size_t>(c.cols()) != n) {
        throw ConfigError("target correlation must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        if (c(i, i) != 1.0) throw ConfigError("target correlation must have a unit diagonal");
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            if (!(c(i, j) >= -1.0 && c(i, j) <= 1.0)) {
                throw ConfigError("target correlation entries must lie in [-1, 1]");
            }
            if (std::abs(c(i, j) - c(j, i)) > kSymmetryTolerance) {
                throw ConfigError("target correlation must be symmetric");
            }
        }
    }
    if (spec.daily_volatility.size() != n) {
        throw ConfigError("need one daily volatility per ticker");
    }
    for (const double v : spec.daily_volatility) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("daily volatility must be positive");
    }
}

Eigen::MatrixXd correlation_factor(const Eigen::MatrixXd& correlation) {
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(correlation);
    if (ldlt.info() != Eigen::Success) {
        throw ConfigError("target correlation could not be factorised");
    }
    Eigen::VectorXd d = ldlt.vectorD();
    for (Eigen::Index k = 0; k < d.size(); ++k) {
        if (d(k) < -kPsdTolerance) {
            throw ConfigError("target correlation is not positive-semidefinite");
        }
        d(k) = std::sqrt(std::max(d(k), 0.0));
    }
    Eigen::MatrixXd factor = Eigen::MatrixXd(ldlt.matrixL()) * d.asDiagonal();
    return ldlt.transpositionsP().transpose() * factor;
}

SyntheticMarket generate_panel(const MarketSpec& spec) {
    validate(spec);
    return assemble(spec.tickers, spec.start, draw_returns(spec));
}

SyntheticMarket regime_panel(const MarketSpec& a, const MarketSpec& b) {
    validate(a);
    validate(b);
    if (a.tickers != b.tickers) {
        throw ConfigError("regime segments must use the same tickers");
    }
    if (a.daily_volatility != b.daily_volatility) {
        throw ConfigError("regime segments must use the same volatilities");
    }
    const Matrix first = draw_returns(a);
    const Matrix second = draw_returns(b);
    Matrix joined(first.rows(), first.cols() + second.cols());
    joined.leftCols(first.cols()) = first;
    joined.rightCols(second.cols()) = second;
    return assemble(a.tickers, a.length == 0 ? b.start : a.start, joined);
}

}  // namespace corrlife
