#include "commands.hpp"

#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "corrlife/correlation.hpp"
#include "corrlife/errors.hpp"
#include "corrlife/format.hpp"
#include "corrlife/lifetime.hpp"
#include "corrlife/mst.hpp"
#include "corrlife/synth.hpp"

namespace corrlife::cli {

namespace fs = std::filesystem;

namespace {

std::string extension(OutputFormat format) {
    return format == OutputFormat::Json ? ".json" : ".csv";
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    body(out);
    if (!out) throw DataError("failed while writing " + path.string());
}

ReturnPanel load_returns(const RunConfig& config) {
    if (config.data.empty()) throw ConfigError("no input data (use --data)");
    auto series = restrict_dates(load_prices(config.data), config.from, config.to);
    return log_returns(align_panel(series, config.align));
}

}  // namespace

void cmd_corr(const RunConfig& config, std::ostream& log) {
    validate_threshold(config);
    const auto returns = load_returns(config);
    const auto matrix = full_period_matrix(returns);
    const auto ext = extension(config.format);
    const bool json = config.format == OutputFormat::Json;

    write_file(config.out / ("correlation_matrix" + ext), [&](std::ostream& os) {
        json ? write_matrix_json(matrix, os) : write_matrix_csv(matrix, os);
    });
    write_file(config.out / ("pairs" + ext), [&](std::ostream& os) {
        json ? write_pair_list_json(matrix, config.strong_threshold, os)
             : write_pair_list_csv(matrix, config.strong_threshold, os);
    });
    const auto counts = census(matrix, config.strong_threshold);
    const auto n = matrix.size();
    if (counts.total() != n * (n - 1) / 2) {
        throw InvariantError("census does not cover n(n-1)/2 pairs");
    }
    write_file(config.out / "census.txt", [&](std::ostream& os) { os << format_census(counts) << '\n'; });

    log << format_census(counts) << '\n';
    for (const auto& [i, j] : matrix.undefined_pairs()) {
        log << "undefined: " << pair_label(matrix.tickers()[i], matrix.tickers()[j]) << " (zero variance)\n";
    }
}

void cmd_lifetime(const RunConfig& config, std::ostream& log) {
    validate_windows(config);
    validate_threshold(config);
    const auto returns = load_returns(config);
    LifetimeOptions options;
    options.strong_threshold = config.strong_threshold;
    options.include_censored = !config.exclude_censored;

    std::vector<LifetimeStats> all_pairs;
    std::vector<PortfolioLifetime> curve;
    for (const int width : config.window_widths) {
        auto pairs = all_pair_lifetimes(returns, width, config.step, options);
        curve.push_back(summarize(config.portfolio, width, pairs));
        const auto& p = curve.back();
        log << "window_width=" << width << " mean=" << format_double(p.mean) << " stddev=" << format_double(p.stddev)
            << " pairs=" << p.pair_count << '\n';
        std::move(pairs.begin(), pairs.end(), std::back_inserter(all_pairs));
    }

    const auto ext = extension(config.format);
    const bool json = config.format == OutputFormat::Json;
    write_file(config.out / ("runs" + ext),
               [&](std::ostream& os) { json ? write_runs_json(all_pairs, os) : write_runs_csv(all_pairs, os); });
    write_file(config.out / ("pair_mltc" + ext), [&](std::ostream& os) {
        json ? write_pair_mltc_json(all_pairs, os) : write_pair_mltc_csv(all_pairs, os);
    });
    write_file(config.out / ("portfolio" + ext),
               [&](std::ostream& os) { json ? write_portfolio_json(curve, os) : write_portfolio_csv(curve, os); });
}

void cmd_mst(const RunConfig& config, std::ostream& log) {
    validate_windows(config);
    const auto returns = load_returns(config);

    const auto full = full_period_matrix(returns);
    if (full.undefined_pairs().empty()) {
        const auto tree = build_mst(full, returns.calendar.back());
        const SpanningTree one[] = {tree};
        write_file(config.out / "mst_full.csv", [&](std::ostream& os) { write_edges_csv(one, os); });
        write_file(config.out / "mst_full.edgelist", [&](std::ostream& os) { write_edge_list(tree, os); });
    } else {
        log << "full-period tree skipped: undefined correlations\n";
    }

    std::vector<SurvivalCurve> curves;
    std::vector<std::string> half_life_rows;
    for (const int width : config.window_widths) {
        const auto rolling = rolling_msts(returns, width, config.step);
        write_file(config.out / ("trees_w" + std::to_string(width) + ".csv"),
                   [&](std::ostream& os) { write_edges_csv(rolling.trees, os); });
        for (const auto& date : rolling.skipped) {
            log << "window_width=" << width << " skipped window ending " << format_date(date)
                << " (undefined correlation)\n";
        }
        std::optional<int> half_life;
        if (rolling.trees.size() >= 2) {
            curves.push_back(survival_curve(rolling));
            half_life = curves.back().half_life;
        }
        const std::string hl = half_life ? std::to_string(*half_life) : "NA";
        half_life_rows.push_back(std::to_string(width) + "," + hl + "," + std::to_string(rolling.trees.size()) + "," +
                                 std::to_string(rolling.skipped.size()));
        log << "window_width=" << width << " trees=" << rolling.trees.size() << " half_life=" << hl << '\n';
    }

    const bool json = config.format == OutputFormat::Json;
    write_file(config.out / ("survival" + extension(config.format)),
               [&](std::ostream& os) { json ? write_survival_json(curves, os) : write_survival_csv(curves, os); });
    write_file(config.out / "half_life.csv", [&](std::ostream& os) {
        os << "window_width,half_life,trees,skipped\n";
        for (const auto& row : half_life_rows) os << row << '\n';
    });
}

void cmd_epps(const RunConfig& config, std::ostream& log) {
    const auto spec = async_trade_spec(config);
    const auto points = epps_experiment(spec);
    const bool json = config.format == OutputFormat::Json;
    write_file(config.out / ("epps" + extension(config.format)), [&](std::ostream& os) {
        json ? write_epps_json(points, spec.true_correlation, os)
             : write_epps_csv(points, spec.true_correlation, os);
    });
    for (const auto& p : points) {
        log << "interval=" << format_double(p.interval) << " measured=" << format_optional(p.measured)
            << " true=" << format_double(spec.true_correlation) << '\n';
    }
}

void cmd_synth(const RunConfig& config, std::ostream& log) {
    const auto first = market_spec(config);
    const auto second = regime_spec(config);
    const auto market = second ? regime_panel(first, *second) : generate_panel(first);
    write_file(config.out / "prices.csv", [&](std::ostream& os) { write_long_csv(market.prices, os); });
    log << "wrote " << (config.out / "prices.csv").string() << " (" << market.prices.ticker_count()
        << " tickers x " << market.prices.day_count() << " days)\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string from;
    std::string to;
    std::string windows;
    std::vector<int> window;
    std::string align = "intersect";
    std::string format = "csv";
    std::string out_dir = ".";
    std::string start;
    std::vector<double> intervals{1, 5, 15, 30, 65, 130, 390};
    double horizon = 5000 * 390.0;
    double rho = 0.0;
    double regime_rho = 0.0;

    CLI::App app{"Rolling correlation, lifetime-of-correlation, spanning-tree and Epps-effect analysis", "corrlife"};
    app.set_config("--config", "", "Read options from a key = value file; flags override it");
    app.require_subcommand(1, 1);
    app.footer("Options may be given before or after the command name.");

    const std::string shared = "Shared options";
    app.add_option("--data", config.data, "Price CSV in long layout (date,ticker,close), or a directory of per-ticker date,close files")->group(shared);
    app.add_option("--from", from, "First date to use (YYYY-MM-DD)")->group(shared);
    app.add_option("--to", to, "Last date to use (YYYY-MM-DD)")->group(shared);
    app.add_option("--window", window, "Window width in trading days (repeatable)")->group(shared);
    app.add_option("--windows", windows, "Window widths: list and ranges, e.g. 10,20,40 or 2..5 or 50..400/50")->join(',')->group(shared);
    app.add_option("--step", config.step, "Trading days between window positions")->capture_default_str()->group(shared);
    app.add_option("--strong-threshold", config.strong_threshold, "Lower bound of the strong level")->capture_default_str()->group(shared);
    app.add_option("--align", align, "Calendar alignment: intersect or ffill:<max_gap>")->capture_default_str()->group(shared);
    app.add_option("--out", out_dir, "Output directory")->capture_default_str()->group(shared);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str()->group(shared);
    app.add_option("--seed", config.seed, "Random seed for synth and epps")->capture_default_str()->group(shared);

    const std::string lifetime = "lifetime";
    app.add_flag("--exclude-censored", config.exclude_censored, "Leave runs touching either end of the series out of the mean")->group(lifetime);
    app.add_option("--name", config.portfolio, "Portfolio name recorded in JSON output")->capture_default_str()->group(lifetime);

    const std::string synth = "synth / epps";
    app.add_option("--tickers", config.tickers, "Ticker symbols (comma separated)")->delimiter(',')->group(synth);
    app.add_option("--length", config.length, "Trading days to generate")->group(synth);
    auto* rho_opt = app.add_option("--rho", rho, "synth: common off-diagonal correlation (default 0); epps: true correlation (default 0.7)")->group(synth);
    app.add_option("--pair-rho", config.pair_rho, "Pair override A:B:rho (comma separated or repeated)")->delimiter(',')->group(synth);
    app.add_option("--vol", config.volatility, "Daily volatility of log-returns")->capture_default_str()->group(synth);
    app.add_option("--start", start, "First generated date (YYYY-MM-DD)")->group(synth);
    app.add_option("--regime-length", config.regime_length, "Trading days of a second regime appended after --length")->group(synth);
    auto* regime_rho_opt = app.add_option("--regime-rho", regime_rho, "Common correlation in the second regime")->group(synth);
    app.add_option("--regime-pair-rho", config.regime_pair_rho, "Pair overrides in the second regime")->delimiter(',')->group(synth);
    app.add_option("--intensity", config.intensity, "epps: mean trades per day per ticker")->capture_default_str()->group(synth);
    app.add_option("--intervals", intervals, "epps: sampling intervals in minutes")->delimiter(',')->capture_default_str()->group(synth);
    app.add_option("--horizon", horizon, "epps: simulated time in minutes")->capture_default_str()->group(synth);
    app.add_option("--day-length", config.day_length, "epps: minutes per trading day")->capture_default_str()->group(synth);

    auto* corr = app.add_subcommand("corr", "Full-period correlation matrix, pair list and level census");
    auto* life = app.add_subcommand("lifetime", "Lifetime-of-correlation runs, per-pair means and portfolio curves");
    auto* mst = app.add_subcommand("mst", "Spanning trees per window, survival curve and tree half-life");
    auto* epps = app.add_subcommand("epps", "Measured correlation against sampling interval on asynchronous trades");
    auto* gen = app.add_subcommand("synth", "Generate a synthetic market as long-format price CSV");
    for (auto* sub : {corr, life, mst, epps, gen}) sub->fallthrough();

    // CLI11 expects the arguments in reverse order.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!from.empty()) config.from = parse_date(from);
        if (!to.empty()) config.to = parse_date(to);
        if (!start.empty()) config.start = parse_date(start);
        config.window_widths = parse_window_list(windows);
        config.window_widths.insert(config.window_widths.end(), window.begin(), window.end());
        std::sort(config.window_widths.begin(), config.window_widths.end());
        config.window_widths.erase(std::unique(config.window_widths.begin(), config.window_widths.end()),
                                   config.window_widths.end());
        config.align = parse_align_policy(align);
        config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        config.out = out_dir;
        config.intervals = intervals;
        config.horizon = horizon;
        if (rho_opt->count() > 0) config.rho = rho;
        if (regime_rho_opt->count() > 0) config.regime_rho = regime_rho;

        if (corr->parsed()) cmd_corr(config, out);
        else if (life->parsed()) cmd_lifetime(config, out);
        else if (mst->parsed()) cmd_mst(config, out);
        else if (epps->parsed()) cmd_epps(config, out);
        else if (gen->parsed()) cmd_synth(config, out);
        return kExitOk;
    } catch (const std::invalid_argument& e) {  // date parsing
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace corrlife::cli
