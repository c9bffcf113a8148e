/**
 * @file mst.hpp
 * @brief Minimum spanning trees over correlation distance, and tree half-life.
 *
 * Trees are built with Kruskal's algorithm on the complete graph weighted by
 * distance(rho). Equal weights are ordered by the lexicographically smaller
 * ticker pair, so every input yields one tree. The survival ratio at lag L
 * compares the edge set of each tree with the tree L positions later (edges
 * are unordered ticker pairs; weights are ignored), averaged over every
 * start position that has a partner.
 */
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corrlife/correlation.hpp"
#include "corrlife/date.hpp"
#include "corrlife/ingest.hpp"

namespace corrlife {

/// Edge between ticker indices i < j.
struct TreeEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    double weight = 0.0;
};

struct SpanningTree {
    Date window_end;
    std::vector<std::string> tickers;
    std::vector<TreeEdge> edges;  // in the order Kruskal accepted them

    double total_weight() const;
};

/// Throws DataError if any off-diagonal entry is undefined, or if n < 2.
SpanningTree build_mst(const CorrelationMatrix& matrix, Date window_end = {});

/// n-1 edges, no cycle, every vertex reached.
bool is_spanning_tree(const SpanningTree& tree);

struct RollingTrees {
    int window_width = 0;
    int step = 1;
    std::vector<SpanningTree> trees;
    std::vector<Date> skipped;  ///< windows with an undefined coefficient
};

RollingTrees rolling_msts(const ReturnPanel& panel, int window_width, int step = 1);

struct SurvivalPoint {
    int lag = 0;         ///< trading days (positions x step)
    double ratio = 0.0;  ///< mean fraction of edges still present
};

struct SurvivalCurve {
    int window_width = 0;
    std::vector<SurvivalPoint> points;
    /// First lag whose mean ratio is <= 1/2, in trading days.
    std::optional<int> half_life;
};

/// Throws DataError for fewer than 2 trees or trees over different tickers.
SurvivalCurve survival_curve(std::span<const SpanningTree> trees, int window_width = 0, int step = 1);
SurvivalCurve survival_curve(const RollingTrees& rolling);

/// `window_end,ticker_i,ticker_j,distance`, one row per edge of every tree.
void write_edges_csv(std::span<const SpanningTree> trees, std::ostream& out);

/// Whitespace-separated `ticker_i ticker_j distance`, one edge per line.
void write_edge_list(const SpanningTree& tree, std::ostream& out);

/// `window_width,lag,survival_ratio`
void write_survival_csv(std::span<const SurvivalCurve> curves, std::ostream& out);
void write_survival_json(std::span<const SurvivalCurve> curves, std::ostream& out);

}  // namespace corrlife
