#include "corrlife/mst.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <tuple>

#include <json.hpp>

#include "corrlife/errors.hpp"
#include "corrlife/format.hpp"

namespace corrlife {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> rank_;
};

// Sorted i*n+j keys for overlap counting.
std::vector<std::size_t> edge_keys(const SpanningTree& tree) {
    const auto n = tree.tickers.size();
    std::vector<std::size_t> keys;
    keys.reserve(tree.edges.size());
    for (const auto& e : tree.edges) keys.push_back(std::min(e.i, e.j) * n + std::max(e.i, e.j));
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::size_t overlap(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

}  // namespace

double SpanningTree::total_weight() const {
    double total = 0.0;
    for (const auto& e : edges) total += e.weight;
    return total;
}

SpanningTree build_mst(const CorrelationMatrix& matrix, Date window_end) {
    const auto n = matrix.size();
    if (n < 2) {
        throw DataError("spanning tree needs at least 2 tickers");
    }
    const auto& names = matrix.tickers();

    struct Candidate {
        double weight;
        const std::string* lo;
        const std::string* hi;
        std::size_t i, j;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto rho = matrix.at(i, j);
            if (!rho) {
                throw DataError("undefined correlation between " + names[i] + " and " + names[j]);
            }
            const bool ordered = names[i] <= names[j];
            candidates.push_back({distance(*rho), ordered ? &names[i] : &names[j], ordered ? &names[j] : &names[i], i, j});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.weight, *a.lo, *a.hi) < std::tie(b.weight, *b.lo, *b.hi);
    });

    SpanningTree tree{window_end, names, {}};
    tree.edges.reserve(n - 1);
    DisjointSets sets(n);
    for (const auto& c : candidates) {
        if (sets.unite(c.i, c.j)) {
            tree.edges.push_back({c.i, c.j, c.weight});
            if (tree.edges.size() == n - 1) break;
        }
    }
    return tree;
}

bool is_spanning_tree(const SpanningTree& tree) {
    const auto n = tree.tickers.size();
    if (n == 0 || tree.edges.size() != n - 1) return false;
    DisjointSets sets(n);
    for (const auto& e : tree.edges) {
        if (e.i >= n || e.j >= n || e.i == e.j) return false;
        if (!sets.unite(e.i, e.j)) return false;  // cycle
    }
    // n-1 edges with no cycle on n vertices is connected.
    return true;
}

RollingTrees rolling_msts(const ReturnPanel& panel, int window_width, int step) {
    const auto count = window_count(panel.length(), window_width, step);
    const auto width = static_cast<std::size_t>(window_width);
    RollingTrees out{window_width, step, {}, {}};
    out.trees.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto first = k * static_cast<std::size_t>(step);
        const auto end_date = panel.calendar[first + width - 1];
        const auto matrix = window_matrix(panel, first, width);
        if (!matrix.undefined_pairs().empty()) {
            out.skipped.push_back(end_date);
            continue;
        }
        out.trees.push_back(build_mst(matrix, end_date));
    }
    return out;
}

SurvivalCurve survival_curve(std::span<const SpanningTree> trees, int window_width, int step) {
    if (trees.size() < 2) {
        throw DataError("survival curve needs at least 2 trees, got " + std::to_string(trees.size()));
    }
    for (const auto& t : trees) {
        if (t.tickers != trees.front().tickers) {
            throw DataError("survival curve needs trees over the same tickers");
        }
    }
    std::vector<std::vector<std::size_t>> keys;
    keys.reserve(trees.size());
    for (const auto& t : trees) keys.push_back(edge_keys(t));
    const auto edge_count = static_cast<double>(trees.front().tickers.size() - 1);

    SurvivalCurve curve{window_width, {}, std::nullopt};
    const auto positions = trees.size();
    curve.points.reserve(positions);
    for (std::size_t lag = 0; lag < positions; ++lag) {
        double sum = 0.0;
        for (std::size_t t0 = 0; t0 + lag < positions; ++t0) {
            sum += static_cast<double>(overlap(keys[t0], keys[t0 + lag])) / edge_count;
        }
        const double ratio = sum / static_cast<double>(positions - lag);
        const int lag_days = static_cast<int>(lag) * step;
        curve.points.push_back({lag_days, ratio});
        if (!curve.half_life && ratio <= 0.5) curve.half_life = lag_days;
    }
    return curve;
}

SurvivalCurve survival_curve(const RollingTrees& rolling) {
    return survival_curve(rolling.trees, rolling.window_width, rolling.step);
}

void write_edges_csv(std::span<const SpanningTree> trees, std::ostream& out) {
    out << "window_end,ticker_i,ticker_j,distance\n";
    for (const auto& tree : trees) {
        const auto date = format_date(tree.window_end);
        for (const auto& e : tree.edges) {
            out << date << ',' << tree.tickers[e.i] << ',' << tree.tickers[e.j] << ',' << format_double(e.weight)
                << '\n';
        }
    }
}

void write_edge_list(const SpanningTree& tree, std::ostream& out) {
    for (const auto& e : tree.edges) {
        out << tree.tickers[e.i] << ' ' << tree.tickers[e.j] << ' ' << format_double(e.weight) << '\n';
    }
}

void write_survival_csv(std::span<const SurvivalCurve> curves, std::ostream& out) {
    out << "window_width,lag,survival_ratio\n";
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            out << c.window_width << ',' << p.lag << ',' << format_double(p.ratio) << '\n';
        }
    }
}

void write_survival_json(std::span<const SurvivalCurve> curves, std::ostream& out) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            rows.push_back({{"window_width", c.window_width}, {"lag", p.lag}, {"survival_ratio", p.ratio}});
        }
    }
    out << rows.dump(2) << '\n';
}

}  // namespace corrlife
