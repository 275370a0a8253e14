#pragma once

#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <vector>

#include "subfuse/admm.hpp"
#include "subfuse/core.hpp"

namespace subfuse {

namespace detail {

class UnionFind {
public:
    explicit UnionFind(Index n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), Index{0});
    }
    Index find(Index x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(Index x, Index y) {
        Index px = find(x), py = find(y);
        if (px == py) return;
        // smaller root wins so canonical labeling falls out directly
        if (px < py) parent_[py] = px; else parent_[px] = py;
    }

private:
    std::vector<Index> parent_;
};

} // namespace detail

// Groups are the connected components of the graph with an edge wherever
// eta_ij is exactly zero (the prox returns exact zeros); transitive closure
// overrides any nonzero eta within a component.
inline SubgroupPartition extract_partition(const FusionFit& fit) {
    const Index n = fit.mu.size();
    detail::UnionFind uf(n);
    Index idx = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j, ++idx)
            if (fit.eta[idx] == 0.0) uf.unite(i, j);
    std::vector<int> raw(n);
    for (Index i = 0; i < n; ++i) raw[i] = static_cast<int>(uf.find(i));
    return canonical_partition(raw, fit.mu);
}

struct PathEntry {
    double lambda = 0.0;
    FusionFit fit;
    SubgroupPartition partition;
    double bic = std::numeric_limits<double>::quiet_NaN();
};

struct PathResult {
    std::vector<PathEntry> entries;
    int selected = -1;  // index of BIC-minimizing entry, -1 before selection
    double c_n = 0.0;   // the BIC constant C_n used for selection
};

// Modified BIC: log(RSS/n) + C_n (log n / n)(K + p), C_n = c log(log(n + p)).
inline double bic_constant(Index n, Index p, double c) {
    return c * std::log(std::log(static_cast<double>(n + p)));
}

inline double modified_bic(const FusionFit& fit, const SubgroupPartition& partition,
                           const Dataset& dataset, double c) {
    const Index n = dataset.n();
    const Index p = dataset.p();
    VectorXd resid = dataset.y() - fit.mu;
    if (p > 0) resid -= dataset.X() * fit.beta;
    const double rss = resid.squaredNorm();
    if (!(rss > 0)) throw degenerate_rss("modified_bic: zero residual sum of squares");
    return std::log(rss / static_cast<double>(n)) +
           bic_constant(n, p, c) * std::log(static_cast<double>(n)) / static_cast<double>(n) *
               static_cast<double>(partition.k_hat + p);
}

// Adaptive lambda_max: double from a data-scaled probe until a fit fuses
// everything (K = 1), then log-space the grid on [min_ratio*lmax, lmax].
inline std::vector<double> lambda_grid(const Dataset& dataset, const PenaltySpec& spec_family,
                                       const SolverConfig& config, int num_points = 50,
                                       double min_ratio = 0.01) {
    if (num_points < 2) throw invalid_shape_parameter("lambda_grid: num_points must be >= 2");
    if (!(min_ratio > 0 && min_ratio < 1))
        throw invalid_shape_parameter("lambda_grid: min_ratio must be in (0,1)");
    // scale probe to the spread of mu^0 = y - X beta_ols
    VectorXd mu0 = dataset.y();
    if (dataset.p() > 0) {
        MatrixXd W(dataset.n(), dataset.p() + 1);
        W.col(0).setOnes();
        W.rightCols(dataset.p()) = dataset.X();
        VectorXd coef = W.colPivHouseholderQr().solve(dataset.y());
        mu0 -= dataset.X() * coef.tail(dataset.p());
    }
    const double range = mu0.maxCoeff() - mu0.minCoeff();
    double probe = std::max(0.25 * range, 1e-8);
    double lmax = 0.0;
    for (int attempt = 0; attempt < 40; ++attempt) {
        FusionFit f = fit(dataset, spec_family.with_lambda(probe), config);
        if (extract_partition(f).k_hat == 1) {
            lmax = probe;
            break;
        }
        probe *= 2.0;
    }
    if (lmax == 0.0) throw no_fusion_achievable("lambda_grid: no lambda fused all subjects");
    std::vector<double> grid(num_points);
    const double lo = std::log(min_ratio * lmax);
    const double hi = std::log(lmax);
    for (int k = 0; k < num_points; ++k)
        grid[k] = std::exp(lo + (hi - lo) * static_cast<double>(k) /
                                    static_cast<double>(num_points - 1));
    grid.back() = lmax;  // exact endpoint
    return grid;
}

// Fits in increasing-lambda order with warm starts; each entry carries its
// partition and BIC score.  Non-converged entries are retained and flagged
// through fit.converged.
inline PathResult solution_path(const Dataset& dataset, const PenaltySpec& spec_family,
                                const SolverConfig& config, const std::vector<double>& grid,
                                double bic_c = 5.0) {
    PathResult path;
    path.c_n = bic_constant(dataset.n(), dataset.p(), bic_c);
    std::optional<FusionFit> warm;
    for (double lambda : grid) {
        PathEntry entry;
        entry.lambda = lambda;
        entry.fit = fit(dataset, spec_family.with_lambda(lambda), config, warm);
        entry.partition = extract_partition(entry.fit);
        entry.bic = modified_bic(entry.fit, entry.partition, dataset, bic_c);
        warm = entry.fit;
        path.entries.push_back(std::move(entry));
    }
    return path;
}

// argmin of BIC over converged entries; ties break toward larger lambda.
inline PathResult select_lambda(PathResult path, const Dataset& dataset, double c) {
    path.c_n = bic_constant(dataset.n(), dataset.p(), c);
    int best = -1;
    double best_bic = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < path.entries.size(); ++k) {
        auto& e = path.entries[k];
        e.bic = modified_bic(e.fit, e.partition, dataset, c);
        if (!e.fit.converged) continue;
        if (e.bic <= best_bic) {
            best_bic = e.bic;
            best = static_cast<int>(k);
        }
    }
    if (best < 0) throw no_converged_entry("select_lambda: no converged entry on the path");
    path.selected = best;
    return path;
}

// Plot-ready TSV: lambda, k_hat, bic, converged, mu_1..mu_n.
inline void write_path_tsv(std::ostream& os, const PathResult& path) {
    if (path.entries.empty()) return;
    const Index n = path.entries.front().fit.mu.size();
    os << "lambda\tk_hat\tbic\tconverged";
    for (Index i = 0; i < n; ++i) os << "\tmu_" << (i + 1);
    os << "\n";
    os << std::setprecision(12);
    for (const auto& e : path.entries) {
        os << e.lambda << "\t" << e.partition.k_hat << "\t" << e.bic << "\t"
           << (e.fit.converged ? 1 : 0);
        for (Index i = 0; i < n; ++i) os << "\t" << e.fit.mu[i];
        os << "\n";
    }
}

} // namespace subfuse
