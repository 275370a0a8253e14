#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subfuse/errors.hpp"

namespace subfuse {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Pair indexing. All n(n-1)/2 unordered pairs (i, j), i < j, are stored
// row-major: (0,1), (0,2), ..., (0,n-1), (1,2), ...  Indices are 0-based.
// ---------------------------------------------------------------------------

inline Index pair_count(Index n) { return n * (n - 1) / 2; }

inline Index pair_index(Index i, Index j, Index n) {
    if (i < 0 || j >= n) throw index_out_of_range("pair_index: indices out of [0, n)");
    if (i >= j) throw not_strictly_ordered("pair_index: requires i < j");
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::pair<Index, Index> pair_from_index(Index idx, Index n) {
    if (idx < 0 || idx >= pair_count(n)) throw index_out_of_range("pair_from_index: index out of range");
    Index i = 0;
    Index row = n - 1;
    while (idx >= row) {
        idx -= row;
        --row;
        ++i;
    }
    return {i, i + 1 + idx};
}

// ---------------------------------------------------------------------------
// Dataset: response y, covariates X (possibly 0 columns), optional truth.
// ---------------------------------------------------------------------------

struct GroundTruth {
    VectorXd mu;              // true subject-level intercepts, length n
    VectorXd beta;            // true coefficients, length p
    std::vector<int> labels;  // true group labels, length n
};

class Dataset {
public:
    Dataset(VectorXd y, MatrixXd X,
            std::optional<GroundTruth> truth = std::nullopt,
            std::vector<std::string> names = {})
        : y_(std::move(y)), X_(std::move(X)), truth_(std::move(truth)), names_(std::move(names)) {
        const Index n = y_.size();
        if (n < 2) throw too_few_observations("Dataset: need n >= 2");
        if (X_.size() > 0 && X_.rows() != n)
            throw dimension_mismatch("Dataset: X rows must equal length of y");
        if (X_.rows() == 0) X_.resize(n, 0);
        if (p() >= n) throw dimension_mismatch("Dataset: requires p < n");
        if (p() > 0) {
            Eigen::ColPivHouseholderQR<MatrixXd> qr(X_);
            if (qr.rank() < p()) throw rank_deficient_x("Dataset: X is rank deficient");
        }
        if (truth_) {
            if (truth_->mu.size() != n) throw dimension_mismatch("Dataset: truth mu length != n");
            if (truth_->beta.size() != p()) throw dimension_mismatch("Dataset: truth beta length != p");
            if (!truth_->labels.empty() && static_cast<Index>(truth_->labels.size()) != n)
                throw dimension_mismatch("Dataset: truth labels length != n");
        }
    }

    Index n() const { return y_.size(); }
    Index p() const { return X_.cols(); }
    const VectorXd& y() const { return y_; }
    const MatrixXd& X() const { return X_; }
    const std::optional<GroundTruth>& truth() const { return truth_; }
    const std::vector<std::string>& names() const { return names_; }

private:
    VectorXd y_;
    MatrixXd X_;
    std::optional<GroundTruth> truth_;
    std::vector<std::string> names_;
};

inline Dataset make_dataset(VectorXd y, MatrixXd X,
                            std::optional<GroundTruth> truth = std::nullopt) {
    return Dataset(std::move(y), std::move(X), std::move(truth));
}

// ---------------------------------------------------------------------------
// PenaltySpec
// ---------------------------------------------------------------------------

enum class PenaltyFamily { L1, WeightedL1, MCP, SCAD, TruncatedL1 };

inline const char* family_name(PenaltyFamily f) {
    switch (f) {
        case PenaltyFamily::L1: return "l1";
        case PenaltyFamily::WeightedL1: return "weighted-l1";
        case PenaltyFamily::MCP: return "mcp";
        case PenaltyFamily::SCAD: return "scad";
        case PenaltyFamily::TruncatedL1: return "truncated-l1";
    }
    return "?";
}

struct PenaltySpec {
    PenaltyFamily family = PenaltyFamily::MCP;
    double lambda = 0.0;
    double gamma = 3.0;  // MCP/SCAD concavity
    double tau = 1.0;    // TruncatedL1 threshold
    double phi = 0.0;    // WeightedL1 kernel bandwidth

    static PenaltySpec l1(double lambda) { return {PenaltyFamily::L1, lambda, 0, 1, 0}; }
    static PenaltySpec weighted_l1(double lambda, double phi) {
        return {PenaltyFamily::WeightedL1, lambda, 0, 1, phi};
    }
    static PenaltySpec mcp(double lambda, double gamma = 3.0) {
        return {PenaltyFamily::MCP, lambda, gamma, 1, 0};
    }
    static PenaltySpec scad(double lambda, double gamma = 3.7) {
        return {PenaltyFamily::SCAD, lambda, gamma, 1, 0};
    }
    static PenaltySpec truncated_l1(double lambda, double tau) {
        return {PenaltyFamily::TruncatedL1, lambda, 0, tau, 0};
    }

    PenaltySpec with_lambda(double l) const {
        PenaltySpec s = *this;
        s.lambda = l;
        return s;
    }

    // Shape-parameter validity; gamma bounds depend on the ADMM penalty
    // parameter vartheta, so the check is joint.
    void validate(double vartheta) const {
        if (!(lambda > 0)) throw invalid_shape_parameter("penalty: lambda must be > 0 for a fit");
        if (!(vartheta > 0)) throw invalid_shape_parameter("penalty: vartheta must be > 0");
        switch (family) {
            case PenaltyFamily::MCP:
                if (!(gamma > 1.0 / vartheta))
                    throw invalid_shape_parameter("MCP requires gamma > 1/vartheta");
                break;
            case PenaltyFamily::SCAD:
                if (!(gamma > 1.0 / vartheta + 1.0))
                    throw invalid_shape_parameter("SCAD requires gamma > 1/vartheta + 1");
                break;
            case PenaltyFamily::TruncatedL1:
                if (!(tau > 0)) throw invalid_shape_parameter("TruncatedL1 requires tau > 0");
                break;
            case PenaltyFamily::WeightedL1:
                if (phi < 0) throw invalid_shape_parameter("WeightedL1 requires phi >= 0");
                break;
            case PenaltyFamily::L1:
                break;
        }
    }
};

// ---------------------------------------------------------------------------
// SolverConfig
// ---------------------------------------------------------------------------

struct SolverConfig {
    double vartheta = 1.0;
    // 0 means scale-aware default: 1e-4 * sqrt(n(n-1)/2).
    double tol_primal = 0.0;
    int max_iter = 1000;
    bool record_dual = true;

    double resolved_tol(Index n) const {
        if (tol_primal > 0) return tol_primal;
        return 1e-4 * std::sqrt(static_cast<double>(pair_count(n)));
    }

    void validate() const {
        if (!(vartheta > 0)) throw invalid_shape_parameter("SolverConfig: vartheta must be > 0");
        if (tol_primal < 0) throw invalid_shape_parameter("SolverConfig: tol_primal must be >= 0");
        if (max_iter < 1) throw invalid_shape_parameter("SolverConfig: max_iter must be >= 1");
    }
};

// ---------------------------------------------------------------------------
// FusionFit: converged (or iteration-capped) ADMM state.
// ---------------------------------------------------------------------------

struct FusionFit {
    VectorXd mu;       // length n
    VectorXd beta;     // length p
    VectorXd eta;      // length n(n-1)/2, canonical pair order
    VectorXd upsilon;  // same shape as eta
    int iters = 0;
    double primal_residual_norm = std::numeric_limits<double>::infinity();
    double dual_residual_norm = std::numeric_limits<double>::infinity();
    bool converged = false;
    double lambda = 0.0;
    std::vector<double> primal_history;  // per-iteration primal residual norms
};

// ---------------------------------------------------------------------------
// SubgroupPartition: canonical labeling 1..K, groups ordered by smallest
// member index.
// ---------------------------------------------------------------------------

struct SubgroupPartition {
    std::vector<int> assignment;  // length n, labels 1..k_hat
    int k_hat = 0;
    VectorXd alpha;               // length k_hat, per-group intercept

    std::vector<std::vector<Index>> groups() const {
        std::vector<std::vector<Index>> g(k_hat);
        for (Index i = 0; i < static_cast<Index>(assignment.size()); ++i)
            g[assignment[i] - 1].push_back(i);
        return g;
    }
};

// Relabels an arbitrary labeling into the canonical form and computes
// per-group means of mu.
inline SubgroupPartition canonical_partition(const std::vector<int>& raw_labels,
                                             const VectorXd& mu) {
    const Index n = static_cast<Index>(raw_labels.size());
    if (mu.size() != n) throw dimension_mismatch("canonical_partition: label/mu length mismatch");
    SubgroupPartition part;
    part.assignment.assign(n, 0);
    std::vector<int> seen;  // raw label -> canonical in first-appearance order
    for (Index i = 0; i < n; ++i) {
        int raw = raw_labels[i];
        int canon = 0;
        for (size_t k = 0; k < seen.size(); ++k)
            if (seen[k] == raw) { canon = static_cast<int>(k) + 1; break; }
        if (canon == 0) {
            seen.push_back(raw);
            canon = static_cast<int>(seen.size());
        }
        part.assignment[i] = canon;
    }
    part.k_hat = static_cast<int>(seen.size());
    part.alpha = VectorXd::Zero(part.k_hat);
    VectorXd counts = VectorXd::Zero(part.k_hat);
    for (Index i = 0; i < n; ++i) {
        part.alpha[part.assignment[i] - 1] += mu[i];
        counts[part.assignment[i] - 1] += 1.0;
    }
    part.alpha.array() /= counts.array();
    return part;
}

} // namespace subfuse
