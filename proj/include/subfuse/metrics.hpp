#pragma once

#include <cmath>
#include <vector>

#include "subfuse/core.hpp"

namespace subfuse {

// Fraction of the n(n-1)/2 pairs on which the two labelings agree
// (same/same or different/different).
inline double rand_index(const std::vector<int>& labels_true,
                         const std::vector<int>& labels_pred) {
    const size_t n = labels_true.size();
    if (labels_pred.size() != n) throw length_mismatch("rand_index: label length mismatch");
    if (n < 2) throw too_few_observations("rand_index: need n >= 2");
    long long agree = 0, total = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j, ++total) {
            const bool same_true = labels_true[i] == labels_true[j];
            const bool same_pred = labels_pred[i] == labels_pred[j];
            if (same_true == same_pred) ++agree;
        }
    }
    return static_cast<double>(agree) / static_cast<double>(total);
}

// 1-D Davies-Bouldin index on adjusted responses: centroids are group means,
// sigma_k is the mean absolute distance to centroid, d is the absolute
// centroid difference.
inline double davies_bouldin(const VectorXd& values, const SubgroupPartition& partition) {
    const Index n = values.size();
    if (static_cast<Index>(partition.assignment.size()) != n)
        throw length_mismatch("davies_bouldin: values/partition length mismatch");
    const int K = partition.k_hat;
    if (K < 2) throw single_group("davies_bouldin: needs K >= 2");
    std::vector<double> centroid(K, 0.0), spread(K, 0.0);
    std::vector<Index> count(K, 0);
    for (Index i = 0; i < n; ++i) {
        centroid[partition.assignment[i] - 1] += values[i];
        ++count[partition.assignment[i] - 1];
    }
    for (int k = 0; k < K; ++k) centroid[k] /= static_cast<double>(count[k]);
    for (Index i = 0; i < n; ++i) {
        const int k = partition.assignment[i] - 1;
        spread[k] += std::abs(values[i] - centroid[k]);
    }
    for (int k = 0; k < K; ++k) spread[k] /= static_cast<double>(count[k]);
    double db = 0.0;
    for (int k = 0; k < K; ++k) {
        double worst = 0.0;
        for (int kp = 0; kp < K; ++kp) {
            if (kp == k) continue;
            const double d = std::abs(centroid[k] - centroid[kp]);
            if (d == 0.0) throw coincident_centroids("davies_bouldin: coincident centroids");
            worst = std::max(worst, (spread[k] + spread[kp]) / d);
        }
        db += worst;
    }
    return db / static_cast<double>(K);
}

// ||mu_hat - mu_true|| / sqrt(n)
inline double rmse_mu(const VectorXd& mu_hat, const VectorXd& mu_true) {
    if (mu_hat.size() != mu_true.size()) throw length_mismatch("rmse_mu: length mismatch");
    return (mu_hat - mu_true).norm() / std::sqrt(static_cast<double>(mu_hat.size()));
}

// ||beta_hat - beta_true|| / sqrt(p)
inline double rmse_beta(const VectorXd& beta_hat, const VectorXd& beta_true) {
    if (beta_hat.size() != beta_true.size()) throw length_mismatch("rmse_beta: length mismatch");
    if (beta_hat.size() == 0) throw empty_beta("rmse_beta: p must be >= 1");
    return (beta_hat - beta_true).norm() / std::sqrt(static_cast<double>(beta_hat.size()));
}

} // namespace subfuse
