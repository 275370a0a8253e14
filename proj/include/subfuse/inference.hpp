#pragma once

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "subfuse/core.hpp"

namespace subfuse {

inline double normal_quantile(double prob) {
    return boost::math::quantile(boost::math::normal_distribution<double>(), prob);
}

inline double normal_two_sided_pvalue(double z) {
    return 2.0 * boost::math::cdf(boost::math::normal_distribution<double>(), -std::abs(z));
}

// Z: n x K zero/one membership matrix; Z^T Z = diag of group sizes.
inline MatrixXd membership_matrix(const SubgroupPartition& partition, Index n) {
    if (static_cast<Index>(partition.assignment.size()) != n)
        throw dimension_mismatch("membership_matrix: partition length != n");
    MatrixXd Z = MatrixXd::Zero(n, partition.k_hat);
    for (Index i = 0; i < n; ++i) Z(i, partition.assignment[i] - 1) = 1.0;
    return Z;
}

// Joint least squares of y on [Z X]: the oracle estimator when the partition
// is the true grouping.
inline std::pair<VectorXd, VectorXd> oracle_fit(const Dataset& dataset,
                                                const SubgroupPartition& partition) {
    const Index n = dataset.n();
    const Index p = dataset.p();
    const Index k = partition.k_hat;
    if (k + p >= n) throw singular_design("oracle_fit: K + p must be < n");
    MatrixXd W(n, k + p);
    W.leftCols(k) = membership_matrix(partition, n);
    if (p > 0) W.rightCols(p) = dataset.X();
    Eigen::ColPivHouseholderQR<MatrixXd> qr(W);
    if (qr.rank() < k + p) throw singular_design("oracle_fit: [Z X] is rank deficient");
    VectorXd coef = qr.solve(dataset.y());
    return {coef.head(k), coef.tail(p)};
}

// sigma^2 = (n - K - p)^{-1} sum (y_i - mu_i - x_i^T beta)^2
inline double sigma2_hat(const Dataset& dataset, const VectorXd& mu, const VectorXd& beta,
                         int k_hat) {
    const Index n = dataset.n();
    const Index p = dataset.p();
    const Index dof = n - k_hat - p;
    if (dof < 1) throw insufficient_degrees_of_freedom("sigma2_hat: n - K - p must be >= 1");
    VectorXd resid = dataset.y() - mu;
    if (p > 0) resid -= dataset.X() * beta;
    return resid.squaredNorm() / static_cast<double>(dof);
}

// cov_alpha = sigma^2 {Z^T Z - Z^T X (X^T X)^{-1} X^T Z}^{-1}
// cov_beta  = sigma^2 {X^T X - X^T Z (Z^T Z)^{-1} Z^T X}^{-1}
inline std::pair<MatrixXd, MatrixXd> covariance_blocks(const Dataset& dataset,
                                                       const SubgroupPartition& partition,
                                                       double sigma2) {
    const Index n = dataset.n();
    const Index p = dataset.p();
    const MatrixXd Z = membership_matrix(partition, n);
    const MatrixXd ztz = Z.transpose() * Z;
    if (p == 0) {
        MatrixXd cov_alpha = sigma2 * ztz.inverse();
        return {cov_alpha, MatrixXd(0, 0)};
    }
    const MatrixXd& X = dataset.X();
    const MatrixXd xtx = X.transpose() * X;
    const MatrixXd ztx = Z.transpose() * X;
    const MatrixXd schur_a = ztz - ztx * xtx.llt().solve(ztx.transpose());
    const MatrixXd schur_b = xtx - ztx.transpose() * ztz.llt().solve(ztx);
    Eigen::LLT<MatrixXd> llt_a(schur_a);
    Eigen::LLT<MatrixXd> llt_b(schur_b);
    if (llt_a.info() != Eigen::Success || llt_b.info() != Eigen::Success)
        throw singular_schur_complement("covariance_blocks: Schur complement not invertible");
    const Index k = partition.k_hat;
    return {sigma2 * llt_a.solve(MatrixXd::Identity(k, k)),
            sigma2 * llt_b.solve(MatrixXd::Identity(p, p))};
}

// a^T est +/- z_{alpha/2} (a^T cov a)^{1/2}
inline std::pair<double, double> confidence_interval(const VectorXd& contrast,
                                                     const VectorXd& estimate,
                                                     const MatrixXd& cov, double level) {
    if (!(level > 0 && level < 1)) throw invalid_shape_parameter("confidence_interval: level in (0,1)");
    if (contrast.size() != estimate.size() || cov.rows() != contrast.size() ||
        cov.cols() != contrast.size())
        throw dimension_mismatch("confidence_interval: shape mismatch");
    const double var = contrast.dot(cov * contrast);
    if (var < 0 || std::isnan(var))
        throw nonpositive_variance("confidence_interval: negative contrast variance");
    const double center = contrast.dot(estimate);
    const double half = normal_quantile(1.0 - (1.0 - level) / 2.0) * std::sqrt(var);
    return {center - half, center + half};
}

struct TestResult {
    std::string name;
    double z = 0.0;
    double p_value = 1.0;
};

struct InferenceReport {
    VectorXd alpha_hat;
    VectorXd beta_hat;
    double sigma2_hat = 0.0;
    MatrixXd cov_alpha;
    MatrixXd cov_beta;
    Index dof = 0;
    std::vector<TestResult> tests;
};

inline InferenceReport report_from_estimates(const Dataset& dataset,
                                             const SubgroupPartition& partition,
                                             const VectorXd& alpha, const VectorXd& beta,
                                             const VectorXd& mu_for_sigma) {
    InferenceReport rep;
    rep.alpha_hat = alpha;
    rep.beta_hat = beta;
    rep.sigma2_hat = sigma2_hat(dataset, mu_for_sigma, beta, partition.k_hat);
    std::tie(rep.cov_alpha, rep.cov_beta) = covariance_blocks(dataset, partition, rep.sigma2_hat);
    rep.dof = dataset.n() - partition.k_hat - dataset.p();
    return rep;
}

// Plug-in report using the fit's subject-level mu and beta; alpha comes from
// the partition's per-group means.
inline InferenceReport report_from_fit(const Dataset& dataset, const FusionFit& fit,
                                       const SubgroupPartition& partition) {
    return report_from_estimates(dataset, partition, partition.alpha, fit.beta, fit.mu);
}

inline InferenceReport report_from_oracle(const Dataset& dataset,
                                          const SubgroupPartition& partition) {
    auto [alpha, beta] = oracle_fit(dataset, partition);
    const VectorXd mu = membership_matrix(partition, dataset.n()) * alpha;
    return report_from_estimates(dataset, partition, alpha, beta, mu);
}

// Two-sided normal test of H0: alpha_k = alpha_k'.  Groups are 1-based.
inline TestResult test_group_difference(const InferenceReport& report, int k, int k_prime) {
    const Index K = report.alpha_hat.size();
    if (k == k_prime || k < 1 || k_prime < 1 || k > K || k_prime > K)
        throw index_out_of_range("test_group_difference: invalid group indices");
    VectorXd a = VectorXd::Zero(K);
    a[k - 1] = 1.0;
    a[k_prime - 1] = -1.0;
    const double diff = a.dot(report.alpha_hat);
    const double var = a.dot(report.cov_alpha * a);
    TestResult t;
    t.name = "g" + std::to_string(k) + "=g" + std::to_string(k_prime);
    if (var <= 0) {
        if (diff == 0.0) return t;  // z = 0, p = 1
        throw nonpositive_variance("test_group_difference: zero variance with nonzero contrast");
    }
    t.z = diff / std::sqrt(var);
    t.p_value = normal_two_sided_pvalue(t.z);
    return t;
}

// H0: the largest group's intercept equals the average intercept of the
// remaining groups.  sigma^2 is re-estimated with mu collapsed to the two
// hypothesis values and n - 2 - p degrees of freedom.
inline TestResult test_heterogeneity(const Dataset& dataset, const SubgroupPartition& partition,
                                     const VectorXd& alpha, const VectorXd& beta) {
    const int K = partition.k_hat;
    if (K < 2) throw single_group("test_heterogeneity: undefined at K = 1");
    const Index n = dataset.n();
    const Index p = dataset.p();
    if (n - 2 - p < 1)
        throw insufficient_degrees_of_freedom("test_heterogeneity: n - 2 - p must be >= 1");

    // largest group; ties broken by smallest member index = lowest label
    std::vector<Index> sizes(K, 0);
    for (int lab : partition.assignment) ++sizes[lab - 1];
    int largest = 0;
    for (int k = 1; k < K; ++k)
        if (sizes[k] > sizes[largest]) largest = k;

    double others_mean = 0.0;
    for (int k = 0; k < K; ++k)
        if (k != largest) others_mean += alpha[k];
    others_mean /= static_cast<double>(K - 1);

    VectorXd mu_adj(n);
    for (Index i = 0; i < n; ++i)
        mu_adj[i] = (partition.assignment[i] - 1 == largest) ? alpha[largest] : others_mean;
    VectorXd resid = dataset.y() - mu_adj;
    if (p > 0) resid -= dataset.X() * beta;
    const double sigma2 = resid.squaredNorm() / static_cast<double>(n - 2 - p);

    auto [cov_alpha, cov_beta] = covariance_blocks(dataset, partition, sigma2);
    VectorXd a = VectorXd::Constant(K, -1.0 / static_cast<double>(K - 1));
    a[largest] = 1.0;
    const double diff = a.dot(alpha);
    const double var = a.dot(cov_alpha * a);
    TestResult t;
    t.name = "heterogeneity";
    if (var <= 0) {
        if (diff == 0.0) return t;
        throw nonpositive_variance("test_heterogeneity: zero variance with nonzero contrast");
    }
    t.z = diff / std::sqrt(var);
    t.p_value = normal_two_sided_pvalue(t.z);
    return t;
}

inline TestResult test_heterogeneity(const Dataset& dataset, const SubgroupPartition& partition) {
    auto [alpha, beta] = oracle_fit(dataset, partition);
    return test_heterogeneity(dataset, partition, alpha, beta);
}

} // namespace subfuse
