#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "subfuse/core.hpp"
#include "subfuse/inference.hpp"
#include "subfuse/metrics.hpp"
#include "subfuse/pathsel.hpp"
#include "subfuse/rng.hpp"

namespace subfuse {

enum class Example {
    One,            // mu_i in {-alpha, +alpha} with equal probability
    Two,            // mu_i in {-2, 0, 2} with equal probability
    Three,          // homogeneous, mu = 2
    FourCase1,      // same DGP as Two (balanced groups)
    FourCase2D1,    // {-2, 0, 2} with probabilities 0.2, 0.3, 0.5
    FourCase2D2     // {-2, 0, 2} with probabilities 0.1, 0.3, 0.6
};

inline const char* example_name(Example e) {
    switch (e) {
        case Example::One: return "1";
        case Example::Two: return "2";
        case Example::Three: return "3";
        case Example::FourCase1: return "4-case1";
        case Example::FourCase2D1: return "4-case2-design1";
        case Example::FourCase2D2: return "4-case2-design2";
    }
    return "?";
}

struct MethodSpec {
    std::string name;
    PenaltySpec penalty;  // lambda ignored; grid-selected
    double bic_c = 5.0;
};

struct StudySpec {
    Example example = Example::One;
    Index n = 100;
    Index p = 5;
    double alpha = 1.0;   // Example 1 only
    double rho = 0.3;
    double sigma = 0.5;
    int reps = 100;
    std::uint64_t seed = 0;
    std::vector<MethodSpec> methods;
    SolverConfig config;
    int grid_points = 50;
    double grid_min_ratio = 0.01;
    // Non-empty switches to the fixed-lambda workflow (Example 3 style):
    // fit at each lambda and run the heterogeneity test, no BIC selection.
    std::vector<double> fixed_lambdas;
    bool include_oracle = false;   // oracle estimator at the true partition
    bool collect_inference = false;  // group-difference test / alpha bias-ASE-ESE

    void validate() const {
        if (!(rho >= 0 && rho < 1)) throw invalid_shape_parameter("StudySpec: rho in [0,1)");
        if (!(sigma > 0)) throw invalid_shape_parameter("StudySpec: sigma > 0");
        if (reps < 1) throw invalid_shape_parameter("StudySpec: reps >= 1");
        if (n < 2) throw too_few_observations("StudySpec: n >= 2");
    }
};

// Exchangeable-correlation normal covariates:
// x_ij = sqrt(rho) w_i + sqrt(1 - rho) z_ij.
inline MatrixXd gen_covariates(Index n, Index p, double rho, Rng& rng) {
    MatrixXd X(n, p);
    const double sr = std::sqrt(rho);
    const double sz = std::sqrt(1.0 - rho);
    for (Index i = 0; i < n; ++i) {
        const double w = rng.normal();
        for (Index j = 0; j < p; ++j) X(i, j) = sr * w + sz * rng.normal();
    }
    return X;
}

// Dataset for one replication.  Stream (seed, rep_index) is drawn in a fixed
// order: group labels / mu, then beta, then X, then noise.
inline Dataset gen_example(const StudySpec& spec, int rep_index) {
    spec.validate();
    Rng rng(spec.seed, static_cast<std::uint64_t>(rep_index));
    const Index n = spec.n;
    const Index p = spec.p;

    GroundTruth truth;
    truth.mu.resize(n);
    truth.labels.resize(n);
    switch (spec.example) {
        case Example::One:
            for (Index i = 0; i < n; ++i) {
                const bool plus = rng.uniform() < 0.5;
                truth.mu[i] = plus ? spec.alpha : -spec.alpha;
                truth.labels[i] = plus ? 2 : 1;
            }
            break;
        case Example::Two:
        case Example::FourCase1:
        case Example::FourCase2D1:
        case Example::FourCase2D2: {
            std::vector<double> probs = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
            if (spec.example == Example::FourCase2D1) probs = {0.2, 0.3, 0.5};
            if (spec.example == Example::FourCase2D2) probs = {0.1, 0.3, 0.6};
            const double values[3] = {-2.0, 0.0, 2.0};
            for (Index i = 0; i < n; ++i) {
                const int k = rng.discrete(probs);
                truth.mu[i] = values[k];
                truth.labels[i] = k + 1;
            }
            break;
        }
        case Example::Three:
            truth.mu.setConstant(2.0);
            std::fill(truth.labels.begin(), truth.labels.end(), 1);
            break;
    }

    truth.beta.resize(p);
    for (Index j = 0; j < p; ++j) truth.beta[j] = rng.uniform(0.5, 1.0);

    MatrixXd X = p > 0 ? gen_covariates(n, p, spec.rho, rng) : MatrixXd(n, 0);

    VectorXd y = truth.mu;
    if (p > 0) y += X * truth.beta;
    for (Index i = 0; i < n; ++i) y[i] += spec.sigma * rng.normal();

    return Dataset(std::move(y), std::move(X), std::move(truth));
}

// y - X beta_ols (pooled OLS with a common intercept; the intercept stays in
// the adjusted response).
inline VectorXd adjusted_responses(const Dataset& dataset) {
    if (dataset.p() == 0) return dataset.y();
    MatrixXd W(dataset.n(), dataset.p() + 1);
    W.col(0).setOnes();
    W.rightCols(dataset.p()) = dataset.X();
    VectorXd coef = W.colPivHouseholderQr().solve(dataset.y());
    return dataset.y() - dataset.X() * coef.tail(dataset.p());
}

namespace detail {

inline double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// sample standard deviation across replications (the paper's "s.e.")
inline double sd_of(const std::vector<double>& v) {
    if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = mean_of(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace detail

struct MethodSummary {
    std::string name;
    int reps_completed = 0;
    int failures = 0;
    double mean_k = std::numeric_limits<double>::quiet_NaN();
    double median_k = std::numeric_limits<double>::quiet_NaN();
    double se_k = std::numeric_limits<double>::quiet_NaN();
    double mean_rmse_mu = std::numeric_limits<double>::quiet_NaN();
    double se_rmse_mu = std::numeric_limits<double>::quiet_NaN();
    double mean_rmse_beta = std::numeric_limits<double>::quiet_NaN();
    double se_rmse_beta = std::numeric_limits<double>::quiet_NaN();
    double mean_rand = std::numeric_limits<double>::quiet_NaN();
    double se_rand = std::numeric_limits<double>::quiet_NaN();
    // two-group inference (Example 1; only replications with K = 2 count)
    int k2_count = 0;
    double bias_alpha1 = std::numeric_limits<double>::quiet_NaN();
    double bias_alpha2 = std::numeric_limits<double>::quiet_NaN();
    double ase_alpha1 = std::numeric_limits<double>::quiet_NaN();
    double ase_alpha2 = std::numeric_limits<double>::quiet_NaN();
    double ese_alpha1 = std::numeric_limits<double>::quiet_NaN();
    double ese_alpha2 = std::numeric_limits<double>::quiet_NaN();
    double mean_pvalue = std::numeric_limits<double>::quiet_NaN();
    // fixed-lambda workflow: median heterogeneity p per lambda
    std::vector<double> median_het_p;
};

struct OracleSummary {
    double bias_alpha1 = 0, bias_alpha2 = 0;
    double ase_alpha1 = 0, ase_alpha2 = 0;
    double ese_alpha1 = 0, ese_alpha2 = 0;
    double mean_rmse_mu = 0, mean_rmse_beta = 0;
    int reps = 0;
};

struct StudySummary {
    StudySpec spec;
    std::vector<MethodSummary> methods;
    std::optional<OracleSummary> oracle;
};

// The true two-group alphas in ascending order; estimated groups are aligned
// to them by the sign (order) of alpha_hat.
inline SubgroupPartition true_partition(const Dataset& dataset) {
    return canonical_partition(dataset.truth()->labels, dataset.truth()->mu);
}

inline StudySummary run_study(const StudySpec& spec) {
    spec.validate();
    StudySummary summary;
    summary.spec = spec;

    struct MethodAccum {
        std::vector<double> ks, rmus, rbetas, rands, pvals;
        std::vector<double> a1s, a2s, se1s, se2s;
        std::vector<std::vector<double>> het_p;  // [lambda][rep]
        int failures = 0;
        int completed = 0;
    };
    std::vector<MethodAccum> acc(spec.methods.size());
    for (auto& a : acc) a.het_p.resize(spec.fixed_lambdas.size());

    std::vector<double> or_a1, or_a2, or_se1, or_se2, or_rmu, or_rbeta;

    for (int r = 0; r < spec.reps; ++r) {
        const Dataset data = gen_example(spec, r);

        if (spec.include_oracle) {
            const SubgroupPartition tp = true_partition(data);
            InferenceReport rep = report_from_oracle(data, tp);
            // ascending alpha order matches the true (-alpha, +alpha) labels
            std::vector<int> order(rep.alpha_hat.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return rep.alpha_hat[a] < rep.alpha_hat[b]; });
            if (rep.alpha_hat.size() >= 2) {
                or_a1.push_back(rep.alpha_hat[order[0]]);
                or_a2.push_back(rep.alpha_hat[order[1]]);
                or_se1.push_back(std::sqrt(rep.cov_alpha(order[0], order[0])));
                or_se2.push_back(std::sqrt(rep.cov_alpha(order[1], order[1])));
            }
            const VectorXd mu_or = membership_matrix(tp, data.n()) * rep.alpha_hat;
            or_rmu.push_back(rmse_mu(mu_or, data.truth()->mu));
            if (data.p() > 0) or_rbeta.push_back(rmse_beta(rep.beta_hat, data.truth()->beta));
        }

        for (size_t mth = 0; mth < spec.methods.size(); ++mth) {
            const MethodSpec& method = spec.methods[mth];
            try {
                if (!spec.fixed_lambdas.empty()) {
                    for (size_t li = 0; li < spec.fixed_lambdas.size(); ++li) {
                        const FusionFit f = fit(
                            data, method.penalty.with_lambda(spec.fixed_lambdas[li]),
                            spec.config);
                        const SubgroupPartition part = extract_partition(f);
                        // K = 1 detects no heterogeneity: score it as p = 1
                        double pv = 1.0;
                        if (part.k_hat >= 2)
                            pv = test_heterogeneity(data, part, part.alpha, f.beta).p_value;
                        acc[mth].het_p[li].push_back(pv);
                    }
                    ++acc[mth].completed;
                    continue;
                }

                const std::vector<double> grid =
                    lambda_grid(data, method.penalty, spec.config, spec.grid_points,
                                spec.grid_min_ratio);
                PathResult path = solution_path(data, method.penalty, spec.config, grid,
                                                method.bic_c);
                path = select_lambda(std::move(path), data, method.bic_c);
                const PathEntry& sel = path.entries[path.selected];

                acc[mth].ks.push_back(static_cast<double>(sel.partition.k_hat));
                acc[mth].rmus.push_back(rmse_mu(sel.fit.mu, data.truth()->mu));
                if (data.p() > 0)
                    acc[mth].rbetas.push_back(rmse_beta(sel.fit.beta, data.truth()->beta));
                if (!data.truth()->labels.empty())
                    acc[mth].rands.push_back(
                        rand_index(data.truth()->labels, sel.partition.assignment));

                if (spec.collect_inference && sel.partition.k_hat >= 2) {
                    InferenceReport rep = report_from_fit(data, sel.fit, sel.partition);
                    // groups aligned by sign of alpha_hat: the extreme
                    // intercepts play the roles of alpha_1 and alpha_2
                    int lo = 0, hi = 0;
                    for (Index k = 1; k < rep.alpha_hat.size(); ++k) {
                        if (rep.alpha_hat[k] < rep.alpha_hat[lo]) lo = static_cast<int>(k);
                        if (rep.alpha_hat[k] > rep.alpha_hat[hi]) hi = static_cast<int>(k);
                    }
                    acc[mth].pvals.push_back(
                        test_group_difference(rep, lo + 1, hi + 1).p_value);
                    if (sel.partition.k_hat == 2) {
                        acc[mth].a1s.push_back(rep.alpha_hat[lo]);
                        acc[mth].a2s.push_back(rep.alpha_hat[hi]);
                        acc[mth].se1s.push_back(std::sqrt(rep.cov_alpha(lo, lo)));
                        acc[mth].se2s.push_back(std::sqrt(rep.cov_alpha(hi, hi)));
                    }
                }
                ++acc[mth].completed;
            } catch (const error&) {
                ++acc[mth].failures;
            }
        }
    }

    for (size_t mth = 0; mth < spec.methods.size(); ++mth) {
        MethodSummary ms;
        ms.name = spec.methods[mth].name;
        const MethodAccum& a = acc[mth];
        ms.reps_completed = a.completed;
        ms.failures = a.failures;
        ms.mean_k = detail::mean_of(a.ks);
        ms.median_k = detail::median_of(a.ks);
        ms.se_k = detail::sd_of(a.ks);
        ms.mean_rmse_mu = detail::mean_of(a.rmus);
        ms.se_rmse_mu = detail::sd_of(a.rmus);
        ms.mean_rmse_beta = detail::mean_of(a.rbetas);
        ms.se_rmse_beta = detail::sd_of(a.rbetas);
        ms.mean_rand = detail::mean_of(a.rands);
        ms.se_rand = detail::sd_of(a.rands);
        ms.mean_pvalue = detail::mean_of(a.pvals);
        ms.k2_count = static_cast<int>(a.a1s.size());
        if (!a.a1s.empty()) {
            const double true_lo = spec.example == Example::One ? -spec.alpha : 0.0;
            const double true_hi = spec.example == Example::One ? spec.alpha : 0.0;
            ms.bias_alpha1 = detail::mean_of(a.a1s) - true_lo;
            ms.bias_alpha2 = detail::mean_of(a.a2s) - true_hi;
            ms.ase_alpha1 = detail::mean_of(a.se1s);
            ms.ase_alpha2 = detail::mean_of(a.se2s);
            ms.ese_alpha1 = detail::sd_of(a.a1s);
            ms.ese_alpha2 = detail::sd_of(a.a2s);
        }
        for (const auto& ps : a.het_p) ms.median_het_p.push_back(detail::median_of(ps));
        summary.methods.push_back(std::move(ms));
    }

    if (spec.include_oracle && !or_a1.empty()) {
        OracleSummary os;
        os.reps = static_cast<int>(or_a1.size());
        const double true_lo = spec.example == Example::One ? -spec.alpha : 0.0;
        const double true_hi = spec.example == Example::One ? spec.alpha : 0.0;
        os.bias_alpha1 = detail::mean_of(or_a1) - true_lo;
        os.bias_alpha2 = detail::mean_of(or_a2) - true_hi;
        os.ase_alpha1 = detail::mean_of(or_se1);
        os.ase_alpha2 = detail::mean_of(or_se2);
        os.ese_alpha1 = detail::sd_of(or_a1);
        os.ese_alpha2 = detail::sd_of(or_a2);
        os.mean_rmse_mu = detail::mean_of(or_rmu);
        os.mean_rmse_beta = detail::mean_of(or_rbeta);
        summary.oracle = os;
    }
    return summary;
}

// method x statistic CSV, one row per method (plus an oracle row when
// present).
inline void write_summary_csv(std::ostream& os, const StudySummary& s) {
    os << "method,reps,failures,mean_k,median_k,se_k,mean_rmse_mu,se_rmse_mu,"
          "mean_rmse_beta,se_rmse_beta,mean_rand,se_rand,mean_pvalue,k2_count,"
          "bias_alpha1,bias_alpha2,ase_alpha1,ase_alpha2,ese_alpha1,ese_alpha2";
    for (size_t li = 0; li < s.spec.fixed_lambdas.size(); ++li)
        os << ",median_het_p_lambda" << s.spec.fixed_lambdas[li];
    os << "\n";
    for (const auto& m : s.methods) {
        os << m.name << "," << m.reps_completed << "," << m.failures << "," << m.mean_k << ","
           << m.median_k << "," << m.se_k << "," << m.mean_rmse_mu << "," << m.se_rmse_mu << ","
           << m.mean_rmse_beta << "," << m.se_rmse_beta << "," << m.mean_rand << ","
           << m.se_rand << "," << m.mean_pvalue << "," << m.k2_count << "," << m.bias_alpha1
           << "," << m.bias_alpha2 << "," << m.ase_alpha1 << "," << m.ase_alpha2 << ","
           << m.ese_alpha1 << "," << m.ese_alpha2;
        for (double p : m.median_het_p) os << "," << p;
        os << "\n";
    }
    if (s.oracle) {
        const auto& o = *s.oracle;
        os << "oracle," << o.reps << ",0,,,," << o.mean_rmse_mu << ",," << o.mean_rmse_beta
           << ",,,,," << o.reps << "," << o.bias_alpha1 << "," << o.bias_alpha2 << ","
           << o.ase_alpha1 << "," << o.ase_alpha2 << "," << o.ese_alpha1 << "," << o.ese_alpha2;
        for (size_t li = 0; li < s.spec.fixed_lambdas.size(); ++li) os << ",";
        os << "\n";
    }
}

} // namespace subfuse
