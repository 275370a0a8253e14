// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Runs full seeded simulation studies, so expect a few minutes.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <vector>

#include "subfuse/admm.hpp"
#include "subfuse/csv.hpp"
#include "subfuse/inference.hpp"
#include "subfuse/metrics.hpp"
#include "subfuse/pathsel.hpp"
#include "subfuse/penalty.hpp"
#include "subfuse/rng.hpp"
#include "subfuse/simulate.hpp"

using namespace subfuse;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const char* fmt, ...) {
    if (!ok) ++g_failures;
    std::printf("%s criterion-%02d: ", ok ? "PASS" : "FAIL", criterion);
    va_list args;
    va_start(args, fmt);
    std::vprintf(fmt, args);
    va_end(args);
    std::printf("\n");
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Independent scalar oracle: brute-force minimization of
// (vartheta/2)(delta - eta)^2 + p(|eta|, lambda) on a grid, then refined.
double grid_prox_oracle(const PenaltySpec& spec, double delta, double vartheta) {
    auto obj = [&](double eta) {
        return 0.5 * vartheta * (delta - eta) * (delta - eta) +
               penalty_value(spec, std::abs(eta));
    };
    const double span = std::abs(delta) + 1.0;
    double best = -span, best_val = obj(-span);
    for (double eta = -span; eta <= span; eta += 1e-3) {
        const double v = obj(eta);
        if (v < best_val) { best_val = v; best = eta; }
    }
    double fine = best;
    for (double eta = best - 2e-3; eta <= best + 2e-3; eta += 1e-6) {
        const double v = obj(eta);
        if (v < best_val) { best_val = v; fine = eta; }
    }
    return fine;
}

// Dense reference matrix I + vartheta Delta^T Delta - Q_X.
MatrixXd dense_m(const Dataset& d, double vartheta) {
    const Index n = d.n();
    MatrixXd dtd = MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            dtd(i, i) += 1;
            dtd(j, j) += 1;
            dtd(i, j) -= 1;
            dtd(j, i) -= 1;
        }
    }
    MatrixXd m = MatrixXd::Identity(n, n) + vartheta * dtd;
    if (d.p() > 0) {
        const MatrixXd& X = d.X();
        m -= X * (X.transpose() * X).inverse() * X.transpose();
    }
    return m;
}

Dataset random_dataset(Rng& rng, Index n, Index p) {
    VectorXd y(n);
    for (Index i = 0; i < n; ++i) y[i] = rng.normal() + (rng.uniform() < 0.5 ? -1.0 : 1.0);
    MatrixXd X(n, p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) X(i, j) = rng.normal();
    return make_dataset(std::move(y), std::move(X));
}

// -------------------------------------------------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(1001, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double delta = rng.uniform(-4.0, 4.0);
        const double lambda = rng.uniform(0.05, 2.0);
        const double vartheta = rng.uniform(0.5, 2.0);
        const PenaltySpec specs[3] = {
            PenaltySpec::l1(lambda),
            PenaltySpec::mcp(lambda, std::max(1.0, 1.0 / vartheta) + rng.uniform(0.2, 3.0)),
            PenaltySpec::scad(lambda,
                              std::max(2.0, 1.0 / vartheta + 1.0) + rng.uniform(0.2, 3.0))};
        for (const PenaltySpec& spec : specs) {
            const double got = prox_eta(delta, spec, vartheta);
            const double want = grid_prox_oracle(spec, delta, vartheta);
            worst = std::max(worst, std::abs(got - want));
        }
    }
    const double secs = seconds_since(t0);
    report(1, worst <= 2e-5 && secs < 10.0,
           "prox vs grid oracle, 1000 tuples x {l1,mcp,scad}: max |diff| = %.2e (<= 2e-5), "
           "%.1f s (< 10 s)", worst, secs);
}

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(1002, 0);
    double worst = 0.0;
    bool identity_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 5 + static_cast<Index>(rng.uniform() * 26);  // 5..30
        const Index p = std::min<Index>(static_cast<Index>(rng.uniform() * 5.99), n - 1);
        SolverConfig cfg;
        cfg.vartheta = rng.uniform(0.5, 2.0);
        const Dataset d = random_dataset(rng, n, p);
        const SolverWorkspace ws = precompute(d, cfg);
        VectorXd v(n);
        for (Index i = 0; i < n; ++i) v[i] = rng.normal();
        const VectorXd dense = dense_m(d, cfg.vartheta).ldlt().solve(v);
        worst = std::max(worst, (ws.solve(v) - dense).norm());

        // Delta^T Delta = n I - 11^T holds exactly in integer arithmetic, so
        // I + vartheta Delta^T Delta = (1 + n vartheta) I - vartheta 11^T.
        MatrixXd dtd = MatrixXd::Zero(n, n);
        for (Index i = 0; i < n; ++i) {
            for (Index j = i + 1; j < n; ++j) {
                dtd(i, i) += 1;
                dtd(j, j) += 1;
                dtd(i, j) -= 1;
                dtd(j, i) -= 1;
            }
        }
        const MatrixXd rhs = static_cast<double>(n) * MatrixXd::Identity(n, n) -
                             MatrixXd::Ones(n, n);
        identity_ok = identity_ok && (dtd == rhs);
    }
    const double secs = seconds_since(t0);
    report(2, worst <= 1e-8 && identity_ok && secs < 5.0,
           "low-rank vs dense solve, 200 instances: max error = %.2e (<= 1e-8), "
           "rank-one identity exact: %s, %.1f s (< 5 s)",
           worst, identity_ok ? "yes" : "no", secs);
}

void criterion_3() {
    StudySpec gen;
    gen.example = Example::One;
    gen.alpha = 2.0;
    gen.n = 100;
    gen.seed = 7;
    gen.reps = 50;
    SolverConfig cfg;
    const double tol = cfg.resolved_tol(100);
    int bad = 0;
    double worst_primal = 0.0, worst_dual = 0.0;
    const PenaltySpec fams[2] = {PenaltySpec::mcp(1.0, 3.0), PenaltySpec::scad(1.0, 3.7)};
    for (int r = 0; r < 50; ++r) {
        const Dataset d = gen_example(gen, r);
        for (const PenaltySpec& fam : fams) {
            const auto grid = lambda_grid(d, fam, cfg);
            PathResult path = solution_path(d, fam, cfg, grid, 10.0);
            path = select_lambda(std::move(path), d, 10.0);
            const FusionFit& f = path.entries[path.selected].fit;
            worst_primal = std::max(worst_primal, f.primal_residual_norm);
            worst_dual = std::max(worst_dual, f.dual_residual_norm);
            if (!(f.converged && f.iters <= 1000 && f.primal_residual_norm < tol &&
                  f.dual_residual_norm < 10.0 * tol))
                ++bad;
        }
    }
    report(3, bad == 0,
           "50 seeded datasets x {mcp,scad} at selected lambda: %d violations, "
           "max primal = %.2e (tol %.2e), max dual = %.2e (< %.2e)",
           bad, worst_primal, tol, worst_dual, 10.0 * tol);
}

// Criteria 4 and 5 share one study: Example 1, n=100, reps=100, MCP, c=10,
// alpha=2.
void criteria_4_5() {
    StudySpec spec;
    spec.example = Example::One;
    spec.alpha = 2.0;
    spec.n = 100;
    spec.reps = 100;
    spec.seed = 42;
    spec.methods.push_back({"mcp", PenaltySpec::mcp(1.0, 3.0), 10.0});
    const StudySummary s = run_study(spec);
    const MethodSummary& m = s.methods[0];
    report(4, m.mean_k >= 1.90 && m.mean_k <= 2.15 && m.median_k == 2.0 && m.failures == 0,
           "mcp c=10 alpha=2: mean K = %.3f (in [1.90, 2.15]), median K = %.1f (= 2), "
           "failures = %d", m.mean_k, m.median_k, m.failures);
    report(5,
           m.mean_rmse_mu >= 0.10 && m.mean_rmse_mu <= 0.25 && m.mean_rmse_beta >= 0.03 &&
               m.mean_rmse_beta <= 0.10,
           "same study: rmse_mu = %.3f (in [0.10, 0.25]), rmse_beta = %.3f (in [0.03, 0.10])",
           m.mean_rmse_mu, m.mean_rmse_beta);
}

void criterion_6() {
    StudySpec spec;
    spec.example = Example::One;
    spec.alpha = 1.0;
    spec.n = 100;
    spec.reps = 100;
    spec.seed = 101;
    spec.include_oracle = true;
    const StudySummary s = run_study(spec);
    const OracleSummary& o = *s.oracle;
    const double gap1 = std::abs(o.ase_alpha1 - o.ese_alpha1);
    const double gap2 = std::abs(o.ase_alpha2 - o.ese_alpha2);
    const bool in_range = o.ase_alpha1 >= 0.06 && o.ase_alpha1 <= 0.09 &&
                          o.ase_alpha2 >= 0.06 && o.ase_alpha2 <= 0.09;
    report(6, gap1 < 0.02 && gap2 < 0.02 && in_range,
           "oracle over 100 reps: ASE = (%.3f, %.3f) in [0.06, 0.09], "
           "|ASE - ESE| = (%.3f, %.3f) < 0.02",
           o.ase_alpha1, o.ase_alpha2, gap1, gap2);
}

void criterion_7() {
    StudySpec spec;
    spec.example = Example::One;
    spec.alpha = 1.0;
    spec.n = 100;
    spec.reps = 100;
    spec.seed = 17;
    spec.collect_inference = true;
    spec.methods.push_back({"mcp", PenaltySpec::mcp(1.0, 3.0), 10.0});
    const StudySummary s = run_study(spec);
    const MethodSummary& m = s.methods[0];
    report(7, m.mean_pvalue < 0.001,
           "mcp c=10 alpha=1: mean p-value for H0 alpha1 = alpha2 is %.2e (< 1e-3)",
           m.mean_pvalue);
}

void criterion_8() {
    StudySpec spec;
    spec.example = Example::FourCase1;
    spec.n = 100;
    spec.reps = 100;
    spec.seed = 23;
    spec.methods.push_back({"mcp", PenaltySpec::mcp(1.0, 3.0), 10.0});
    spec.methods.push_back({"tl1", PenaltySpec::truncated_l1(1.0, 1.0), 5.0});
    const StudySummary s = run_study(spec);
    const MethodSummary& mcp = s.methods[0];
    const MethodSummary& tl1 = s.methods[1];
    report(8,
           mcp.mean_rand >= 0.85 && mcp.mean_rand <= 0.94 && tl1.mean_rand >= 0.82 &&
               tl1.mean_rand <= 0.92,
           "example 4 case 1: mcp c=10 rand = %.3f (in [0.85, 0.94]), "
           "tl1 tau=1 rand = %.3f (in [0.82, 0.92])",
           mcp.mean_rand, tl1.mean_rand);
}

void criterion_9() {
    Rng rng(1009, 0);
    SolverConfig grid_cfg;
    SolverConfig tight_cfg;
    tight_cfg.tol_primal = 1e-8;
    tight_cfg.max_iter = 20000;
    double worst = 0.0;
    int not_fused = 0;
    const PenaltySpec fam = PenaltySpec::mcp(1.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Index n = 20 + static_cast<Index>(rng.uniform() * 41);  // 20..60
        const Index p = static_cast<Index>(rng.uniform() * 3.99);     // 0..3
        const Dataset d = random_dataset(rng, n, p);
        const auto grid = lambda_grid(d, fam, grid_cfg, 2);
        const FusionFit f = fit(d, fam.with_lambda(2.0 * grid.back()), tight_cfg);
        const SubgroupPartition part = extract_partition(f);
        if (part.k_hat != 1) { ++not_fused; continue; }
        MatrixXd W(n, p + 1);
        W.col(0).setOnes();
        if (p > 0) W.rightCols(p) = d.X();
        const VectorXd coef = W.colPivHouseholderQr().solve(d.y());
        worst = std::max(worst, std::abs(part.alpha[0] - coef[0]));
        for (Index j = 0; j < p; ++j)
            worst = std::max(worst, std::abs(f.beta[j] - coef[j + 1]));
    }

    // phi = 0 weighted L1 is plain L1, bitwise
    bool bitwise = true;
    for (int trial = 0; trial < 5; ++trial) {
        const Dataset d = random_dataset(rng, 25, 2);
        SolverConfig cfg;
        const FusionFit a = fit(d, PenaltySpec::l1(0.3), cfg);
        const FusionFit b = fit(d, PenaltySpec::weighted_l1(0.3, 0.0), cfg);
        bitwise = bitwise && a.mu == b.mu && a.beta == b.beta && a.eta == b.eta &&
                  a.upsilon == b.upsilon;
    }
    report(9, not_fused == 0 && worst <= 1e-4 && bitwise,
           "lambda > lambda_max on 50 datasets: %d unfused, max |coef - pooled OLS| = %.2e "
           "(<= 1e-4); phi=0 weighted-l1 == l1 bitwise: %s",
           not_fused, worst, bitwise ? "yes" : "no");
}

void criterion_10() {
    StudySpec gen;
    gen.example = Example::One;
    gen.alpha = 1.0;
    gen.n = 100;
    gen.seed = 42;
    gen.reps = 1;
    const Dataset d = gen_example(gen, 0);
    SolverConfig cfg;
    const PenaltySpec fam = PenaltySpec::mcp(1.0, 3.0);
    const auto grid = lambda_grid(d, fam, cfg);
    const PathResult path = solution_path(d, fam, cfg, grid, 5.0);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& e : path.entries) {
        if (e.partition.k_hat == 2) {
            lo = std::min(lo, e.lambda);
            hi = std::max(hi, e.lambda);
        }
    }
    const bool found = std::isfinite(lo);
    report(10, found && lo >= 0.2 && lo <= 0.55 && hi >= 0.45 && hi <= 0.9,
           "seeded example-1 mcp path: K=2 interval [%.3f, %.3f], edges in "
           "[0.2, 0.55] and [0.45, 0.9]", lo, hi);
}

void criterion_11() {
    StudySpec spec;
    spec.example = Example::Three;
    spec.n = 100;
    spec.reps = 100;
    spec.seed = 13;
    spec.fixed_lambdas = {0.15, 0.20, 0.25};
    spec.methods.push_back({"scad", PenaltySpec::scad(1.0, 3.7), 5.0});
    const StudySummary s = run_study(spec);
    const MethodSummary& m = s.methods[0];
    bool ok = m.median_het_p.size() == 3;
    for (double p : m.median_het_p) ok = ok && p > 0.1;
    report(11, ok,
           "homogeneous DGP, lambda {0.15, 0.20, 0.25}: median heterogeneity p = "
           "(%.3f, %.3f, %.3f), each > 0.1",
           m.median_het_p.size() > 0 ? m.median_het_p[0] : -1.0,
           m.median_het_p.size() > 1 ? m.median_het_p[1] : -1.0,
           m.median_het_p.size() > 2 ? m.median_het_p[2] : -1.0);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criteria_4_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}
