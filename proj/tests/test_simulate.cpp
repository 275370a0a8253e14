#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "subfuse/simulate.hpp"

using namespace subfuse;

TEST_CASE("rng streams are deterministic and independent") {
    Rng a(42, 0), b(42, 0), c(42, 1);
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    // a different stream from the same seed diverges immediately
    Rng a2(42, 0);
    bool any_diff = false;
    for (int i = 0; i < 10; ++i) any_diff |= (a2.uniform() != c.uniform());
    CHECK(any_diff);
}

TEST_CASE("rng normal moments") {
    Rng rng(7, 3);
    const int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        s += x;
        s2 += x * x;
    }
    CHECK(s / n == Catch::Approx(0.0).margin(0.01));
    CHECK(s2 / n == Catch::Approx(1.0).margin(0.02));
}

TEST_CASE("rng discrete respects probabilities") {
    Rng rng(11, 0);
    const std::vector<double> probs = {0.2, 0.3, 0.5};
    std::vector<int> counts(3, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[rng.discrete(probs)];
    CHECK(static_cast<double>(counts[0]) / n == Catch::Approx(0.2).margin(0.01));
    CHECK(static_cast<double>(counts[1]) / n == Catch::Approx(0.3).margin(0.01));
    CHECK(static_cast<double>(counts[2]) / n == Catch::Approx(0.5).margin(0.01));
}

TEST_CASE("gen_example is reproducible per (seed, rep)") {
    StudySpec spec;
    spec.example = Example::One;
    spec.alpha = 1.0;
    spec.seed = 2024;
    spec.reps = 1;
    const Dataset a = gen_example(spec, 3);
    const Dataset b = gen_example(spec, 3);
    CHECK(a.y() == b.y());
    CHECK(a.X() == b.X());
    CHECK(a.truth()->mu == b.truth()->mu);
    const Dataset c = gen_example(spec, 4);
    CHECK(a.y() != c.y());
}

TEST_CASE("example DGPs produce the advertised structures") {
    StudySpec spec;
    spec.seed = 5;
    spec.reps = 1;

    spec.example = Example::One;
    spec.alpha = 2.0;
    const Dataset d1 = gen_example(spec, 0);
    for (Index i = 0; i < d1.n(); ++i) {
        const double m = d1.truth()->mu[i];
        CHECK((m == 2.0 || m == -2.0));
        CHECK(d1.truth()->labels[i] == (m > 0 ? 2 : 1));
    }
    for (Index j = 0; j < d1.p(); ++j) {
        CHECK(d1.truth()->beta[j] >= 0.5);
        CHECK(d1.truth()->beta[j] <= 1.0);
    }

    spec.example = Example::Two;
    const Dataset d2 = gen_example(spec, 0);
    for (Index i = 0; i < d2.n(); ++i) {
        const double m = d2.truth()->mu[i];
        CHECK((m == -2.0 || m == 0.0 || m == 2.0));
    }

    spec.example = Example::Three;
    const Dataset d3 = gen_example(spec, 0);
    CHECK(d3.truth()->mu.minCoeff() == 2.0);
    CHECK(d3.truth()->mu.maxCoeff() == 2.0);
    CHECK(*std::max_element(d3.truth()->labels.begin(), d3.truth()->labels.end()) == 1);
}

TEST_CASE("unbalanced designs skew the group frequencies") {
    StudySpec spec;
    spec.example = Example::FourCase2D2;  // probabilities 0.1, 0.3, 0.6
    spec.seed = 9;
    spec.n = 2000;
    spec.reps = 1;
    const Dataset d = gen_example(spec, 0);
    std::vector<int> counts(3, 0);
    for (int lab : d.truth()->labels) ++counts[lab - 1];
    CHECK(static_cast<double>(counts[0]) / 2000 == Catch::Approx(0.1).margin(0.03));
    CHECK(static_cast<double>(counts[2]) / 2000 == Catch::Approx(0.6).margin(0.04));
}

TEST_CASE("covariates follow the exchangeable correlation") {
    Rng rng(17, 0);
    const MatrixXd X = gen_covariates(20000, 2, 0.3, rng);
    const VectorXd c0 = X.col(0).array() - X.col(0).mean();
    const VectorXd c1 = X.col(1).array() - X.col(1).mean();
    const double corr = c0.dot(c1) / std::sqrt(c0.squaredNorm() * c1.squaredNorm());
    CHECK(corr == Catch::Approx(0.3).margin(0.02));
    CHECK(c0.squaredNorm() / 20000 == Catch::Approx(1.0).margin(0.03));
}

TEST_CASE("adjusted responses remove the pooled covariate effect") {
    StudySpec spec;
    spec.example = Example::One;
    spec.seed = 77;
    spec.reps = 1;
    const Dataset d = gen_example(spec, 0);
    const VectorXd adj = adjusted_responses(d);
    // re-regressing the adjusted response on [1 X] gives zero slopes
    MatrixXd W(d.n(), d.p() + 1);
    W.col(0).setOnes();
    W.rightCols(d.p()) = d.X();
    const VectorXd coef = W.colPivHouseholderQr().solve(adj);
    CHECK(coef.tail(d.p()).norm() < 1e-10);
}

TEST_CASE("summary helpers") {
    using detail::mean_of;
    using detail::median_of;
    using detail::sd_of;
    CHECK(mean_of({1, 2, 3, 4}) == 2.5);
    CHECK(median_of({3, 1, 2}) == 2.0);
    CHECK(median_of({4, 1, 3, 2}) == 2.5);
    CHECK(sd_of({1, 2, 3, 4}) == Catch::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(std::isnan(mean_of({})));
    CHECK(std::isnan(sd_of({1.0})));
}

TEST_CASE("run_study end to end on a tiny configuration") {
    StudySpec spec;
    spec.example = Example::One;
    spec.alpha = 2.0;
    spec.n = 50;
    spec.p = 2;
    spec.reps = 3;
    spec.seed = 99;
    spec.grid_points = 12;
    spec.include_oracle = true;
    spec.collect_inference = true;
    spec.methods.push_back({"mcp", PenaltySpec::mcp(1.0, 3.0), 5.0});
    const StudySummary s = run_study(spec);
    REQUIRE(s.methods.size() == 1);
    const MethodSummary& m = s.methods[0];
    CHECK(m.reps_completed + m.failures == 3);
    CHECK(m.mean_k >= 1.0);
    CHECK(std::isfinite(m.mean_rmse_mu));
    REQUIRE(s.oracle.has_value());
    CHECK(s.oracle->reps == 3);
    CHECK(s.oracle->ase_alpha1 > 0);
    CHECK(std::abs(s.oracle->bias_alpha1) < 0.5);

    std::ostringstream os;
    write_summary_csv(os, s);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header.rfind("method,reps,failures,mean_k", 0) == 0);
    int rows = 0;
    for (std::string line; std::getline(is, line);) ++rows;
    CHECK(rows == 2);  // one method + the oracle row
}

TEST_CASE("fixed-lambda workflow records median heterogeneity p-values") {
    StudySpec spec;
    spec.example = Example::Three;
    spec.n = 40;
    spec.p = 2;
    spec.reps = 3;
    spec.seed = 11;
    spec.fixed_lambdas = {0.2, 0.3};
    spec.methods.push_back({"mcp", PenaltySpec::mcp(1.0, 3.0), 5.0});
    const StudySummary s = run_study(spec);
    REQUIRE(s.methods.size() == 1);
    REQUIRE(s.methods[0].median_het_p.size() == 2);
    for (double p : s.methods[0].median_het_p) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("study spec validation") {
    StudySpec spec;
    spec.rho = 1.0;
    CHECK_THROWS_AS(spec.validate(), invalid_shape_parameter);
    spec.rho = 0.3;
    spec.sigma = 0.0;
    CHECK_THROWS_AS(spec.validate(), invalid_shape_parameter);
    spec.sigma = 0.5;
    spec.reps = 0;
    CHECK_THROWS_AS(spec.validate(), invalid_shape_parameter);
}
