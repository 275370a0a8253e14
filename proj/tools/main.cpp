// Command-line front end: fit / path / select / infer / simulate / metrics /
// project subcommands over CSV input, JSON/TSV/CSV output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "subfuse/csv.hpp"
#include "subfuse/inference.hpp"
#include "subfuse/metrics.hpp"
#include "subfuse/pathsel.hpp"
#include "subfuse/simulate.hpp"

using json = nlohmann::json;
using namespace subfuse;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

// temp-then-rename so no command leaves partial output behind
void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw parse_error("cannot open output file " + tmp);
        out << content;
        if (!out) throw parse_error("failed writing " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw parse_error("failed to rename " + tmp + " to " + path);
}

PenaltyFamily parse_family(const std::string& s) {
    if (s == "l1") return PenaltyFamily::L1;
    if (s == "weighted-l1") return PenaltyFamily::WeightedL1;
    if (s == "mcp") return PenaltyFamily::MCP;
    if (s == "scad") return PenaltyFamily::SCAD;
    if (s == "truncated-l1") return PenaltyFamily::TruncatedL1;
    throw CLI::ValidationError("--penalty", "unknown penalty family '" + s + "'");
}

struct PenaltyFlags {
    std::string family = "mcp";
    double lambda = 0.0;
    double gamma = 0.0;  // 0 = family default
    double tau = 1.0;
    double phi = 0.0;

    void attach(CLI::App* cmd, bool need_lambda) {
        cmd->add_option("--penalty", family, "penalty family: l1, weighted-l1, mcp, scad, truncated-l1")
            ->check(CLI::IsMember({"l1", "weighted-l1", "mcp", "scad", "truncated-l1"}));
        auto* l = cmd->add_option("--lambda", lambda, "penalty level");
        if (need_lambda) l->required();
        cmd->add_option("--gamma", gamma, "MCP/SCAD concavity (default 3 / 3.7)");
        cmd->add_option("--tau", tau, "truncated-l1 threshold");
        cmd->add_option("--phi", phi, "weighted-l1 kernel bandwidth");
    }

    PenaltySpec spec() const {
        const PenaltyFamily fam = parse_family(family);
        PenaltySpec s;
        s.family = fam;
        s.lambda = lambda;
        s.gamma = gamma != 0.0 ? gamma : (fam == PenaltyFamily::SCAD ? 3.7 : 3.0);
        s.tau = tau;
        s.phi = phi;
        return s;
    }

    json to_json() const {
        const PenaltySpec s = spec();
        return {{"family", family},
                {"lambda", s.lambda},
                {"gamma", s.gamma},
                {"tau", s.tau},
                {"phi", s.phi}};
    }
};

struct SolverFlags {
    double vartheta = 1.0;
    double tol = 0.0;
    int max_iter = 1000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--vartheta", vartheta, "ADMM penalty parameter (default 1)");
        cmd->add_option("--tol", tol, "primal residual tolerance (default 1e-4*sqrt(n(n-1)/2))");
        cmd->add_option("--max-iter", max_iter, "maximum ADMM iterations (default 1000)");
    }

    SolverConfig config() const { return {vartheta, tol, max_iter, true}; }

    json to_json() const {
        return {{"vartheta", vartheta}, {"tol_primal", tol}, {"max_iter", max_iter}};
    }
};

json fit_to_json(const FusionFit& f, const SubgroupPartition& part) {
    json j;
    j["lambda"] = f.lambda;
    j["converged"] = f.converged;
    j["iters"] = f.iters;
    j["primal_residual_norm"] = f.primal_residual_norm;
    j["dual_residual_norm"] = f.dual_residual_norm;
    j["mu"] = std::vector<double>(f.mu.data(), f.mu.data() + f.mu.size());
    j["beta"] = std::vector<double>(f.beta.data(), f.beta.data() + f.beta.size());
    j["partition"] = {{"assignment", part.assignment},
                      {"k_hat", part.k_hat},
                      {"alpha", std::vector<double>(part.alpha.data(),
                                                    part.alpha.data() + part.alpha.size())}};
    return j;
}

json report_to_json(const InferenceReport& rep) {
    json j;
    j["alpha_hat"] = std::vector<double>(rep.alpha_hat.data(),
                                         rep.alpha_hat.data() + rep.alpha_hat.size());
    j["beta_hat"] = std::vector<double>(rep.beta_hat.data(),
                                        rep.beta_hat.data() + rep.beta_hat.size());
    j["sigma2_hat"] = rep.sigma2_hat;
    j["dof"] = rep.dof;
    std::vector<double> alpha_se;
    for (Index k = 0; k < rep.cov_alpha.rows(); ++k)
        alpha_se.push_back(std::sqrt(rep.cov_alpha(k, k)));
    std::vector<double> beta_se;
    for (Index k = 0; k < rep.cov_beta.rows(); ++k)
        beta_se.push_back(std::sqrt(rep.cov_beta(k, k)));
    j["alpha_se"] = alpha_se;
    j["beta_se"] = beta_se;
    json tests = json::array();
    for (const auto& t : rep.tests)
        tests.push_back({{"name", t.name}, {"z", t.z}, {"p_value", t.p_value}});
    j["tests"] = tests;
    return j;
}

std::string path_tsv_with_config(const PathResult& path, const json& config) {
    std::ostringstream os;
    os << "# config: " << config.dump() << "\n";
    if (path.selected >= 0)
        os << "# selected: index=" << path.selected
           << " lambda=" << path.entries[path.selected].lambda << "\n";
    write_path_tsv(os, path);
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subgroup discovery via concave pairwise fusion"};
    app.require_subcommand(1);

    // ---- fit ----
    auto* fit_cmd = app.add_subcommand("fit", "single ADMM fit at a fixed lambda");
    std::string fit_data, fit_response = "y", fit_out = "fit.json";
    PenaltyFlags fit_pen;
    SolverFlags fit_solver;
    fit_cmd->add_option("--data", fit_data, "input CSV")->required();
    fit_cmd->add_option("--response", fit_response, "response column name");
    fit_pen.attach(fit_cmd, /*need_lambda=*/true);
    fit_solver.attach(fit_cmd);
    fit_cmd->add_option("--output", fit_out, "output JSON path");

    // ---- path / select ----
    auto* path_cmd = app.add_subcommand("path", "solution path over a lambda grid");
    auto* select_cmd = app.add_subcommand("select", "solution path plus BIC selection");
    std::string ps_data, ps_response = "y", ps_out_tsv = "path.tsv", ps_out_json = "selection.json";
    PenaltyFlags ps_pen;
    SolverFlags ps_solver;
    int ps_points = 50;
    double ps_min_ratio = 0.01, ps_bic_c = 5.0;
    for (CLI::App* cmd : {path_cmd, select_cmd}) {
        cmd->add_option("--data", ps_data, "input CSV")->required();
        cmd->add_option("--response", ps_response, "response column name");
        ps_pen.attach(cmd, /*need_lambda=*/false);
        ps_solver.attach(cmd);
        cmd->add_option("--num-points", ps_points, "grid size (default 50)");
        cmd->add_option("--min-ratio", ps_min_ratio, "lambda_min / lambda_max (default 0.01)");
        cmd->add_option("--bic-c", ps_bic_c, "modified-BIC constant c (default 5)");
        cmd->add_option("--output-path", ps_out_tsv, "output TSV path");
    }
    path_cmd->add_option("--output", ps_out_tsv, "output TSV path (alias of --output-path)");
    select_cmd->add_option("--output", ps_out_json, "selection JSON path");

    // ---- infer ----
    auto* infer_cmd = app.add_subcommand("infer", "post-selection inference from a fit");
    std::string inf_data, inf_response = "y", inf_fit, inf_out = "report.json";
    std::vector<std::string> inf_tests;
    bool inf_het = false;
    double inf_level = 0.95;
    infer_cmd->add_option("--data", inf_data, "input CSV")->required();
    infer_cmd->add_option("--response", inf_response, "response column name");
    infer_cmd->add_option("--fit", inf_fit, "fit JSON produced by `fit`")->required();
    infer_cmd->add_option("--test", inf_tests, "group-difference test, e.g. g1=g2 (repeatable)");
    infer_cmd->add_flag("--heterogeneity", inf_het, "largest-group heterogeneity test");
    infer_cmd->add_option("--level", inf_level, "confidence level (default 0.95)");
    infer_cmd->add_option("--output", inf_out, "output JSON path");

    // ---- simulate ----
    auto* sim_cmd = app.add_subcommand("simulate", "seeded replication study");
    std::string sim_example = "1", sim_out = "summary.csv", sim_adjusted;
    PenaltyFlags sim_pen;
    SolverFlags sim_solver;
    StudySpec sim;
    double sim_bic_c = 5.0;
    std::vector<double> sim_lambdas;
    bool sim_oracle = false, sim_inference = false;
    bool sim_seed_set = false;
    sim_cmd->add_option("--example", sim_example,
                        "1, 2, 3, 4-case1, 4-case2-design1, 4-case2-design2")
        ->check(CLI::IsMember({"1", "2", "3", "4-case1", "4-case2-design1", "4-case2-design2"}));
    sim_cmd->add_option("--n", sim.n, "sample size (default 100)");
    sim_cmd->add_option("--alpha", sim.alpha, "Example-1 intercept magnitude");
    sim_cmd->add_option("--rho", sim.rho, "covariate exchangeable correlation (default 0.3)");
    sim_cmd->add_option("--sigma", sim.sigma, "noise sd (default 0.5)");
    sim_cmd->add_option("--reps", sim.reps, "number of replications");
    sim_cmd->add_option("--seed", sim.seed, "RNG seed (required)")
        ->required()
        ->each([&](const std::string&) { sim_seed_set = true; });
    sim_pen.attach(sim_cmd, /*need_lambda=*/false);
    sim_solver.attach(sim_cmd);
    sim_cmd->add_option("--bic-c", sim_bic_c, "modified-BIC constant c (default 5)");
    sim_cmd->add_option("--lambdas", sim_lambdas,
                        "fixed lambda list (heterogeneity-test workflow, skips BIC)");
    sim_cmd->add_flag("--oracle", sim_oracle, "also summarize the oracle estimator");
    sim_cmd->add_flag("--inference", sim_inference, "collect group-difference tests and alpha stats");
    sim_cmd->add_option("--emit-adjusted", sim_adjusted,
                        "write per-replication adjusted responses y - x'b_ols to CSV");
    sim_cmd->add_option("--output", sim_out, "summary CSV path");

    // ---- metrics ----
    auto* met_cmd = app.add_subcommand("metrics", "clustering metrics for a fit");
    std::string met_data, met_response = "y", met_fit, met_labels, met_out = "metrics.json";
    met_cmd->add_option("--data", met_data, "input CSV")->required();
    met_cmd->add_option("--response", met_response, "response column name");
    met_cmd->add_option("--fit", met_fit, "fit JSON produced by `fit`")->required();
    met_cmd->add_option("--labels-column", met_labels,
                        "column holding true labels (excluded from covariates)");
    met_cmd->add_option("--output", met_out, "output JSON path");

    // ---- project ----
    auto* proj_cmd = app.add_subcommand(
        "project", "replace a column by its fitted values from indicator regression");
    std::string proj_data, proj_column, proj_out = "projected.csv";
    std::vector<std::string> proj_onto;
    proj_cmd->add_option("--data", proj_data, "input CSV")->required();
    proj_cmd->add_option("--column", proj_column, "column to project")->required();
    proj_cmd->add_option("--onto", proj_onto, "factor columns (repeatable or comma-separated)")
        ->required();
    proj_cmd->add_option("--output", proj_out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*fit_cmd) {
            const PenaltySpec spec = fit_pen.spec();
            const SolverConfig config = fit_solver.config();
            config.validate();
            spec.validate(config.vartheta);
            const Dataset data = read_csv_dataset(fit_data, fit_response);
            const FusionFit f = fit(data, spec, config);
            const SubgroupPartition part = extract_partition(f);
            json out = fit_to_json(f, part);
            out["config"] = {{"command", "fit"},
                             {"data", fit_data},
                             {"response", fit_response},
                             {"penalty", fit_pen.to_json()},
                             {"solver", fit_solver.to_json()}};
            atomic_write(fit_out, out.dump(2) + "\n");
        } else if (*path_cmd || *select_cmd) {
            const PenaltySpec spec = ps_pen.spec();
            const SolverConfig config = ps_solver.config();
            config.validate();
            // lambda comes from the adaptive grid; check only shape parameters
            spec.with_lambda(1.0).validate(config.vartheta);
            const Dataset data = read_csv_dataset(ps_data, ps_response);
            const std::vector<double> grid =
                lambda_grid(data, spec, config, ps_points, ps_min_ratio);
            PathResult path = solution_path(data, spec, config, grid, ps_bic_c);
            json config_json = {{"command", *select_cmd ? "select" : "path"},
                                {"data", ps_data},
                                {"response", ps_response},
                                {"penalty", ps_pen.to_json()},
                                {"solver", ps_solver.to_json()},
                                {"num_points", ps_points},
                                {"min_ratio", ps_min_ratio},
                                {"bic_c", ps_bic_c}};
            if (*select_cmd) {
                path = select_lambda(std::move(path), data, ps_bic_c);
                const PathEntry& sel = path.entries[path.selected];
                json out = fit_to_json(sel.fit, sel.partition);
                out["selected_index"] = path.selected;
                out["bic"] = sel.bic;
                out["c_n"] = path.c_n;
                out["config"] = config_json;
                atomic_write(ps_out_json, out.dump(2) + "\n");
            }
            atomic_write(ps_out_tsv, path_tsv_with_config(path, config_json));
        } else if (*infer_cmd) {
            const Dataset data = read_csv_dataset(inf_data, inf_response);
            std::ifstream fin(inf_fit);
            if (!fin) throw parse_error("cannot open fit file " + inf_fit);
            json fj = json::parse(fin);
            FusionFit f;
            const std::vector<double> mu = fj.at("mu").get<std::vector<double>>();
            const std::vector<double> beta = fj.at("beta").get<std::vector<double>>();
            f.mu = Eigen::Map<const VectorXd>(mu.data(), static_cast<Index>(mu.size()));
            f.beta = Eigen::Map<const VectorXd>(beta.data(), static_cast<Index>(beta.size()));
            SubgroupPartition part;
            part.assignment = fj.at("partition").at("assignment").get<std::vector<int>>();
            part.k_hat = fj.at("partition").at("k_hat").get<int>();
            const std::vector<double> al =
                fj.at("partition").at("alpha").get<std::vector<double>>();
            part.alpha = Eigen::Map<const VectorXd>(al.data(), static_cast<Index>(al.size()));

            InferenceReport rep = report_from_fit(data, f, part);
            for (const std::string& t : inf_tests) {
                int k = 0, kp = 0;
                if (std::sscanf(t.c_str(), "g%d=g%d", &k, &kp) != 2)
                    throw CLI::ValidationError("--test", "expected form g<k>=g<k'>");
                rep.tests.push_back(test_group_difference(rep, k, kp));
            }
            if (inf_het) rep.tests.push_back(test_heterogeneity(data, part, part.alpha, f.beta));

            json out = report_to_json(rep);
            json intervals = json::array();
            for (Index k = 0; k < rep.alpha_hat.size(); ++k) {
                VectorXd a = VectorXd::Zero(rep.alpha_hat.size());
                a[k] = 1.0;
                auto [lo, hi] = confidence_interval(a, rep.alpha_hat, rep.cov_alpha, inf_level);
                intervals.push_back({{"target", "alpha" + std::to_string(k + 1)},
                                     {"level", inf_level},
                                     {"lo", lo},
                                     {"hi", hi}});
            }
            out["confidence_intervals"] = intervals;
            out["config"] = {{"command", "infer"},
                             {"data", inf_data},
                             {"response", inf_response},
                             {"fit", inf_fit},
                             {"level", inf_level}};
            atomic_write(inf_out, out.dump(2) + "\n");
        } else if (*sim_cmd) {
            (void)sim_seed_set;
            if (sim_example == "1") sim.example = Example::One;
            else if (sim_example == "2") sim.example = Example::Two;
            else if (sim_example == "3") sim.example = Example::Three;
            else if (sim_example == "4-case1") sim.example = Example::FourCase1;
            else if (sim_example == "4-case2-design1") sim.example = Example::FourCase2D1;
            else sim.example = Example::FourCase2D2;
            sim.config = sim_solver.config();
            sim.fixed_lambdas = sim_lambdas;
            sim.include_oracle = sim_oracle;
            sim.collect_inference = sim_inference;
            MethodSpec method;
            method.name = sim_pen.family;
            method.penalty = sim_pen.spec();
            method.penalty.lambda = 1.0;  // grid-selected; placeholder passes validation
            method.bic_c = sim_bic_c;
            sim.methods = {method};
            const StudySummary summary = run_study(sim);
            json config_json = {{"command", "simulate"},
                                {"example", sim_example},
                                {"n", sim.n},
                                {"alpha", sim.alpha},
                                {"rho", sim.rho},
                                {"sigma", sim.sigma},
                                {"reps", sim.reps},
                                {"seed", sim.seed},
                                {"penalty", sim_pen.to_json()},
                                {"solver", sim_solver.to_json()},
                                {"bic_c", sim_bic_c},
                                {"lambdas", sim_lambdas}};
            std::ostringstream os;
            os << "# config: " << config_json.dump() << "\n";
            write_summary_csv(os, summary);
            atomic_write(sim_out, os.str());
            if (!sim_adjusted.empty()) {
                std::ostringstream as;
                as << "# config: " << config_json.dump() << "\n";
                as << "rep,index,adjusted_response,true_label\n";
                for (int r = 0; r < sim.reps; ++r) {
                    const Dataset d = gen_example(sim, r);
                    const VectorXd adj = adjusted_responses(d);
                    for (Index i = 0; i < d.n(); ++i)
                        as << r << "," << (i + 1) << "," << adj[i] << ","
                           << d.truth()->labels[i] << "\n";
                }
                atomic_write(sim_adjusted, as.str());
            }
        } else if (*met_cmd) {
            CsvTable table = read_csv_table(met_data);
            std::vector<int> labels;
            if (!met_labels.empty()) {
                Index lc = -1;
                for (size_t c = 0; c < table.columns.size(); ++c)
                    if (table.columns[c] == met_labels) { lc = static_cast<Index>(c); break; }
                if (lc < 0) throw missing_column("metrics: labels column '" + met_labels + "' not found");
                for (const auto& row : table.rows)
                    labels.push_back(static_cast<int>(row[lc]));
                // drop the labels column so it does not enter X
                table.columns.erase(table.columns.begin() + lc);
                for (auto& row : table.rows) row.erase(row.begin() + lc);
            }
            Index ycol = -1;
            for (size_t c = 0; c < table.columns.size(); ++c)
                if (table.columns[c] == met_response) { ycol = static_cast<Index>(c); break; }
            if (ycol < 0) throw missing_column("metrics: response column '" + met_response + "' not found");
            const Index n = static_cast<Index>(table.rows.size());
            const Index p = static_cast<Index>(table.columns.size()) - 1;
            VectorXd y(n);
            MatrixXd X(n, p);
            for (Index r = 0; r < n; ++r) {
                y[r] = table.rows[r][ycol];
                Index k = 0;
                for (size_t c = 0; c < table.columns.size(); ++c)
                    if (static_cast<Index>(c) != ycol) X(r, k++) = table.rows[r][c];
            }
            const Dataset data(std::move(y), std::move(X));

            std::ifstream fin(met_fit);
            if (!fin) throw parse_error("cannot open fit file " + met_fit);
            json fj = json::parse(fin);
            SubgroupPartition part;
            part.assignment = fj.at("partition").at("assignment").get<std::vector<int>>();
            part.k_hat = fj.at("partition").at("k_hat").get<int>();
            const std::vector<double> al =
                fj.at("partition").at("alpha").get<std::vector<double>>();
            part.alpha = Eigen::Map<const VectorXd>(al.data(), static_cast<Index>(al.size()));
            const std::vector<double> bv = fj.at("beta").get<std::vector<double>>();
            VectorXd beta = Eigen::Map<const VectorXd>(bv.data(), static_cast<Index>(bv.size()));

            VectorXd adjusted = data.y();
            if (data.p() > 0) adjusted -= data.X() * beta;
            json out;
            out["k_hat"] = part.k_hat;
            if (part.k_hat >= 2) out["davies_bouldin"] = davies_bouldin(adjusted, part);
            if (!labels.empty()) out["rand_index"] = rand_index(labels, part.assignment);
            out["config"] = {{"command", "metrics"},
                             {"data", met_data},
                             {"response", met_response},
                             {"fit", met_fit},
                             {"labels_column", met_labels}};
            atomic_write(met_out, out.dump(2) + "\n");
        } else if (*proj_cmd) {
            const CsvTable table = read_csv_table(proj_data);
            auto col_of = [&](const std::string& name) {
                for (size_t c = 0; c < table.columns.size(); ++c)
                    if (table.columns[c] == name) return static_cast<Index>(c);
                throw missing_column("project: column '" + name + "' not found");
            };
            const Index tc = col_of(proj_column);
            std::vector<Index> onto;
            for (const std::string& group : proj_onto) {
                std::stringstream ss(group);
                std::string name;
                while (std::getline(ss, name, ',')) onto.push_back(col_of(name));
            }

            const Index n = static_cast<Index>(table.rows.size());
            // indicator expansion: one column per distinct level beyond the
            // first, per factor, plus an intercept
            std::vector<std::vector<double>> cols;
            for (Index fc : onto) {
                std::set<double> levels;
                for (const auto& row : table.rows) levels.insert(row[fc]);
                bool first = true;
                for (double level : levels) {
                    if (first) { first = false; continue; }
                    std::vector<double> ind(n, 0.0);
                    for (Index r = 0; r < n; ++r)
                        if (table.rows[r][fc] == level) ind[r] = 1.0;
                    cols.push_back(std::move(ind));
                }
            }
            MatrixXd W(n, static_cast<Index>(cols.size()) + 1);
            W.col(0).setOnes();
            for (size_t c = 0; c < cols.size(); ++c)
                for (Index r = 0; r < n; ++r) W(r, static_cast<Index>(c) + 1) = cols[c][r];
            VectorXd target(n);
            for (Index r = 0; r < n; ++r) target[r] = table.rows[r][tc];
            const VectorXd fitted = W * W.colPivHouseholderQr().solve(target);

            std::ostringstream os;
            for (size_t c = 0; c < table.columns.size(); ++c)
                os << (c ? "," : "") << table.columns[c];
            os << "," << proj_column << "_fitted\n";
            os.precision(12);
            for (Index r = 0; r < n; ++r) {
                for (size_t c = 0; c < table.columns.size(); ++c)
                    os << (c ? "," : "") << table.rows[r][c];
                os << "," << fitted[r] << "\n";
            }
            atomic_write(proj_out, os.str());
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const empty_file& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const missing_column& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const dimension_mismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const rank_deficient_x& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const too_few_observations& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const invalid_shape_parameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
