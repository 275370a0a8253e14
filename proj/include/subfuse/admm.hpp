#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "subfuse/core.hpp"
#include "subfuse/penalty.hpp"

namespace subfuse {

namespace detail {

// Compensated (Kahan) accumulator so pairwise reductions are independent of
// evaluation order.
struct KahanAccumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

} // namespace detail

// (Delta^T v)_i = sum_{j>i} v_(i,j) - sum_{j<i} v_(j,i), computed in O(n^2)
// without forming Delta.
inline VectorXd delta_t_apply(const VectorXd& v, Index n) {
    if (v.size() != pair_count(n)) throw dimension_mismatch("delta_t_apply: wrong pair-vector length");
    std::vector<detail::KahanAccumulator> acc(n);
    Index idx = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j, ++idx) {
            acc[i].add(v[idx]);
            acc[j].add(-v[idx]);
        }
    }
    VectorXd out(n);
    for (Index i = 0; i < n; ++i) out[i] = acc[i].sum;
    return out;
}

// (Delta mu)_(i,j) = mu_i - mu_j for all i < j.
inline VectorXd delta_apply(const VectorXd& mu) {
    const Index n = mu.size();
    VectorXd out(pair_count(n));
    Index idx = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j, ++idx) out[idx] = mu[i] - mu[j];
    return out;
}

// ---------------------------------------------------------------------------
// SolverWorkspace: the mu-update matrix M = I + vartheta Delta^T Delta - Q_X
// equals (1 + n vartheta) I - U C U^T with U = [1 X] and
// C = blockdiag(vartheta, (X^T X)^{-1}); M^{-1} is applied through the
// (p+1)-dimensional capacitance system, O(np) per solve.
// ---------------------------------------------------------------------------

class SolverWorkspace {
public:
    SolverWorkspace(const Dataset& dataset, const SolverConfig& config)
        : n_(dataset.n()), p_(dataset.p()), vartheta_(config.vartheta) {
        config.validate();
        const double a = 1.0 + static_cast<double>(n_) * vartheta_;
        a_ = a;
        U_.resize(n_, p_ + 1);
        U_.col(0).setOnes();
        if (p_ > 0) {
            U_.rightCols(p_) = dataset.X();
            const MatrixXd xtx = dataset.X().transpose() * dataset.X();
            Eigen::LLT<MatrixXd> llt(xtx);
            if (llt.info() != Eigen::Success)
                throw singular_capacitance("precompute: X^T X is not positive definite");
            xtx_ = xtx;
            xtx_inv_xt_ = llt.solve(dataset.X().transpose());
        }
        // Capacitance S = C^{-1} - a^{-1} U^T U; M SPD iff S SPD (a > 0).
        MatrixXd cinv = MatrixXd::Zero(p_ + 1, p_ + 1);
        cinv(0, 0) = 1.0 / vartheta_;
        if (p_ > 0) cinv.bottomRightCorner(p_, p_) = xtx_;
        MatrixXd S = cinv - (U_.transpose() * U_) / a;
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        if (es.eigenvalues().minCoeff() <= 1e-12 * scale)
            throw singular_capacitance("precompute: [1 X] is numerically rank deficient");
        cap_llt_.compute(S);
        if (cap_llt_.info() != Eigen::Success)
            throw singular_capacitance("precompute: capacitance factorization failed");
    }

    Index n() const { return n_; }
    Index p() const { return p_; }
    double vartheta() const { return vartheta_; }

    // M^{-1} v = v/a + a^{-2} U S^{-1} U^T v
    VectorXd solve(const VectorXd& v) const {
        if (v.size() != n_) throw dimension_mismatch("SolverWorkspace::solve: wrong length");
        VectorXd w = cap_llt_.solve(U_.transpose() * v);
        return v / a_ + (U_ * w) / (a_ * a_);
    }

    // Q_X v = X (X^T X)^{-1} X^T v (zero when p = 0)
    VectorXd qx_apply(const VectorXd& v) const {
        if (p_ == 0) return VectorXd::Zero(n_);
        return U_.rightCols(p_) * (xtx_inv_xt_ * v);
    }

    VectorXd beta_from_mu(const VectorXd& y, const VectorXd& mu) const {
        if (p_ == 0) return VectorXd(0);
        return xtx_inv_xt_ * (y - mu);
    }

private:
    Index n_;
    Index p_;
    double vartheta_;
    double a_;
    MatrixXd U_;            // [1 X]
    MatrixXd xtx_;          // X^T X
    MatrixXd xtx_inv_xt_;   // (X^T X)^{-1} X^T
    Eigen::LLT<MatrixXd> cap_llt_;
};

inline SolverWorkspace precompute(const Dataset& dataset, const SolverConfig& config) {
    return SolverWorkspace(dataset, config);
}

// mu = M^{-1} {(I - Q_X) y + vartheta Delta^T (eta - vartheta^{-1} upsilon)};
// beta = (X^T X)^{-1} X^T (y - mu).
inline std::pair<VectorXd, VectorXd> update_mu_beta(const SolverWorkspace& ws,
                                                    const VectorXd& y,
                                                    const VectorXd& eta,
                                                    const VectorXd& upsilon) {
    const Index n = ws.n();
    if (y.size() != n || eta.size() != pair_count(n) || upsilon.size() != pair_count(n))
        throw dimension_mismatch("update_mu_beta: shape mismatch");
    const VectorXd rhs = y - ws.qx_apply(y) + delta_t_apply(ws.vartheta() * eta - upsilon, n);
    VectorXd mu = ws.solve(rhs);
    VectorXd beta = ws.beta_from_mu(y, mu);
    return {std::move(mu), std::move(beta)};
}

// Per-pair prox applied at delta_ij = mu_i - mu_j + upsilon_ij / vartheta.
// `weights` is used only by WeightedL1; `prev_eta` only by TruncatedL1.
inline VectorXd update_eta(const VectorXd& mu, const VectorXd& upsilon,
                           const PenaltySpec& spec, const SolverConfig& config,
                           const VectorXd& prev_eta, const VectorXd& weights = VectorXd()) {
    const Index n = mu.size();
    const Index m = pair_count(n);
    if (upsilon.size() != m) throw dimension_mismatch("update_eta: upsilon shape mismatch");
    const bool weighted = spec.family == PenaltyFamily::WeightedL1;
    const bool truncated = spec.family == PenaltyFamily::TruncatedL1;
    if (weighted && weights.size() != m) throw dimension_mismatch("update_eta: weights shape mismatch");
    if (truncated && prev_eta.size() != m) throw dimension_mismatch("update_eta: prev_eta shape mismatch");
    const double th = config.vartheta;
    VectorXd eta(m);
    Index idx = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j, ++idx) {
            const double delta = mu[i] - mu[j] + upsilon[idx] / th;
            eta[idx] = prox_eta(delta, spec, th,
                                weighted ? weights[idx] : 1.0,
                                truncated ? prev_eta[idx] : 0.0);
        }
    }
    return eta;
}

// upsilon_ij <- upsilon_ij + vartheta (mu_i - mu_j - eta_ij)
inline VectorXd update_upsilon(const VectorXd& upsilon, const VectorXd& mu,
                               const VectorXd& eta, const SolverConfig& config) {
    const Index n = mu.size();
    if (upsilon.size() != pair_count(n) || eta.size() != pair_count(n))
        throw dimension_mismatch("update_upsilon: shape mismatch");
    VectorXd out(upsilon.size());
    Index idx = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j, ++idx)
            out[idx] = upsilon[idx] + config.vartheta * (mu[i] - mu[j] - eta[idx]);
    return out;
}

// r = Delta mu - eta; s = vartheta Delta^T (eta - eta_prev)
inline std::pair<double, double> residual_norms(const VectorXd& mu, const VectorXd& eta,
                                                const VectorXd& eta_prev,
                                                const SolverConfig& config) {
    const Index n = mu.size();
    if (eta.size() != pair_count(n) || eta_prev.size() != pair_count(n))
        throw dimension_mismatch("residual_norms: shape mismatch");
    const double primal = (delta_apply(mu) - eta).norm();
    const double dual = delta_t_apply(config.vartheta * (eta - eta_prev), n).norm();
    return {primal, dual};
}

// Q_n(mu, beta; lambda): half the residual sum of squares plus the pairwise
// penalty.  Weighted L1 carries the Gaussian-kernel weights on |y_i - y_j|.
inline double objective_value(const Dataset& dataset, const VectorXd& mu,
                              const VectorXd& beta, const PenaltySpec& spec) {
    const Index n = dataset.n();
    VectorXd resid = dataset.y() - mu;
    if (dataset.p() > 0) resid -= dataset.X() * beta;
    double value = 0.5 * resid.squaredNorm();
    detail::KahanAccumulator pen;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double w = spec.family == PenaltyFamily::WeightedL1
                                 ? l1_weight(dataset.y()[i], dataset.y()[j], spec.phi)
                                 : 1.0;
            pen.add(penalty_value(spec, std::abs(mu[i] - mu[j]), w));
        }
    }
    return value + pen.sum;
}

// ---------------------------------------------------------------------------
// fit: the full ADMM loop.  Initialization is pooled OLS with a common
// intercept (beta^0), mu^0 = y - X beta^0, eta^0 = Delta mu^0, upsilon^0 = 0;
// a warm start replaces Step 1.  Stops when the primal residual norm drops
// below tol and the dual residual below 10x tol (when recorded); hitting
// max_iter returns converged = false, not an error.
// ---------------------------------------------------------------------------

inline FusionFit fit(const Dataset& dataset, const PenaltySpec& spec,
                     const SolverConfig& config,
                     const std::optional<FusionFit>& init = std::nullopt) {
    config.validate();
    spec.validate(config.vartheta);
    const Index n = dataset.n();
    const Index p = dataset.p();
    const Index m = pair_count(n);
    const double tol = config.resolved_tol(n);
    const SolverWorkspace ws(dataset, config);
    const VectorXd& y = dataset.y();

    VectorXd mu, beta, eta, upsilon;
    if (init) {
        if (init->mu.size() != n || init->eta.size() != m || init->upsilon.size() != m)
            throw dimension_mismatch("fit: warm start has wrong shapes");
        mu = init->mu;
        beta = init->beta;
        eta = init->eta;
        upsilon = init->upsilon;
    } else {
        VectorXd beta0(p);
        if (p > 0) {
            MatrixXd W(n, p + 1);
            W.col(0).setOnes();
            W.rightCols(p) = dataset.X();
            VectorXd coef = W.colPivHouseholderQr().solve(y);
            beta0 = coef.tail(p);
        }
        beta = beta0;
        mu = p > 0 ? VectorXd(y - dataset.X() * beta0) : y;
        eta = delta_apply(mu);
        upsilon = VectorXd::Zero(m);
    }

    VectorXd weights;
    if (spec.family == PenaltyFamily::WeightedL1) {
        weights.resize(m);
        Index idx = 0;
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j, ++idx)
                weights[idx] = l1_weight(y[i], y[j], spec.phi);
    }

    FusionFit result;
    result.lambda = spec.lambda;
    result.primal_history.reserve(static_cast<size_t>(config.max_iter));
    const double th = config.vartheta;

    for (int m_iter = 1; m_iter <= config.max_iter; ++m_iter) {
        auto [mu_next, beta_next] = update_mu_beta(ws, y, eta, upsilon);
        mu = std::move(mu_next);
        beta = std::move(beta_next);
        const VectorXd dmu = delta_apply(mu);
        VectorXd eta_next(m);
        for (Index idx = 0; idx < m; ++idx) {
            const double delta = dmu[idx] + upsilon[idx] / th;
            eta_next[idx] = prox_eta(delta, spec, th,
                                     weights.size() ? weights[idx] : 1.0,
                                     eta[idx]);
        }
        upsilon += th * (dmu - eta_next);
        const double primal = (dmu - eta_next).norm();
        double dual = 0.0;
        if (config.record_dual)
            dual = delta_t_apply(th * (eta_next - eta), n).norm();
        eta = std::move(eta_next);
        result.iters = m_iter;
        result.primal_residual_norm = primal;
        result.dual_residual_norm = dual;
        result.primal_history.push_back(primal);
        // Dual feasibility guards against declaring convergence right after a
        // warm start, where eta jumps to the new lambda's thresholds and the
        // mu-update is one step stale.  The final iterate must also be the
        // best of the recent primal history (divergence guard).
        const bool dual_ok = !config.record_dual || dual < 10.0 * tol;
        bool recent_min = true;
        const size_t lookback = std::min<size_t>(10, result.primal_history.size());
        for (size_t k = result.primal_history.size() - lookback;
             k < result.primal_history.size(); ++k)
            recent_min = recent_min && primal <= result.primal_history[k];
        if (primal < tol && dual_ok && recent_min) {
            result.converged = true;
            break;
        }
    }

    result.mu = std::move(mu);
    result.beta = std::move(beta);
    result.eta = std::move(eta);
    result.upsilon = std::move(upsilon);
    return result;
}

} // namespace subfuse
