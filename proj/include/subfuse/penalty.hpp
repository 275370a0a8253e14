#pragma once

#include <algorithm>
#include <cmath>

#include "subfuse/core.hpp"
#include "subfuse/errors.hpp"

namespace subfuse {

// sign(t) * (|t| - lambda)_+
inline double soft_threshold(double t, double lambda) {
    if (t > lambda) return t - lambda;
    if (t < -lambda) return t + lambda;
    return 0.0;
}

// Gaussian-kernel pair weight exp(-phi (y_i - y_j)^2); phi = 0 gives the
// plain Lasso weight 1.
inline double l1_weight(double y_i, double y_j, double phi) {
    const double d = y_i - y_j;
    return std::exp(-phi * d * d);
}

// Penalty value p(t, lambda) for t >= 0, closed piecewise forms.
// `weight` only matters for WeightedL1 (it is omega_ij).
inline double penalty_value(const PenaltySpec& spec, double t, double weight = 1.0) {
    const double lambda = spec.lambda;
    const double gamma = spec.gamma;
    switch (spec.family) {
        case PenaltyFamily::L1:
            return lambda * t;
        case PenaltyFamily::WeightedL1:
            return lambda * weight * t;
        case PenaltyFamily::MCP:
            if (!(gamma > 1)) throw invalid_shape_parameter("MCP penalty_value: gamma must be > 1");
            if (t <= gamma * lambda) return lambda * t - t * t / (2.0 * gamma);
            return gamma * lambda * lambda / 2.0;
        case PenaltyFamily::SCAD:
            if (!(gamma > 2)) throw invalid_shape_parameter("SCAD penalty_value: gamma must be > 2");
            if (t <= lambda) return lambda * t;
            if (t <= gamma * lambda)
                return (gamma * lambda * t - (t * t + lambda * lambda) / 2.0) / (gamma - 1.0);
            return lambda * lambda * (gamma + 1.0) / 2.0;
        case PenaltyFamily::TruncatedL1:
            return lambda * std::min(t, spec.tau);
    }
    return 0.0;
}

// Scalar minimizer input for (vartheta/2)(delta - eta)^2 + p(|eta|, lambda).
struct ThresholdInput {
    double delta = 0.0;
    double lambda = 0.0;
    double vartheta = 1.0;
    double gamma = 0.0;
    double tau = 1.0;
    double weight = 1.0;    // omega_ij, WeightedL1 only
    double prev_eta = 0.0;  // eta_ij^(m), TruncatedL1 only
};

inline double prox_eta(const ThresholdInput& in, PenaltyFamily family) {
    const double d = in.delta;
    const double lam = in.lambda;
    const double th = in.vartheta;
    const double g = in.gamma;
    switch (family) {
        case PenaltyFamily::L1:
            return soft_threshold(d, lam / th);
        case PenaltyFamily::WeightedL1:
            return soft_threshold(d, in.weight * lam / th);
        case PenaltyFamily::MCP: {
            if (!(g > 1.0 / th)) throw invalid_shape_parameter("MCP prox: gamma must be > 1/vartheta");
            if (std::abs(d) > g * lam) return d;
            return soft_threshold(d, lam / th) / (1.0 - 1.0 / (g * th));
        }
        case PenaltyFamily::SCAD: {
            if (!(g > 1.0 / th + 1.0))
                throw invalid_shape_parameter("SCAD prox: gamma must be > 1/vartheta + 1");
            const double ad = std::abs(d);
            if (ad <= lam + lam / th) return soft_threshold(d, lam / th);
            if (ad <= g * lam)
                return soft_threshold(d, g * lam / ((g - 1.0) * th)) /
                       (1.0 - 1.0 / ((g - 1.0) * th));
            return d;
        }
        case PenaltyFamily::TruncatedL1: {
            // One DC-majorization step, keyed on the previous eta iterate.
            if (!(in.tau > 0)) throw invalid_shape_parameter("TruncatedL1 prox: tau must be > 0");
            if (std::abs(in.prev_eta) >= in.tau) return d;
            return soft_threshold(d, lam / th);
        }
    }
    return 0.0;
}

inline double prox_eta(double delta, const PenaltySpec& spec, double vartheta,
                       double weight = 1.0, double prev_eta = 0.0) {
    ThresholdInput in;
    in.delta = delta;
    in.lambda = spec.lambda;
    in.vartheta = vartheta;
    in.gamma = spec.gamma;
    in.tau = spec.tau;
    in.weight = weight;
    in.prev_eta = prev_eta;
    return prox_eta(in, spec.family);
}

} // namespace subfuse
