#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "bpps/numerics.hpp"

namespace bpps {

/// Equally weighted Monte Carlo draws of the next-period asset return
/// vector; one row per draw.
struct PosteriorPredictive {
    Eigen::Index period = 0;  // period the draws target
    Matrix samples;           // S x K

    Eigen::Index num_draws() const { return samples.rows(); }
    Eigen::Index num_assets() const { return samples.cols(); }
};

/// Sample mean and (symmetrized, divisor S-1) covariance of a draw set.
struct Moments {
    Vector mean;  // K
    Matrix cov;   // K x K, symmetric PSD after repair
};

/// {w^T x^(s)} for every draw.
Vector portfolio_samples(const PosteriorPredictive& pp, const Vector& w);

Moments moments(const PosteriorPredictive& pp);

/// Empirical beta-quantile (order statistic ceil(beta*S), ascending,
/// no interpolation) of the scalar sample set.
double empirical_quantile(const Vector& samples, double prob);

/// Mean of samples >= empirical_quantile(samples, prob) (inclusive tail).
double upper_tail_mean(const Vector& samples, double prob);

/// beta-quantile of the loss samples L = -w^T x.
double var_loss(const PosteriorPredictive& pp, const Vector& w, double beta);

/// Mean loss at or beyond var_loss.
double cvar_loss(const PosteriorPredictive& pp, const Vector& w, double beta);

/// alpha-quantile of the return samples.
double vor(const PosteriorPredictive& pp, const Vector& w, double alpha);

/// Mean return at or above vor (upper conditional tail).
double cvor(const PosteriorPredictive& pp, const Vector& w, double alpha);

enum class QuantileMode { Var, Cvar };

/// Gaussian tail multiplier: z_alpha for Var, exp(-z^2/2)/((1-alpha)*sqrt(2*pi))
/// for Cvar.
double q_alpha(QuantileMode mode, double alpha);

}  // namespace bpps
