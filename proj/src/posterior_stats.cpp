#include "bpps/posterior_stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bpps {

Vector portfolio_samples(const PosteriorPredictive& pp, const Vector& w) {
    if (w.size() != pp.num_assets()) {
        throw std::invalid_argument("portfolio_samples: weight/asset dimension mismatch");
    }
    return pp.samples * w;
}

Moments moments(const PosteriorPredictive& pp) {
    const Eigen::Index s = pp.num_draws();
    if (s < 2) throw std::invalid_argument("moments: need at least 2 draws");
    Moments m;
    m.mean = pp.samples.colwise().mean();
    Matrix centered = pp.samples.rowwise() - m.mean.transpose();
    m.cov = symmetrize(centered.transpose() * centered / static_cast<double>(s - 1));
    return m;
}

double empirical_quantile(const Vector& samples, double prob) {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw std::invalid_argument("empirical_quantile: prob must be in (0,1)");
    }
    const Eigen::Index s = samples.size();
    if (s == 0) throw std::invalid_argument("empirical_quantile: empty sample set");
    // 1-based order statistic at ceil(prob * S).
    Eigen::Index rank = static_cast<Eigen::Index>(std::ceil(prob * static_cast<double>(s)));
    rank = std::clamp<Eigen::Index>(rank, 1, s);
    std::vector<double> v(samples.data(), samples.data() + s);
    std::nth_element(v.begin(), v.begin() + (rank - 1), v.end());
    return v[rank - 1];
}

double upper_tail_mean(const Vector& samples, double prob) {
    double q = empirical_quantile(samples, prob);
    double sum = 0.0;
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < samples.size(); ++i) {
        if (samples[i] >= q) {
            sum += samples[i];
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

double var_loss(const PosteriorPredictive& pp, const Vector& w, double beta) {
    return empirical_quantile(-portfolio_samples(pp, w), beta);
}

double cvar_loss(const PosteriorPredictive& pp, const Vector& w, double beta) {
    return upper_tail_mean(-portfolio_samples(pp, w), beta);
}

double vor(const PosteriorPredictive& pp, const Vector& w, double alpha) {
    return empirical_quantile(portfolio_samples(pp, w), alpha);
}

double cvor(const PosteriorPredictive& pp, const Vector& w, double alpha) {
    return upper_tail_mean(portfolio_samples(pp, w), alpha);
}

double q_alpha(QuantileMode mode, double alpha) {
    double z = norm_quantile(alpha);
    if (mode == QuantileMode::Var) return z;
    return std::exp(-0.5 * z * z) / ((1.0 - alpha) * std::sqrt(2.0 * M_PI));
}

}  // namespace bpps
