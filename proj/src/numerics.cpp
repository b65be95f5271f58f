#include "bpps/numerics.hpp"

#include <cmath>

namespace bpps {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
    return splitmix64(parent ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

double norm_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("norm_quantile: p must be in (0,1)");
    }
    // Acklam's approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Halley refinement against erfc.
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

bool is_spd(const Matrix& a) {
    if (a.rows() != a.cols()) return false;
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + a.cwiseAbs().maxCoeff()))
        return false;
    Eigen::LLT<Matrix> llt(a);
    return llt.info() == Eigen::Success;
}

Matrix repair_spd(const Matrix& a, double jitter, long* repairs) {
    Matrix s = symmetrize(a);
    Eigen::LLT<Matrix> llt(s);
    if (llt.info() == Eigen::Success) return s;
    double j = jitter;
    const Matrix eye = Matrix::Identity(s.rows(), s.cols());
    for (int attempt = 0; attempt < 30; ++attempt) {
        Matrix trial = s + j * eye;
        llt.compute(trial);
        if (llt.info() == Eigen::Success) {
            if (repairs) ++(*repairs);
            return trial;
        }
        j *= 10.0;
    }
    throw NumericalError("repair_spd: matrix not repairable to positive-definite");
}

Matrix chol_lower(const Matrix& a, long* repairs) {
    Eigen::LLT<Matrix> llt(symmetrize(a));
    if (llt.info() == Eigen::Success) return llt.matrixL();
    Matrix fixed = repair_spd(a, 1e-10, repairs);
    llt.compute(fixed);
    return llt.matrixL();
}

Vector mvn_sample(const Vector& mean, const Matrix& chol, Rng& rng) {
    std::normal_distribution<double> n01;
    Vector z(mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = n01(rng);
    return mean + chol * z;
}

Matrix wishart_sample(double dof, const Matrix& scale, Rng& rng) {
    const Eigen::Index d = scale.rows();
    if (!(dof > static_cast<double>(d) - 1.0)) {
        throw std::invalid_argument("wishart_sample: dof must exceed dim-1");
    }
    Matrix l = chol_lower(scale);
    std::normal_distribution<double> n01;
    Matrix a = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        std::chi_squared_distribution<double> chi(dof - static_cast<double>(i));
        a(i, i) = std::sqrt(chi(rng));
        for (Eigen::Index j = 0; j < i; ++j) a(i, j) = n01(rng);
    }
    Matrix la = l * a;
    return la * la.transpose();
}

Matrix inverse_wishart_sample(double dof, const Matrix& psi, Rng& rng) {
    // V^{-1} ~ Wishart(dof, psi^{-1})
    Matrix psi_inv = psi.llt().solve(Matrix::Identity(psi.rows(), psi.cols()));
    Matrix w = wishart_sample(dof, symmetrize(psi_inv), rng);
    Matrix v = w.llt().solve(Matrix::Identity(w.rows(), w.cols()));
    return symmetrize(v);
}

Vector dirichlet_uniform(int k, Rng& rng) {
    std::exponential_distribution<double> exp1(1.0);
    Vector g(k);
    for (int i = 0; i < k; ++i) g[i] = exp1(rng);
    double s = g.sum();
    if (s <= 0.0) return Vector::Constant(k, 1.0 / k);
    return g / s;
}

}  // namespace bpps
