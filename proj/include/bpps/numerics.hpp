#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace bpps {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when a linear-algebra step cannot be repaired.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Seed derivation
// ---------------------------------------------------------------------------

/// splitmix64 step; used to derive child seeds from a parent seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Derive a child seed from (parent, tag). Tags are small integers such as
/// strategy index, date index, chain index. Derivation is associative-free:
/// derive(derive(s, a), b) != derive(derive(s, b), a).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag);

/// The RNG used everywhere. 64-bit Mersenne twister seeded explicitly.
using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Scalar distributions
// ---------------------------------------------------------------------------

/// Inverse standard normal CDF (Acklam's rational approximation refined by
/// one Halley step; |error| < 1e-12 over (0,1)).
double norm_quantile(double p);

/// Standard normal density.
double norm_pdf(double x);

// ---------------------------------------------------------------------------
// Matrix helpers
// ---------------------------------------------------------------------------

/// (A + A^T)/2
Matrix symmetrize(const Matrix& a);

/// True if `a` is symmetric positive-definite (Cholesky succeeds).
bool is_spd(const Matrix& a);

/// Symmetrize and, if Cholesky fails, add jitter*I (doubling up to a few
/// times). Returns the repaired matrix; increments *repairs when a repair
/// was needed. Throws NumericalError if the matrix cannot be repaired.
Matrix repair_spd(const Matrix& a, double jitter = 1e-10, long* repairs = nullptr);

/// Lower Cholesky factor with jitter repair.
Matrix chol_lower(const Matrix& a, long* repairs = nullptr);

// ---------------------------------------------------------------------------
// Random vectors / matrices
// ---------------------------------------------------------------------------

/// Draw from N(mean, cov). `chol` is the lower Cholesky factor of cov.
Vector mvn_sample(const Vector& mean, const Matrix& chol, Rng& rng);

/// Draw W ~ Wishart(dof, scale) via Bartlett decomposition; dof may be any
/// real > dim - 1. scale is the (symmetric positive-definite) scale matrix.
Matrix wishart_sample(double dof, const Matrix& scale, Rng& rng);

/// Draw V ~ InverseWishart(dof, psi), density proportional to
/// |V|^{-(dof+d+1)/2} exp(-tr(psi V^{-1})/2). Requires dof > d - 1.
Matrix inverse_wishart_sample(double dof, const Matrix& psi, Rng& rng);

/// Draw from a flat Dirichlet(1,...,1) on the K-simplex.
Vector dirichlet_uniform(int k, Rng& rng);

}  // namespace bpps
