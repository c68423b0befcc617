#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qfdiv {

// Relative Frobenius tolerance accepted when symmetrizing input matrices.
inline constexpr double kHermitianTol = 1e-12;
// Relative spectral cutoff separating kernel from support.
inline constexpr double kSupportCutoff = 1e-10;
// PSD acceptance: lowest eigenvalue may undershoot zero by this relative amount.
inline constexpr double kPsdSlack = 1e-10;

// Raised when an iterative numeric routine fails or produces inconsistent
// output; callers surface it as a numeric-failure diagnostic.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Square complex matrix kept exactly Hermitian: construction verifies
// ||A - A*||_F <= 1e-12 * max(1, ||A||_F) and stores (A + A*)/2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Eigen::MatrixXcd& a);

  static HermitianMatrix zero(int dim);
  static HermitianMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& mat() const { return m_; }
  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.norm(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  Eigen::MatrixXcd m_;
};

// Eigensystem of a Hermitian matrix: eigenvalues descending, eigenvector
// columns orthonormal, A = V diag(lambda) V*.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

// Cyclic complex Jacobi diagonalization. Converges when the off-diagonal
// Frobenius mass drops below 1e-13 * ||A||_F; throws NumericError after 100
// sweeps without convergence.
Spectrum eig_hermitian(const HermitianMatrix& a);

// U g(diag) U* over the spectrum of a. g must return finite values on every
// eigenvalue encountered.
HermitianMatrix matrix_function(const HermitianMatrix& a,
                                const std::function<double(double)>& g);

// (sqrt(A), pseudo-inverse sqrt). Eigenvalues at or below cutoff * lambda_max
// are treated as kernel in the inverse branch. Rejects matrices whose lowest
// eigenvalue undershoots zero by more than the PSD slack.
std::pair<HermitianMatrix, HermitianMatrix> sqrt_and_pinv_sqrt(
    const HermitianMatrix& a, double cutoff = kSupportCutoff);

// Orthogonal projection onto the span of eigenvectors with
// lambda > cutoff * lambda_max; the zero matrix maps to the zero projection.
HermitianMatrix support_projection(const HermitianMatrix& a,
                                   double cutoff = kSupportCutoff);

// Index partition of {0, ..., dim-1}; blocks are disjoint and cover.
using Partition = std::vector<std::vector<int>>;

// Zeroes every entry whose row and column indices lie in different blocks.
// Trace preserving, unital, positivity preserving, idempotent.
HermitianMatrix pinch(const HermitianMatrix& a, const Partition& partition);

// Validates that partition is a disjoint cover of {0, ..., dim-1}.
void validate_partition(const Partition& partition, int dim);

// True if refined is a refinement of coarse (every refined block is contained
// in one coarse block).
bool refines(const Partition& refined, const Partition& coarse);

// Block-diagonal direct sum.
HermitianMatrix direct_sum(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace qfdiv
