#include "qfdiv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qfdiv {

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("HermitianMatrix: matrix must be square and nonempty");
  }
  const double defect = (a - a.adjoint()).norm();
  if (defect > kHermitianTol * std::max(1.0, a.norm())) {
    throw std::invalid_argument("HermitianMatrix: input is not Hermitian within tolerance");
  }
  m_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(Eigen::MatrixXcd::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ - b.m_);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(s * a.m_);
}

namespace {

double offdiag_norm(const Eigen::MatrixXcd& m) {
  double sum = 0.0;
  const int n = static_cast<int>(m.rows());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) sum += 2.0 * std::norm(m(p, q));
  }
  return std::sqrt(sum);
}

}  // namespace

Spectrum eig_hermitian(const HermitianMatrix& a) {
  const int n = a.dim();
  Eigen::MatrixXcd m = a.mat();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  const double scale = m.norm();
  const double target = 1e-13 * scale;

  bool converged = false;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (offdiag_norm(m) <= target) {
      converged = true;
      break;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const std::complex<double> apq = m(p, q);
        const double absb = std::abs(apq);
        if (absb <= 1e-290) {
          m(p, q) = 0.0;
          m(q, p) = 0.0;
          continue;
        }
        const std::complex<double> phase = apq / absb;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        // Real Jacobi angle for the 2x2 block [[app, |apq|], [|apq|, aqq]].
        const double tau = (aqq - app) / (2.0 * absb);
        double t;
        if (tau >= 0.0) {
          t = 1.0 / (tau + std::sqrt(tau * tau + 1.0));
        } else {
          t = -1.0 / (-tau + std::sqrt(tau * tau + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Unitary rotation columns: (c, -s e^{-i arg}) and (s e^{i arg}, c).
        const std::complex<double> sp = s * phase;
        const std::complex<double> spc = s * std::conj(phase);
        Eigen::VectorXcd colp = m.col(p);
        Eigen::VectorXcd colq = m.col(q);
        m.col(p) = c * colp - spc * colq;
        m.col(q) = sp * colp + c * colq;
        Eigen::RowVectorXcd rowp = m.row(p);
        Eigen::RowVectorXcd rowq = m.row(q);
        m.row(p) = c * rowp - sp * rowq;
        m.row(q) = spc * rowp + c * rowq;
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        colp = u.col(p);
        colq = u.col(q);
        u.col(p) = c * colp - spc * colq;
        u.col(q) = sp * colp + c * colq;
      }
    }
  }
  if (!converged && offdiag_norm(m) > target) {
    throw NumericError("eig_hermitian: Jacobi sweeps did not converge");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = m(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return diag[i] > diag[j]; });

  Spectrum spec;
  spec.eigenvalues.resize(n);
  spec.eigenvectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    spec.eigenvalues(i) = diag[order[i]];
    spec.eigenvectors.col(i) = u.col(order[i]);
  }
  return spec;
}

HermitianMatrix matrix_function(const HermitianMatrix& a,
                                const std::function<double(double)>& g) {
  const Spectrum spec = eig_hermitian(a);
  const int n = a.dim();
  Eigen::VectorXd vals(n);
  for (int i = 0; i < n; ++i) {
    const double v = g(spec.eigenvalues(i));
    if (!std::isfinite(v)) {
      throw std::domain_error("matrix_function: function value is not finite on the spectrum");
    }
    vals(i) = v;
  }
  Eigen::MatrixXcd out = spec.eigenvectors * vals.asDiagonal() *
                         spec.eigenvectors.adjoint();
  return HermitianMatrix(out);
}

namespace {

void require_psd(const Eigen::VectorXd& eigenvalues, const char* who) {
  const double top = std::max(std::abs(eigenvalues(0)),
                              std::abs(eigenvalues(eigenvalues.size() - 1)));
  const double lo = eigenvalues(eigenvalues.size() - 1);
  if (lo < -kPsdSlack * std::max(1e-300, top)) {
    throw std::invalid_argument(std::string(who) + ": matrix is not positive semidefinite");
  }
}

}  // namespace

std::pair<HermitianMatrix, HermitianMatrix> sqrt_and_pinv_sqrt(
    const HermitianMatrix& a, double cutoff) {
  const Spectrum spec = eig_hermitian(a);
  require_psd(spec.eigenvalues, "sqrt_and_pinv_sqrt");
  const int n = a.dim();
  const double lmax = std::max(0.0, spec.eigenvalues(0));
  const double threshold = cutoff * lmax;
  Eigen::VectorXd root(n), invroot(n);
  for (int i = 0; i < n; ++i) {
    const double l = spec.eigenvalues(i);
    root(i) = l > 0.0 ? std::sqrt(l) : 0.0;
    invroot(i) = l > threshold ? 1.0 / std::sqrt(l) : 0.0;
  }
  const Eigen::MatrixXcd& v = spec.eigenvectors;
  return {HermitianMatrix(v * root.asDiagonal() * v.adjoint()),
          HermitianMatrix(v * invroot.asDiagonal() * v.adjoint())};
}

HermitianMatrix support_projection(const HermitianMatrix& a, double cutoff) {
  const Spectrum spec = eig_hermitian(a);
  require_psd(spec.eigenvalues, "support_projection");
  const int n = a.dim();
  const double lmax = std::max(0.0, spec.eigenvalues(0));
  const double threshold = cutoff * lmax;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (spec.eigenvalues(i) > threshold && spec.eigenvalues(i) > 0.0) {
      p += spec.eigenvectors.col(i) * spec.eigenvectors.col(i).adjoint();
    }
  }
  return HermitianMatrix(p);
}

void validate_partition(const Partition& partition, int dim) {
  std::vector<bool> seen(dim, false);
  int count = 0;
  for (const auto& block : partition) {
    if (block.empty()) throw std::invalid_argument("partition: empty block");
    for (int idx : block) {
      if (idx < 0 || idx >= dim) throw std::invalid_argument("partition: index out of range");
      if (seen[idx]) throw std::invalid_argument("partition: repeated index");
      seen[idx] = true;
      ++count;
    }
  }
  if (count != dim) throw std::invalid_argument("partition: does not cover all indices");
}

bool refines(const Partition& refined, const Partition& coarse) {
  for (const auto& rb : refined) {
    bool contained = false;
    for (const auto& cb : coarse) {
      bool all = true;
      for (int idx : rb) {
        if (std::find(cb.begin(), cb.end(), idx) == cb.end()) {
          all = false;
          break;
        }
      }
      if (all) {
        contained = true;
        break;
      }
    }
    if (!contained) return false;
  }
  return true;
}

HermitianMatrix pinch(const HermitianMatrix& a, const Partition& partition) {
  const int n = a.dim();
  validate_partition(partition, n);
  std::vector<int> block_of(n, -1);
  for (int b = 0; b < static_cast<int>(partition.size()); ++b) {
    for (int idx : partition[b]) block_of[idx] = b;
  }
  Eigen::MatrixXcd out = a.mat();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (block_of[i] != block_of[j]) out(i, j) = 0.0;
    }
  }
  return HermitianMatrix(out);
}

HermitianMatrix direct_sum(const HermitianMatrix& a, const HermitianMatrix& b) {
  const int na = a.dim();
  const int nb = b.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(na + nb, na + nb);
  out.topLeftCorner(na, na) = a.mat();
  out.bottomRightCorner(nb, nb) = b.mat();
  return HermitianMatrix(out);
}

}  // namespace qfdiv
