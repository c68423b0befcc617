#include "qfdiv/states.hpp"

#include <algorithm>
#include <cmath>

#include "qfdiv/rng.hpp"

namespace qfdiv {

PositiveFunctional::PositiveFunctional(const HermitianMatrix& density,
                                       double support_cutoff)
    : density_(density), trace_(0.0), support_(HermitianMatrix::zero(density.dim())),
      rank_(0) {
  Spectrum spec = eig_hermitian(density);
  const int n = density.dim();
  const double lmax = spec.eigenvalues(0);
  const double scale = std::max(std::abs(lmax), std::abs(spec.eigenvalues(n - 1)));
  if (spec.eigenvalues(n - 1) < -kPsdSlack * std::max(1e-300, scale)) {
    throw std::invalid_argument("PositiveFunctional: density is not positive semidefinite");
  }
  const double threshold = support_cutoff * std::max(0.0, lmax);
  for (int i = 0; i < n; ++i) {
    if (spec.eigenvalues(i) <= threshold) spec.eigenvalues(i) = 0.0;
  }
  Eigen::MatrixXcd supp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (spec.eigenvalues(i) > 0.0) {
      supp += spec.eigenvectors.col(i) * spec.eigenvectors.col(i).adjoint();
      ++rank_;
    }
  }
  density_ = HermitianMatrix(spec.eigenvectors * spec.eigenvalues.asDiagonal() *
                             spec.eigenvectors.adjoint());
  trace_ = spec.eigenvalues.sum();
  support_ = HermitianMatrix(supp);
  spectrum_ = std::move(spec);
}

Channel Channel::kraus(std::vector<Eigen::MatrixXcd> ops) {
  if (ops.empty()) throw std::invalid_argument("kraus: needs at least one operator");
  const int dout = static_cast<int>(ops[0].rows());
  const int din = static_cast<int>(ops[0].cols());
  if (dout == 0 || din == 0) throw std::invalid_argument("kraus: empty operator");
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(din, din);
  for (const auto& k : ops) {
    if (k.rows() != dout || k.cols() != din) {
      throw std::invalid_argument("kraus: inconsistent operator shapes");
    }
    sum += k.adjoint() * k;
  }
  const double defect = (sum - Eigen::MatrixXcd::Identity(din, din)).norm();
  if (defect > 1e-10 * std::max(1.0, std::sqrt(static_cast<double>(din)))) {
    throw std::invalid_argument("kraus: operators do not sum to the identity");
  }
  Channel ch(Kind::kraus, din, dout);
  ch.kraus_ = std::move(ops);
  return ch;
}

Channel Channel::pinching(Partition partition) {
  int dim = 0;
  for (const auto& block : partition) dim += static_cast<int>(block.size());
  validate_partition(partition, dim);
  Channel ch(Kind::pinching, dim, dim);
  ch.partition_ = std::move(partition);
  return ch;
}

Channel Channel::compression(std::vector<int> indices) {
  if (indices.empty()) throw std::invalid_argument("compression: empty index set");
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw std::invalid_argument("compression: repeated index");
  }
  if (indices.front() < 0) throw std::invalid_argument("compression: negative index");
  Channel ch(Kind::compression, 0, static_cast<int>(indices.size()));
  ch.indices_ = std::move(indices);
  return ch;
}

Channel Channel::subalgebra_restriction(Partition partition) {
  int dim = 0;
  for (const auto& block : partition) dim += static_cast<int>(block.size());
  validate_partition(partition, dim);
  Channel ch(Kind::subalgebra_restriction, dim, dim);
  ch.partition_ = std::move(partition);
  return ch;
}

PositiveFunctional Channel::apply_predual(const PositiveFunctional& x) const {
  switch (kind_) {
    case Kind::kraus: {
      if (x.dim() != dim_in_) {
        throw std::invalid_argument("apply_predual: dimension mismatch");
      }
      Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_out_, dim_out_);
      for (const auto& k : kraus_) out += k * x.density().mat() * k.adjoint();
      return PositiveFunctional(HermitianMatrix(out));
    }
    case Kind::pinching:
    case Kind::subalgebra_restriction: {
      if (x.dim() != dim_in_) {
        throw std::invalid_argument("apply_predual: dimension mismatch");
      }
      return PositiveFunctional(pinch(x.density(), partition_));
    }
    case Kind::compression: {
      const int m = static_cast<int>(indices_.size());
      if (indices_.back() >= x.dim()) {
        throw std::invalid_argument("apply_predual: index out of range");
      }
      Eigen::MatrixXcd out(m, m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) out(i, j) = x.density().mat()(indices_[i], indices_[j]);
      }
      return PositiveFunctional(HermitianMatrix(out));
    }
  }
  throw std::logic_error("apply_predual: unreachable");
}

PositiveFunctional random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw std::invalid_argument("random_density: need 1 <= rank <= dim");
  }
  RandomStream rng(seed);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < rank; ++k) {
    Eigen::VectorXcd g(dim);
    for (int i = 0; i < dim; ++i) g(i) = rng.cnormal();
    h += g * g.adjoint();
  }
  h /= h.trace().real();
  return PositiveFunctional(HermitianMatrix(h));
}

Channel random_channel(int dim_in, int dim_out, int n_kraus, std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || n_kraus < 1) {
    throw std::invalid_argument("random_channel: dimensions must be positive");
  }
  RandomStream rng(seed);
  std::vector<Eigen::MatrixXcd> ops(n_kraus);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim_in, dim_in);
  for (auto& k : ops) {
    k.resize(dim_out, dim_in);
    for (int i = 0; i < dim_out; ++i) {
      for (int j = 0; j < dim_in; ++j) k(i, j) = rng.cnormal();
    }
    sum += k.adjoint() * k;
  }
  const Spectrum spec = eig_hermitian(HermitianMatrix(sum));
  if (spec.eigenvalues(dim_in - 1) <= 1e-12 * spec.eigenvalues(0)) {
    throw NumericError("random_channel: normalization matrix is singular");
  }
  Eigen::VectorXd invroot(dim_in);
  for (int i = 0; i < dim_in; ++i) invroot(i) = 1.0 / std::sqrt(spec.eigenvalues(i));
  const Eigen::MatrixXcd t =
      spec.eigenvectors * invroot.asDiagonal() * spec.eigenvectors.adjoint();
  for (auto& k : ops) k = k * t;
  return Channel::kraus(std::move(ops));
}

Eigen::MatrixXcd random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dim must be positive");
  RandomStream rng(seed);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rng.cnormal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  return q;
}

bool commutes(const PositiveFunctional& a, const PositiveFunctional& b, double tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("commutes: dimension mismatch");
  const Eigen::MatrixXcd& x = a.density().mat();
  const Eigen::MatrixXcd& y = b.density().mat();
  const double comm = (x * y - y * x).norm();
  return comm <= tol * std::max(1.0, x.norm() * y.norm());
}

std::optional<double> dominance_alpha(const PositiveFunctional& rho,
                                      const PositiveFunctional& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("dominance_alpha: dimension mismatch");
  }
  const int n = rho.dim();
  const Eigen::MatrixXcd outside =
      (Eigen::MatrixXcd::Identity(n, n) - sigma.support().mat()) *
      rho.support().mat();
  if (outside.norm() > 1e-8) return std::nullopt;
  auto [root, invroot] = sqrt_and_pinv_sqrt(sigma.density());
  HermitianMatrix x(invroot.mat() * rho.density().mat() * invroot.mat());
  const Spectrum spec = eig_hermitian(x);
  return std::max(0.0, spec.eigenvalues(0));
}

PositiveFunctional transpose_density(const PositiveFunctional& x) {
  return PositiveFunctional(HermitianMatrix(x.density().mat().transpose()));
}

PairContext::PairContext(const PositiveFunctional& rho,
                         const PositiveFunctional& sigma)
    : rho_(rho),
      sigma_(sigma),
      eta_(rho.density() + sigma.density()),
      eta_sqrt_(HermitianMatrix::zero(rho.dim())),
      g_(HermitianMatrix::zero(rho.dim())) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("PairContext: dimension mismatch");
  }
  auto [root, invroot] = sqrt_and_pinv_sqrt(eta_.density());
  eta_sqrt_ = root;
  // The conjugation is Hermitian in exact arithmetic; symmetrize away the
  // rounding skew, which grows with the conditioning of eta.
  const Eigen::MatrixXcd conj_raw =
      invroot.mat() * rho_.density().mat() * invroot.mat();
  g_ = HermitianMatrix(0.5 * (conj_raw + conj_raw.adjoint().eval()));
  g_spectrum_ = eig_hermitian(g_);

  // Rounding noise near the endpoints is snapped onto them so boundary masses
  // stay exact spectral quantities; anything further out is inconsistent.
  constexpr double boundary_tol = 1e-9;
  const int n = rho.dim();
  atoms_.reserve(n);
  for (int i = 0; i < n; ++i) {
    double t = g_spectrum_.eigenvalues(i);
    if (t < -boundary_tol || t > 1.0 + boundary_tol) {
      throw NumericError("PairContext: contraction spectrum escapes [0, 1]");
    }
    if (t < boundary_tol) t = 0.0;
    if (t > 1.0 - boundary_tol) t = 1.0;
    g_spectrum_.eigenvalues(i) = t;
    const Eigen::VectorXcd v = g_spectrum_.eigenvectors.col(i);
    const double w = std::max(0.0, (v.adjoint() * eta_.density().mat() * v)(0).real());
    atoms_.push_back({t, w});
  }
}

}  // namespace qfdiv
