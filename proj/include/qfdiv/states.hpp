#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qfdiv/linalg.hpp"

namespace qfdiv {

// Positive functional on the matrix algebra, represented by its density.
// Construction eigendecomposes once, clamps kernel-level eigenvalues to exact
// zero, and caches trace, spectrum, and support for reuse.
class PositiveFunctional {
 public:
  explicit PositiveFunctional(const HermitianMatrix& density,
                              double support_cutoff = kSupportCutoff);

  int dim() const { return density_.dim(); }
  const HermitianMatrix& density() const { return density_; }
  double trace() const { return trace_; }
  const HermitianMatrix& support() const { return support_; }
  const Spectrum& spectrum() const { return spectrum_; }
  int rank() const { return rank_; }

 private:
  HermitianMatrix density_;
  double trace_;
  HermitianMatrix support_;
  Spectrum spectrum_;
  int rank_;
};

// Quantum channel described through its predual action on densities.
class Channel {
 public:
  enum class Kind { kraus, pinching, compression, subalgebra_restriction };

  // Operators K_i of shape dim_out x dim_in with sum K_i* K_i = I.
  static Channel kraus(std::vector<Eigen::MatrixXcd> ops);
  static Channel pinching(Partition partition);
  static Channel compression(std::vector<int> indices);
  static Channel subalgebra_restriction(Partition partition);

  Kind kind() const { return kind_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }

  // Trace-preserving positive action x |-> x o Phi on densities; compression
  // truncates the trace to the selected corner.
  PositiveFunctional apply_predual(const PositiveFunctional& x) const;

 private:
  Channel(Kind kind, int dim_in, int dim_out)
      : kind_(kind), dim_in_(dim_in), dim_out_(dim_out) {}

  Kind kind_;
  int dim_in_;
  int dim_out_;
  std::vector<Eigen::MatrixXcd> kraus_;
  Partition partition_;
  std::vector<int> indices_;
};

// Seeded random density: rank-controlled Wishart draw normalized to trace 1.
PositiveFunctional random_density(int dim, int rank, std::uint64_t seed);

// Seeded random Kraus channel dim_in -> dim_out with n_kraus operators.
Channel random_channel(int dim_in, int dim_out, int n_kraus, std::uint64_t seed);

// Seeded random unitary: QR of a Gaussian matrix, phases fixed so the
// triangular factor has a positive diagonal (makes the draw unique).
Eigen::MatrixXcd random_unitary(int dim, std::uint64_t seed);

// Frobenius commutator test, relative to the operand norms.
bool commutes(const PositiveFunctional& a, const PositiveFunctional& b,
              double tol = 1e-10);

// Least alpha with rho <= alpha sigma when the supports allow one.
std::optional<double> dominance_alpha(const PositiveFunctional& rho,
                                      const PositiveFunctional& sigma);

// Entrywise transpose of the density; positive but not completely positive
// as a map, used to stress monotonicity beyond CPTP channels.
PositiveFunctional transpose_density(const PositiveFunctional& x);

// Spectral atom of the contraction operator: position t in [0, 1] with mass
// w = <v, (rho+sigma) v> >= 0.
struct SpectralAtom {
  double t;
  double weight;
};

// Joint spectral data of a pair: eta = rho + sigma, the contraction
// G = eta^{-1/2} rho eta^{-1/2} with eigenvalues clamped into [0, 1], and the
// per-eigenvector masses against eta. Built once and shared by the
// divergence and reverse-test engines.
class PairContext {
 public:
  PairContext(const PositiveFunctional& rho, const PositiveFunctional& sigma);

  const PositiveFunctional& rho() const { return rho_; }
  const PositiveFunctional& sigma() const { return sigma_; }
  const PositiveFunctional& eta() const { return eta_; }
  const HermitianMatrix& eta_sqrt() const { return eta_sqrt_; }
  const HermitianMatrix& contraction() const { return g_; }
  const Spectrum& contraction_spectrum() const { return g_spectrum_; }
  const std::vector<SpectralAtom>& atoms() const { return atoms_; }

 private:
  PositiveFunctional rho_;
  PositiveFunctional sigma_;
  PositiveFunctional eta_;
  HermitianMatrix eta_sqrt_;
  HermitianMatrix g_;
  Spectrum g_spectrum_;
  std::vector<SpectralAtom> atoms_;
};

}  // namespace qfdiv
