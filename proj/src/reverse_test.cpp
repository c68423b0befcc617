#include "qfdiv/reverse_test.hpp"

#include <cmath>
#include <stdexcept>

#include "qfdiv/divergences.hpp"
#include "qfdiv/rng.hpp"

namespace qfdiv {

ReverseTest minimal_reverse_test(const PositiveFunctional& rho,
                                 const PositiveFunctional& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("minimal_reverse_test: dimension mismatch");
  }
  if (rho.trace() + sigma.trace() <= 0.0) {
    throw std::invalid_argument("minimal_reverse_test: zero pair");
  }
  const PairContext ctx(rho, sigma);
  ReverseTest rt;
  for (int k = 0; k < static_cast<int>(ctx.atoms().size()); ++k) {
    const double nu = ctx.atoms()[k].weight;
    if (nu <= kMassDust) continue;
    const Eigen::VectorXcd col =
        ctx.eta_sqrt().mat() * ctx.contraction_spectrum().eigenvectors.col(k);
    rt.atoms.push_back({nu, HermitianMatrix(col * col.adjoint() / nu),
                        ctx.atoms()[k].t, 1.0 - ctx.atoms()[k].t});
  }
  return rt;
}

ExtendedReal evaluate_reverse_test(const ReverseTest& rt,
                                   const OperatorConvexFunction& f) {
  std::vector<double> p, q, nu;
  p.reserve(rt.atoms.size());
  q.reserve(rt.atoms.size());
  nu.reserve(rt.atoms.size());
  for (const auto& atom : rt.atoms) {
    p.push_back(atom.p);
    q.push_back(atom.q);
    nu.push_back(atom.nu);
  }
  return classical_f_divergence(p, q, nu, f);
}

ReverseTest refine_reverse_test(const ReverseTest& rt, int splits,
                                std::uint64_t seed) {
  if (splits < 1) {
    throw std::invalid_argument("refine_reverse_test: splits must be >= 1");
  }
  if (rt.atoms.empty()) {
    throw std::invalid_argument("refine_reverse_test: empty reverse test");
  }
  ReverseTest out = rt;
  RandomStream rng(mix_seed(seed, 0x72657665));
  for (int s = 0; s < splits; ++s) {
    const std::size_t k = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(out.atoms.size()) - 1));
    ReverseTestAtom atom = out.atoms[k];
    // Mean-preserving spread bounded by the distance to zero.
    const double delta = rng.uniform(0.0, 0.9) * atom.p;
    const double gamma = rng.uniform(0.0, 0.9) * atom.q;
    ReverseTestAtom up = atom, down = atom;
    up.nu = down.nu = atom.nu / 2.0;
    up.p = atom.p + delta;
    up.q = atom.q + gamma;
    down.p = atom.p - delta;
    down.q = atom.q - gamma;
    out.atoms[k] = up;
    out.atoms.push_back(down);
  }
  return out;
}

ReverseTestCheck verify_reverse_test(const ReverseTest& rt,
                                     const PositiveFunctional& rho,
                                     const PositiveFunctional& sigma,
                                     double tol) {
  const int d = rho.dim();
  Eigen::MatrixXcd sum_p = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd sum_q = Eigen::MatrixXcd::Zero(d, d);
  double trace_p = 0.0, trace_q = 0.0;
  bool atoms_ok = true;
  for (const auto& atom : rt.atoms) {
    if (!(atom.nu >= 0.0) || !(atom.p >= 0.0) || !(atom.q >= 0.0) ||
        atom.image.dim() != d) {
      atoms_ok = false;
      continue;
    }
    sum_p += atom.nu * atom.p * atom.image.mat();
    sum_q += atom.nu * atom.q * atom.image.mat();
    trace_p += atom.nu * atom.p;
    trace_q += atom.nu * atom.q;
  }
  ReverseTestCheck check;
  check.rho_residual = (sum_p - rho.density().mat()).norm();
  check.sigma_residual = (sum_q - sigma.density().mat()).norm();
  check.p_trace_residual = std::abs(trace_p - rho.trace());
  check.q_trace_residual = std::abs(trace_q - sigma.trace());
  const double scale = std::max(1.0, rho.trace() + sigma.trace());
  check.pass = atoms_ok && check.rho_residual <= tol * scale &&
               check.sigma_residual <= tol * scale &&
               check.p_trace_residual <= tol * scale &&
               check.q_trace_residual <= tol * scale;
  return check;
}

}  // namespace qfdiv
