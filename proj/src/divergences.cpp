#include "qfdiv/divergences.hpp"

#include <algorithm>
#include <cmath>

#include "qfdiv/rng.hpp"

namespace qfdiv {

namespace {

// Integrates the perspective weight of f against a spectral measure on [0, 1].
// Interior atoms contribute w (1-t) f(t/(1-t)); endpoint atoms multiply the
// exact boundary data of f in extended arithmetic.
DivergenceReport integrate_perspective(std::vector<SpectralAtom> atoms,
                                       const OperatorConvexFunction& f,
                                       std::string method) {
  DivergenceReport report;
  report.method = std::move(method);
  double interior = 0.0;
  for (const auto& atom : atoms) {
    if (atom.weight <= kMassDust) continue;
    if (atom.t == 0.0) {
      report.boundary_zero_mass += atom.weight;
    } else if (atom.t == 1.0) {
      report.boundary_one_mass += atom.weight;
    } else {
      const double q = 1.0 - atom.t;
      interior += atom.weight * q * f(atom.t / q);
    }
    report.spectrum.push_back(atom);
  }
  if (!std::isfinite(interior)) {
    throw NumericError("integrate_perspective: interior sum is not finite");
  }
  report.value = ExtendedReal(interior) +
                 report.boundary_zero_mass * f.value_at_zero() +
                 report.boundary_one_mass * f.slope_at_infinity();
  return report;
}

bool support_contained(const PositiveFunctional& inner,
                       const PositiveFunctional& outer) {
  const int n = inner.dim();
  const Eigen::MatrixXcd residual =
      (Eigen::MatrixXcd::Identity(n, n) - outer.support().mat()) *
      inner.support().mat();
  return residual.norm() <= 1e-8;
}

}  // namespace

ExtendedReal classical_f_divergence(const std::vector<double>& p,
                                    const std::vector<double>& q,
                                    const std::vector<double>& nu,
                                    const OperatorConvexFunction& f) {
  if (p.size() != q.size() || p.size() != nu.size()) {
    throw std::invalid_argument("classical_f_divergence: length mismatch");
  }
  ExtendedReal total(0.0);
  double finite = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 0.0 || q[k] < 0.0 || nu[k] < 0.0) {
      throw std::invalid_argument("classical_f_divergence: negative component");
    }
    if (nu[k] <= kMassDust) continue;
    if (p[k] > 0.0 && q[k] > 0.0) {
      finite += nu[k] * q[k] * f(p[k] / q[k]);
    } else if (q[k] > 0.0) {
      total += (nu[k] * q[k]) * f.value_at_zero();
    } else if (p[k] > 0.0) {
      total += (nu[k] * p[k]) * f.slope_at_infinity();
    }
  }
  if (!std::isfinite(finite)) {
    throw NumericError("classical_f_divergence: sum is not finite");
  }
  return total + ExtendedReal(finite);
}

DivergenceReport standard_f_divergence(const PositiveFunctional& rho,
                                       const PositiveFunctional& sigma,
                                       const OperatorConvexFunction& f) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("standard_f_divergence: dimension mismatch");
  }
  const Spectrum& sr = rho.spectrum();
  const Spectrum& ss = sigma.spectrum();
  const int n = rho.dim();
  std::vector<SpectralAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double lam = sr.eigenvalues(i);
    for (int j = 0; j < n; ++j) {
      const double mu = ss.eigenvalues(j);
      if (lam == 0.0 && mu == 0.0) continue;
      const std::complex<double> overlap =
          (sr.eigenvectors.col(i).adjoint() * ss.eigenvectors.col(j))(0);
      const double coupling = std::norm(overlap) * (lam + mu);
      double t;
      if (lam == 0.0) {
        t = 0.0;
      } else if (mu == 0.0) {
        t = 1.0;
      } else {
        t = lam / (lam + mu);
      }
      atoms.push_back({t, coupling});
    }
  }
  return integrate_perspective(std::move(atoms), f, "standard");
}

DivergenceReport maximal_f_divergence(const PairContext& ctx,
                                      const OperatorConvexFunction& f) {
  return integrate_perspective(ctx.atoms(), f, "maximal-integral");
}

DivergenceReport maximal_f_divergence(const PositiveFunctional& rho,
                                      const PositiveFunctional& sigma,
                                      const OperatorConvexFunction& f) {
  PairContext ctx(rho, sigma);
  return maximal_f_divergence(ctx, f);
}

ExtendedReal maximal_closed_form(const PositiveFunctional& rho,
                                 const PositiveFunctional& sigma,
                                 const OperatorConvexFunction& f) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("maximal_closed_form: dimension mismatch");
  }
  if (support_contained(rho, sigma)) {
    auto [root, invroot] = sqrt_and_pinv_sqrt(sigma.density());
    // Hermitian in exact arithmetic; symmetrize away rounding skew, which
    // grows with the conditioning of sigma.
    const Eigen::MatrixXcd conj_raw =
        invroot.mat() * rho.density().mat() * invroot.mat();
    const HermitianMatrix x(0.5 * (conj_raw + conj_raw.adjoint().eval()));
    const Spectrum spec = eig_hermitian(x);
    // With s(rho) <= s(sigma) the conjugated operator has exactly rank(rho)
    // positive eigenvalues; the rest are kernel directions regardless of the
    // rounding noise they carry, so slot them by rank instead of by a
    // magnitude threshold (which breaks down when the conjugation is badly
    // conditioned).
    ExtendedReal total(0.0);
    double finite = 0.0;
    for (int k = 0; k < x.dim(); ++k) {
      const Eigen::VectorXcd v = spec.eigenvectors.col(k);
      const double weight =
          std::max(0.0, (v.adjoint() * sigma.density().mat() * v)(0).real());
      if (weight <= kMassDust) continue;
      const double xk = spec.eigenvalues(k);
      if (k >= rho.rank() || xk <= 0.0) {
        total += weight * f.value_at_zero();
      } else {
        finite += weight * f(xk);
      }
    }
    if (!std::isfinite(finite)) {
      throw NumericError("maximal_closed_form: sum is not finite");
    }
    return total + ExtendedReal(finite);
  }
  if (f.slope_at_infinity().is_infinite()) return ExtendedReal::infinity();
  if (!support_contained(sigma, rho) && f.value_at_zero().is_infinite()) {
    return ExtendedReal::infinity();
  }
  return maximal_f_divergence(rho, sigma, f).value;
}

std::vector<ExtendedReal> eps_regularized_maximal(
    const PositiveFunctional& rho, const PositiveFunctional& sigma,
    const OperatorConvexFunction& f, const std::vector<double>& schedule,
    EpsMode mode) {
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0.0)) {
      throw std::invalid_argument("eps_regularized_maximal: epsilon must be positive");
    }
    if (i > 0 && schedule[i] > schedule[i - 1]) {
      throw std::invalid_argument("eps_regularized_maximal: schedule must decrease");
    }
  }
  if (mode == EpsMode::add_sigma && f.slope_at_infinity().is_infinite() &&
      !support_contained(rho, sigma)) {
    throw std::invalid_argument(
        "eps_regularized_maximal: perturbing rho needs a finite slope at "
        "infinity or dominated support");
  }
  if (mode == EpsMode::add_rho && f.value_at_zero().is_infinite() &&
      !support_contained(sigma, rho)) {
    throw std::invalid_argument(
        "eps_regularized_maximal: perturbing sigma needs finite f(0+) or "
        "dominating support");
  }
  std::vector<ExtendedReal> out;
  out.reserve(schedule.size());
  for (double eps : schedule) {
    switch (mode) {
      case EpsMode::add_eta: {
        const HermitianMatrix eta = rho.density() + sigma.density();
        PositiveFunctional r(rho.density() + eps * eta);
        PositiveFunctional s(sigma.density() + eps * eta);
        out.push_back(maximal_closed_form(r, s, f));
        break;
      }
      case EpsMode::add_sigma: {
        PositiveFunctional r(rho.density() + eps * sigma.density());
        out.push_back(maximal_closed_form(r, sigma, f));
        break;
      }
      case EpsMode::add_rho: {
        PositiveFunctional s(sigma.density() + eps * rho.density());
        out.push_back(maximal_closed_form(rho, s, f));
        break;
      }
    }
  }
  return out;
}

ExtendedReal d_bs(const PositiveFunctional& rho, const PositiveFunctional& sigma) {
  return maximal_f_divergence(rho, sigma, OperatorConvexFunction::xlogx()).value;
}

namespace {

// Tr rho^alpha sigma^{1-alpha} over the cached spectra, kernel branches
// excluded (support convention for the pseudo-inverse power).
double standard_renyi_trace(const PositiveFunctional& rho,
                            const PositiveFunctional& sigma, double alpha) {
  const Spectrum& sr = rho.spectrum();
  const Spectrum& ss = sigma.spectrum();
  const int n = rho.dim();
  double q = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lam = sr.eigenvalues(i);
    if (lam == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double mu = ss.eigenvalues(j);
      if (mu == 0.0) continue;
      const double overlap =
          std::norm((sr.eigenvectors.col(i).adjoint() * ss.eigenvectors.col(j))(0));
      q += std::pow(lam, alpha) * std::pow(mu, 1.0 - alpha) * overlap;
    }
  }
  return q;
}

ExtendedReal renyi_from_trace(double q, double trace_rho, double alpha) {
  if (q <= kMassDust) return ExtendedReal::infinity();
  return ExtendedReal(std::log(q / trace_rho) / (alpha - 1.0));
}

}  // namespace

ExtendedReal renyi(const PositiveFunctional& rho, const PositiveFunctional& sigma,
                   double alpha, RenyiVariant variant) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw std::invalid_argument("renyi: alpha must lie in (0,1) or (1,inf)");
  }
  if (!(rho.trace() > 0.0)) {
    throw std::invalid_argument("renyi: rho must have positive trace");
  }
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("renyi: dimension mismatch");
  }
  const bool dominated = support_contained(rho, sigma);
  switch (variant) {
    case RenyiVariant::standard: {
      if (alpha > 1.0 && !dominated) return ExtendedReal::infinity();
      return renyi_from_trace(standard_renyi_trace(rho, sigma, alpha),
                              rho.trace(), alpha);
    }
    case RenyiVariant::sandwiched: {
      if (alpha > 1.0 && !dominated) return ExtendedReal::infinity();
      const double exponent = (1.0 - alpha) / (2.0 * alpha);
      const Spectrum& ss = sigma.spectrum();
      Eigen::VectorXd powed(sigma.dim());
      for (int i = 0; i < sigma.dim(); ++i) {
        const double mu = ss.eigenvalues(i);
        powed(i) = mu > 0.0 ? std::pow(mu, exponent) : 0.0;
      }
      const Eigen::MatrixXcd a =
          ss.eigenvectors * powed.asDiagonal() * ss.eigenvectors.adjoint();
      const Eigen::MatrixXcd conj_raw = a * rho.density().mat() * a;
      const HermitianMatrix m(0.5 * (conj_raw + conj_raw.adjoint().eval()));
      const Spectrum sm = eig_hermitian(m);
      double q = 0.0;
      for (int i = 0; i < m.dim(); ++i) {
        const double x = sm.eigenvalues(i);
        if (x > 0.0) q += std::pow(x, alpha);
      }
      return renyi_from_trace(q, rho.trace(), alpha);
    }
    case RenyiVariant::maximal: {
      if (alpha > 1.0) {
        const ExtendedReal s =
            maximal_f_divergence(rho, sigma, OperatorConvexFunction::power(alpha))
                .value;
        if (s.is_infinite()) return ExtendedReal::infinity();
        return renyi_from_trace(s.value(), rho.trace(), alpha);
      }
      const ExtendedReal s =
          maximal_f_divergence(rho, sigma, OperatorConvexFunction::negpower(alpha))
              .value;
      return renyi_from_trace(-s.value(), rho.trace(), alpha);
    }
  }
  throw std::logic_error("renyi: unreachable");
}

namespace {

struct DiagTerm {
  double finite = 0.0;
  bool infinite = false;
};

// Classical contribution of one measurement outcome with unit mass.
DiagTerm diag_term(double p, double q, const OperatorConvexFunction& f) {
  DiagTerm out;
  p = std::max(0.0, p);
  q = std::max(0.0, q);
  if (p > kMassDust && q > kMassDust) {
    out.finite = q * f(p / q);
  } else if (q > kMassDust) {
    if (f.value_at_zero().is_infinite()) {
      out.infinite = true;
    } else {
      out.finite = q * f.value_at_zero().value();
    }
  } else if (p > kMassDust) {
    if (f.slope_at_infinity().is_infinite()) {
      out.infinite = true;
    } else {
      out.finite = p * f.slope_at_infinity().value();
    }
  }
  return out;
}

double rotated_diag(double aii, double ajj, std::complex<double> aij, double c,
                    double s, std::complex<double> phase, bool first) {
  const double cross = 2.0 * c * s * (std::conj(phase) * aij).real();
  return first ? c * c * aii + s * s * ajj + cross
               : s * s * aii + c * c * ajj - cross;
}

}  // namespace

MeasuredEstimate measured_estimate(const PositiveFunctional& rho,
                                   const PositiveFunctional& sigma,
                                   const OperatorConvexFunction& f,
                                   int restarts, int iters, std::uint64_t seed) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("measured_estimate: dimension mismatch");
  }
  const int n = rho.dim();
  RandomStream rng(seed);

  std::vector<Eigen::MatrixXcd> starts;
  starts.push_back(Eigen::MatrixXcd::Identity(n, n));
  starts.push_back(rho.spectrum().eigenvectors);
  starts.push_back(sigma.spectrum().eigenvectors);
  if (commutes(rho, sigma)) {
    // Generic combination separates joint eigenspaces; its eigenbasis
    // diagonalizes both operands at once.
    const HermitianMatrix mix =
        rho.density() + std::sqrt(2.0) * sigma.density();
    starts.push_back(eig_hermitian(mix).eigenvectors);
  }
  for (int r = 0; r < restarts; ++r) {
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) = rng.cnormal();
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    starts.push_back(qr.householderQ());
  }

  auto objective = [&](const Eigen::MatrixXcd& ar,
                       const Eigen::MatrixXcd& as) -> ExtendedReal {
    std::vector<double> p(n), q(n), nu(n, 1.0);
    for (int i = 0; i < n; ++i) {
      p[i] = std::max(0.0, ar(i, i).real());
      q[i] = std::max(0.0, as(i, i).real());
    }
    return classical_f_divergence(p, q, nu, f);
  };

  MeasuredEstimate best;
  best.value = ExtendedReal(-std::numeric_limits<double>::max());
  best.basis = starts.front();

  for (const auto& start : starts) {
    Eigen::MatrixXcd u = start;
    Eigen::MatrixXcd ar = u.adjoint() * rho.density().mat() * u;
    Eigen::MatrixXcd as = u.adjoint() * sigma.density().mat() * u;

    for (int pass = 0; pass < iters; ++pass) {
      bool improved = false;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const DiagTerm cur_i = diag_term(ar(i, i).real(), as(i, i).real(), f);
          const DiagTerm cur_j = diag_term(ar(j, j).real(), as(j, j).real(), f);
          if (cur_i.infinite || cur_j.infinite) continue;
          const double current = cur_i.finite + cur_j.finite;

          double best_gain = 1e-12 * std::max(1.0, std::abs(current));
          double best_theta = 0.0, best_phi = 0.0;
          bool found = false;
          auto probe = [&](double theta, double phi) {
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const std::complex<double> phase(std::cos(phi), std::sin(phi));
            const DiagTerm ti =
                diag_term(rotated_diag(ar(i, i).real(), ar(j, j).real(), ar(i, j), c, s, phase, true),
                          rotated_diag(as(i, i).real(), as(j, j).real(), as(i, j), c, s, phase, true), f);
            const DiagTerm tj =
                diag_term(rotated_diag(ar(i, i).real(), ar(j, j).real(), ar(i, j), c, s, phase, false),
                          rotated_diag(as(i, i).real(), as(j, j).real(), as(i, j), c, s, phase, false), f);
            if (ti.infinite || tj.infinite) return;
            const double gain = ti.finite + tj.finite - current;
            if (gain > best_gain) {
              best_gain = gain;
              best_theta = theta;
              best_phi = phi;
              found = true;
            }
          };

          for (int a = 1; a < 16; ++a) {
            const double theta = -0.7853981633974483 + a * 0.09817477042468103;
            for (int b = 0; b < 8; ++b) probe(theta, b * 0.39269908169872414);
          }
          if (!found) continue;

          // Golden-section refinement of the angle at the chosen phase.
          {
            const double gr = 0.6180339887498949;
            double lo = best_theta - 0.1, hi = best_theta + 0.1;
            auto val = [&](double theta) {
              const double c = std::cos(theta);
              const double s = std::sin(theta);
              const std::complex<double> phase(std::cos(best_phi), std::sin(best_phi));
              const DiagTerm ti =
                  diag_term(rotated_diag(ar(i, i).real(), ar(j, j).real(), ar(i, j), c, s, phase, true),
                            rotated_diag(as(i, i).real(), as(j, j).real(), as(i, j), c, s, phase, true), f);
              const DiagTerm tj =
                  diag_term(rotated_diag(ar(i, i).real(), ar(j, j).real(), ar(i, j), c, s, phase, false),
                            rotated_diag(as(i, i).real(), as(j, j).real(), as(i, j), c, s, phase, false), f);
              if (ti.infinite || tj.infinite) return std::numeric_limits<double>::infinity();
              return ti.finite + tj.finite;
            };
            double x1 = hi - gr * (hi - lo);
            double x2 = lo + gr * (hi - lo);
            double f1 = val(x1), f2 = val(x2);
            for (int it = 0; it < 24; ++it) {
              if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = val(x2);
              } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = val(x1);
              }
            }
            const double mid = 0.5 * (lo + hi);
            if (val(mid) > current + best_gain) best_theta = mid;
          }

          const double c = std::cos(best_theta);
          const double s = std::sin(best_theta);
          const std::complex<double> phase(std::cos(best_phi), std::sin(best_phi));
          const std::complex<double> sp = s * phase;
          const std::complex<double> spc = s * std::conj(phase);
          auto rotate = [&](Eigen::MatrixXcd& m) {
            Eigen::VectorXcd colp = m.col(i), colq = m.col(j);
            m.col(i) = c * colp - spc * colq;
            m.col(j) = sp * colp + c * colq;
            Eigen::RowVectorXcd rowp = m.row(i), rowq = m.row(j);
            m.row(i) = c * rowp - sp * rowq;
            m.row(j) = spc * rowp + c * rowq;
          };
          rotate(ar);
          rotate(as);
          Eigen::VectorXcd colp = u.col(i), colq = u.col(j);
          u.col(i) = c * colp - spc * colq;
          u.col(j) = sp * colp + c * colq;
          improved = true;
        }
      }
      if (!improved) break;
    }

    const ExtendedReal value = objective(ar, as);
    if (best.value < value) {
      best.value = value;
      best.basis = u;
    }
  }
  return best;
}

std::vector<ExtendedReal> martingale_sequence(const PositiveFunctional& rho,
                                              const PositiveFunctional& sigma,
                                              const OperatorConvexFunction& f,
                                              const std::vector<Partition>& chain) {
  if (chain.empty()) throw std::invalid_argument("martingale_sequence: empty chain");
  const int n = rho.dim();
  for (const auto& partition : chain) validate_partition(partition, n);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!refines(chain[i], chain[i + 1])) {
      throw std::invalid_argument("martingale_sequence: chain is not nested");
    }
  }
  if (chain.back().size() != 1) {
    throw std::invalid_argument("martingale_sequence: chain must end at the trivial partition");
  }
  std::vector<ExtendedReal> out;
  out.reserve(chain.size());
  for (const auto& partition : chain) {
    PositiveFunctional r(pinch(rho.density(), partition));
    PositiveFunctional s(pinch(sigma.density(), partition));
    out.push_back(maximal_f_divergence(r, s, f).value);
  }
  return out;
}

std::vector<ExtendedReal> compression_sequence(
    const PositiveFunctional& rho, const PositiveFunctional& sigma,
    const OperatorConvexFunction& f, const std::vector<std::vector<int>>& index_chain) {
  if (index_chain.empty()) {
    throw std::invalid_argument("compression_sequence: empty chain");
  }
  const int n = rho.dim();
  std::vector<std::vector<int>> sorted = index_chain;
  for (auto& s : sorted) {
    std::sort(s.begin(), s.end());
    if (s.empty() || s.front() < 0 || s.back() >= n) {
      throw std::invalid_argument("compression_sequence: index out of range");
    }
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw std::invalid_argument("compression_sequence: repeated index");
    }
  }
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (!std::includes(sorted[i + 1].begin(), sorted[i + 1].end(),
                       sorted[i].begin(), sorted[i].end()) ||
        sorted[i + 1].size() <= sorted[i].size()) {
      throw std::invalid_argument("compression_sequence: chain must strictly grow");
    }
  }
  if (static_cast<int>(sorted.back().size()) != n) {
    throw std::invalid_argument("compression_sequence: chain must end at the full set");
  }
  std::vector<ExtendedReal> out;
  out.reserve(sorted.size());
  for (const auto& s : sorted) {
    Channel ch = Channel::compression(s);
    PositiveFunctional r = ch.apply_predual(rho);
    PositiveFunctional sg = ch.apply_predual(sigma);
    out.push_back(maximal_f_divergence(r, sg, f).value);
  }
  return out;
}

std::vector<ExtendedReal> approximant_sequence(const PositiveFunctional& rho,
                                               const PositiveFunctional& sigma,
                                               const OperatorConvexFunction& f,
                                               const std::vector<int>& n_list) {
  if (!f.is_canonical()) {
    throw std::invalid_argument("approximant_sequence: needs a canonical f");
  }
  PairContext ctx(rho, sigma);
  std::vector<ExtendedReal> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    out.push_back(maximal_f_divergence(ctx, f.cutoff_approximant(n)).value);
  }
  return out;
}

}  // namespace qfdiv
