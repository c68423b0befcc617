#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfdiv/extended_real.hpp"
#include "qfdiv/ocf.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

// Atoms with mass at or below this threshold are dropped before they can
// multiply an infinite perspective weight.
inline constexpr double kMassDust = 1e-12;

// Outcome of a divergence evaluation: the extended value, the route that
// produced it, the spectral measure it integrated, and the masses snapped to
// the endpoints of [0, 1].
struct DivergenceReport {
  ExtendedReal value;
  std::string method;
  double boundary_zero_mass = 0.0;
  double boundary_one_mass = 0.0;
  std::vector<SpectralAtom> spectrum;
};

// Classical f-divergence of weighted nonnegative component pairs:
// sum of nu_k * [q_k f(p_k/q_k)], with q f(0+) when p = 0 < q,
// p f'(+inf) when q = 0 < p, and 0 when both vanish.
ExtendedReal classical_f_divergence(const std::vector<double>& p,
                                    const std::vector<double>& q,
                                    const std::vector<double>& nu,
                                    const OperatorConvexFunction& f);

// Spectral-coupling form over the eigensystems of rho and sigma; the report
// carries the coupling measure whose endpoint masses are the classical
// boundary terms sigma(1 - s(rho)) and rho(1 - s(sigma)).
DivergenceReport standard_f_divergence(const PositiveFunctional& rho,
                                       const PositiveFunctional& sigma,
                                       const OperatorConvexFunction& f);

// Integral route through the contraction spectrum of the pair context.
DivergenceReport maximal_f_divergence(const PositiveFunctional& rho,
                                      const PositiveFunctional& sigma,
                                      const OperatorConvexFunction& f);
DivergenceReport maximal_f_divergence(const PairContext& ctx,
                                      const OperatorConvexFunction& f);

// Direct evaluation sigma(f(sigma^{-1/2} rho sigma^{-1/2})) when the support
// of rho sits inside the support of sigma; support obstructions paired with
// an infinite endpoint give +inf; otherwise falls back to the integral route.
ExtendedReal maximal_closed_form(const PositiveFunctional& rho,
                                 const PositiveFunctional& sigma,
                                 const OperatorConvexFunction& f);

// Which operand absorbs the regularizing epsilon.
enum class EpsMode {
  add_eta,    // (rho + eps eta, sigma + eps eta), eta = rho + sigma
  add_sigma,  // (rho + eps sigma, sigma)
  add_rho,    // (rho, sigma + eps rho)
};

// Values along a decreasing epsilon schedule.
std::vector<ExtendedReal> eps_regularized_maximal(
    const PositiveFunctional& rho, const PositiveFunctional& sigma,
    const OperatorConvexFunction& f, const std::vector<double>& schedule,
    EpsMode mode = EpsMode::add_eta);

// Belavkin-Staszewski relative entropy: the maximal divergence of t log t.
ExtendedReal d_bs(const PositiveFunctional& rho, const PositiveFunctional& sigma);

enum class RenyiVariant { standard, sandwiched, maximal };

// Renyi divergence of order alpha in (0, 1) or (1, inf), normalized by the
// trace of rho.
ExtendedReal renyi(const PositiveFunctional& rho, const PositiveFunctional& sigma,
                   double alpha, RenyiVariant variant);

struct MeasuredEstimate {
  ExtendedReal value;
  Eigen::MatrixXcd basis;  // measurement basis achieving the reported value
};

// Heuristic lower bound on the projectively measured f-divergence: seeded
// random restarts plus two-site rotation coordinate ascent over orthonormal
// measurement bases. The eigenbases of both operands (and their common
// eigenbasis when they commute) are always included as restarts.
MeasuredEstimate measured_estimate(const PositiveFunctional& rho,
                                   const PositiveFunctional& sigma,
                                   const OperatorConvexFunction& f,
                                   int restarts, int iters, std::uint64_t seed);

// Maximal divergence along a chain of block-diagonal pinchings; the chain
// must coarsen step by step and end with the trivial partition.
std::vector<ExtendedReal> martingale_sequence(const PositiveFunctional& rho,
                                              const PositiveFunctional& sigma,
                                              const OperatorConvexFunction& f,
                                              const std::vector<Partition>& chain);

// Maximal divergence of corner compressions along a strictly growing chain of
// index sets ending with the full set.
std::vector<ExtendedReal> compression_sequence(
    const PositiveFunctional& rho, const PositiveFunctional& sigma,
    const OperatorConvexFunction& f, const std::vector<std::vector<int>>& index_chain);

// Maximal divergence under the cutoff approximants of a canonical f.
std::vector<ExtendedReal> approximant_sequence(const PositiveFunctional& rho,
                                               const PositiveFunctional& sigma,
                                               const OperatorConvexFunction& f,
                                               const std::vector<int>& n_list);

}  // namespace qfdiv
