#include "doctest.h"

#include <cmath>
#include <complex>

#include "qfdiv/states.hpp"
#include "qfdiv/rng.hpp"
#include "test_util.hpp"

using namespace qfdiv;
using qfdiv_test::random_unitary;

namespace {

HermitianMatrix diag2(double a, double d) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = d;
  return HermitianMatrix(m);
}

HermitianMatrix flat2(double scale) {
  Eigen::MatrixXcd m(2, 2);
  m << scale, scale, scale, scale;
  return HermitianMatrix(m);
}

// The worked pair used across modules: rho = diag(3/2, 0), sigma all-ones.
PositiveFunctional golden_rho() { return PositiveFunctional(diag2(1.5, 0.0)); }
PositiveFunctional golden_sigma() { return PositiveFunctional(flat2(1.0)); }

}  // namespace

TEST_CASE("positive functional construction") {
  PositiveFunctional x(diag2(0.5, 0.5));
  CHECK(x.trace() == doctest::Approx(1.0));
  CHECK(x.rank() == 2);

  // Tiny negative dust is clamped to an exact kernel.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1e-13;
  PositiveFunctional y{HermitianMatrix(m)};
  CHECK(y.rank() == 1);
  CHECK(y.spectrum().eigenvalues(1) == 0.0);
  CHECK(y.trace() == doctest::Approx(1.0));

  CHECK_THROWS_AS(PositiveFunctional(diag2(1.0, -0.001)), std::invalid_argument);
}

TEST_CASE("positive functional caches are mutually consistent") {
  RandomStream rng(100);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + trial % 7;
    const int rank = 1 + static_cast<int>(rng.uniform() * dim);
    PositiveFunctional x = random_density(dim, rank, rng.raw());
    CHECK(x.rank() == rank);
    CHECK(x.trace() == doctest::Approx(1.0).epsilon(1e-12));
    // Support projects onto exactly the positive part of the spectrum.
    CHECK((x.support().mat() * x.density().mat() - x.density().mat()).norm() <= 1e-10);
    CHECK(x.support().trace() == doctest::Approx(static_cast<double>(rank)));
    Eigen::MatrixXcd rebuilt = x.spectrum().eigenvectors *
                               x.spectrum().eigenvalues.asDiagonal() *
                               x.spectrum().eigenvectors.adjoint();
    CHECK((rebuilt - x.density().mat()).norm() <= 1e-11);
  }
}

TEST_CASE("random density is deterministic per seed") {
  PositiveFunctional a = random_density(4, 2, 991);
  PositiveFunctional b = random_density(4, 2, 991);
  PositiveFunctional c = random_density(4, 2, 992);
  CHECK((a.density().mat() - b.density().mat()).norm() == 0.0);
  CHECK((a.density().mat() - c.density().mat()).norm() > 1e-3);
}

TEST_CASE("channels") {
  SUBCASE("kraus validation") {
    std::vector<Eigen::MatrixXcd> bad = {Eigen::MatrixXcd::Identity(2, 2) * 0.5};
    CHECK_THROWS_AS(Channel::kraus(bad), std::invalid_argument);
    std::vector<Eigen::MatrixXcd> good = {Eigen::MatrixXcd::Identity(2, 2)};
    Channel id = Channel::kraus(good);
    PositiveFunctional x = random_density(2, 2, 5);
    CHECK((id.apply_predual(x).density().mat() - x.density().mat()).norm() <= 1e-12);
  }
  SUBCASE("unitary conjugation preserves the spectrum") {
    RandomStream rng(17);
    Eigen::MatrixXcd u = random_unitary(3, rng);
    Channel ch = Channel::kraus({u});
    PositiveFunctional x = random_density(3, 3, 44);
    PositiveFunctional y = ch.apply_predual(x);
    for (int i = 0; i < 3; ++i) {
      CHECK(y.spectrum().eigenvalues(i) ==
            doctest::Approx(x.spectrum().eigenvalues(i)).epsilon(1e-10));
    }
  }
  SUBCASE("random channel is trace preserving and positive") {
    RandomStream rng(23);
    for (int trial = 0; trial < 100; ++trial) {
      const int din = 2 + trial % 5;
      const int dout = 2 + (trial / 2) % 5;
      // Unitality needs sum K*K = I of full rank, so nk * dout >= din.
      const int nk = std::max(1 + trial % 3, (din + dout - 1) / dout);
      Channel ch = random_channel(din, dout, nk, rng.raw());
      PositiveFunctional x = random_density(din, 1 + trial % din, rng.raw());
      PositiveFunctional y = ch.apply_predual(x);
      CHECK(y.trace() == doctest::Approx(x.trace()).epsilon(1e-9));
      CHECK(y.spectrum().eigenvalues(dout - 1) >= -1e-10);
    }
  }
  SUBCASE("pinching predual pinches") {
    PositiveFunctional x = random_density(4, 4, 7);
    Channel ch = Channel::pinching({{0, 1}, {2, 3}});
    PositiveFunctional y = ch.apply_predual(x);
    CHECK((y.density().mat() - pinch(x.density(), {{0, 1}, {2, 3}}).mat()).norm() <= 1e-12);
    CHECK(y.trace() == doctest::Approx(x.trace()).epsilon(1e-12));
  }
  SUBCASE("compression truncates") {
    PositiveFunctional x(diag2(0.75, 0.25));
    Channel ch = Channel::compression({0});
    PositiveFunctional y = ch.apply_predual(x);
    CHECK(y.dim() == 1);
    CHECK(y.trace() == doctest::Approx(0.75));
  }
  SUBCASE("subalgebra restriction keeps the dimension") {
    PositiveFunctional x = random_density(3, 3, 71);
    Channel ch = Channel::subalgebra_restriction({{0}, {1, 2}});
    PositiveFunctional y = ch.apply_predual(x);
    CHECK(y.dim() == 3);
    CHECK(std::abs(y.density().mat()(0, 1)) == 0.0);
  }
}

TEST_CASE("commutes") {
  CHECK(commutes(PositiveFunctional(diag2(0.5, 0.5)), PositiveFunctional(diag2(0.25, 0.75))));
  CHECK(commutes(golden_sigma(), golden_sigma()));
  CHECK_FALSE(commutes(golden_rho(), golden_sigma()));
}

TEST_CASE("dominance alpha") {
  SUBCASE("diagonal ratio") {
    auto a = dominance_alpha(PositiveFunctional(diag2(0.5, 0.5)),
                             PositiveFunctional(diag2(0.25, 0.75)));
    REQUIRE(a.has_value());
    CHECK(*a == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("support obstruction") {
    CHECK_FALSE(dominance_alpha(PositiveFunctional(diag2(1, 0)),
                                PositiveFunctional(diag2(0, 1)))
                    .has_value());
    CHECK_FALSE(dominance_alpha(golden_rho(), golden_sigma()).has_value());
  }
  SUBCASE("certificate: rho <= alpha sigma") {
    RandomStream rng(345);
    for (int trial = 0; trial < 100; ++trial) {
      const int dim = 2 + trial % 5;
      PositiveFunctional rho = random_density(dim, dim, rng.raw());
      PositiveFunctional sigma = random_density(dim, dim, rng.raw());
      auto a = dominance_alpha(rho, sigma);
      REQUIRE(a.has_value());
      HermitianMatrix gap = *a * sigma.density() - rho.density();
      Spectrum s = eig_hermitian(gap);
      CHECK(s.eigenvalues(dim - 1) >= -1e-8);
      // Least such alpha: shrinking it breaks positivity.
      HermitianMatrix tight = (*a * 0.999) * sigma.density() - rho.density();
      CHECK(eig_hermitian(tight).eigenvalues(dim - 1) < 0.0);
    }
  }
}

TEST_CASE("transpose density") {
  Eigen::MatrixXcd m(2, 2);
  m << 0.5, std::complex<double>(0.1, 0.2), std::complex<double>(0.1, -0.2), 0.5;
  PositiveFunctional x{HermitianMatrix(m)};
  PositiveFunctional y = transpose_density(x);
  CHECK((y.density().mat() - x.density().mat()).norm() > 0.1);
  for (int i = 0; i < 2; ++i) {
    CHECK(y.spectrum().eigenvalues(i) ==
          doctest::Approx(x.spectrum().eigenvalues(i)).epsilon(1e-12));
  }
}

TEST_CASE("pair context on closed-form pairs") {
  SUBCASE("equal maximally mixed pair") {
    PositiveFunctional half(diag2(0.5, 0.5));
    PairContext ctx(half, half);
    CHECK(ctx.atoms().size() == 2);
    for (const auto& atom : ctx.atoms()) {
      CHECK(atom.t == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(atom.weight == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("orthogonal diagonal pair") {
    PairContext ctx(PositiveFunctional(diag2(1, 0)), PositiveFunctional(diag2(0, 1)));
    double w0 = 0, w1 = 0;
    for (const auto& atom : ctx.atoms()) {
      if (atom.t == 1.0) w1 += atom.weight;
      if (atom.t == 0.0) w0 += atom.weight;
    }
    CHECK(w1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(w0 == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("golden pair boundary masses") {
    PairContext ctx(golden_rho(), golden_sigma());
    // eta has eigenvalues 3 and 1/2; the contraction spectrum is {1, 0}.
    Spectrum eta = eig_hermitian(ctx.eta().density());
    CHECK(eta.eigenvalues(0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(eta.eigenvalues(1) == doctest::Approx(0.5).epsilon(1e-12));
    double w0 = 0, w1 = 0;
    for (const auto& atom : ctx.atoms()) {
      REQUIRE((atom.t == 0.0 || atom.t == 1.0));
      if (atom.t == 1.0) w1 += atom.weight;
      if (atom.t == 0.0) w0 += atom.weight;
    }
    CHECK(w1 == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(w0 == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("pair context reconstruction invariants") {
  RandomStream rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = 2 + trial % 7;
    const int rr = 1 + static_cast<int>(rng.uniform() * dim);
    const int rs = 1 + static_cast<int>(rng.uniform() * dim);
    PositiveFunctional rho = random_density(dim, rr, rng.raw());
    PositiveFunctional sigma = random_density(dim, rs, rng.raw());
    PairContext ctx(rho, sigma);

    const Eigen::MatrixXcd& root = ctx.eta_sqrt().mat();
    CHECK((root * ctx.contraction().mat() * root - rho.density().mat()).norm() <= 1e-8);

    double total = 0.0;
    for (const auto& atom : ctx.atoms()) {
      CHECK(atom.weight >= 0.0);
      CHECK(atom.t >= 0.0);
      CHECK(atom.t <= 1.0);
      total += atom.weight;
    }
    CHECK(total == doctest::Approx(ctx.eta().trace()).epsilon(1e-8));
  }
}
