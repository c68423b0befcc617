#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "qfdiv/linalg.hpp"
#include "qfdiv/rng.hpp"
#include "test_util.hpp"

using namespace qfdiv;
using qfdiv_test::random_hermitian;

namespace {

Eigen::MatrixXcd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, d;
  return m;
}

// Independent 2x2 oracle: eigenvalues from the characteristic polynomial.
std::pair<double, double> quadratic_eigs(double a, double b, double d) {
  const double tr = a + d;
  const double det = a * d - b * b;
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

}  // namespace

TEST_CASE("hermitian matrix construction") {
  CHECK_THROWS_AS(HermitianMatrix(mat2(1, 2, 0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);

  Eigen::MatrixXcd m(2, 2);
  m << 1.0, std::complex<double>(0, 1), std::complex<double>(0, -1), 2.0;
  HermitianMatrix h(m);
  CHECK(h.trace() == doctest::Approx(3.0));
  CHECK((h.mat() - h.mat().adjoint()).norm() == 0.0);

  // Sub-tolerance asymmetry is symmetrized away.
  Eigen::MatrixXcd n = m;
  n(0, 1) += std::complex<double>(1e-14, 0);
  HermitianMatrix hn(n);
  CHECK((hn.mat() - hn.mat().adjoint()).norm() == 0.0);
}

TEST_CASE("eig_hermitian on frozen 2x2 examples") {
  SUBCASE("generic positive definite") {
    auto [hi, lo] = quadratic_eigs(2.5, 1.0, 1.0);
    CHECK(hi == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(lo == doctest::Approx(0.5).epsilon(1e-12));
    Spectrum s = eig_hermitian(HermitianMatrix(mat2(2.5, 1, 1, 1)));
    CHECK(s.eigenvalues(0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.eigenvalues(1) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("symmetric flip") {
    Spectrum s = eig_hermitian(HermitianMatrix(mat2(0, 1, 1, 0)));
    CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(-1.0));
  }
  SUBCASE("rank one") {
    Spectrum s = eig_hermitian(HermitianMatrix(mat2(1, 1, 1, 1)));
    CHECK(s.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("zero matrix") {
    Spectrum s = eig_hermitian(HermitianMatrix::zero(3));
    CHECK(s.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.eigenvectors - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
  }
}

TEST_CASE("eig_hermitian reconstruction and orthonormality") {
  RandomStream rng(20260822);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + trial % 7;
    HermitianMatrix a = random_hermitian(dim, rng);
    Spectrum s = eig_hermitian(a);
    const double scale = std::max(1.0, a.frobenius_norm());
    Eigen::MatrixXcd rebuilt =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
    CHECK((rebuilt - a.mat()).norm() <= 1e-12 * scale);
    CHECK((s.eigenvectors.adjoint() * s.eigenvectors -
           Eigen::MatrixXcd::Identity(dim, dim))
              .norm() <= 1e-12);
    for (int i = 0; i + 1 < dim; ++i) {
      CHECK(s.eigenvalues(i) >= s.eigenvalues(i + 1));
    }
  }
}

TEST_CASE("eig_hermitian agrees with the reference dense solver") {
  RandomStream rng(77001);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + trial % 7;
    HermitianMatrix a = random_hermitian(dim, rng);
    Spectrum s = eig_hermitian(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(a.mat());
    const double scale = std::max(1.0, a.frobenius_norm());
    for (int i = 0; i < dim; ++i) {
      // Reference solver sorts ascending.
      CHECK(std::abs(s.eigenvalues(i) - ref.eigenvalues()(dim - 1 - i)) <=
            1e-11 * scale);
    }
  }
}

TEST_CASE("matrix_function evaluates through the spectrum") {
  SUBCASE("square root of a diagonal") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 4.0;
    HermitianMatrix r = matrix_function(HermitianMatrix(d),
                                        [](double x) { return std::sqrt(x); });
    CHECK(std::abs(r.mat()(0, 0) - 1.0) <= 1e-14);
    CHECK(std::abs(r.mat()(1, 1) - 2.0) <= 1e-14);
    CHECK(std::abs(r.mat()(0, 1)) <= 1e-14);
  }
  SUBCASE("square equals matrix product") {
    HermitianMatrix a(mat2(1, 1, 1, 1));
    HermitianMatrix sq = matrix_function(a, [](double x) { return x * x; });
    CHECK((sq.mat() - a.mat() * a.mat()).norm() <= 1e-13);
  }
  SUBCASE("non-finite values are rejected") {
    HermitianMatrix a(mat2(1, 0, 0, 0));
    CHECK_THROWS_AS(matrix_function(a, [](double x) { return 1.0 / x; }),
                    std::domain_error);
  }
}

TEST_CASE("matrix_function composition") {
  RandomStream rng(5150);
  auto h = [](double x) { return x * x + 1.0; };
  auto g = [](double x) { return std::log(x); };
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 7;
    HermitianMatrix a = random_hermitian(dim, rng);
    HermitianMatrix lhs =
        matrix_function(a, [&](double x) { return g(h(x)); });
    HermitianMatrix rhs = matrix_function(matrix_function(a, h), g);
    CHECK((lhs.mat() - rhs.mat()).norm() <= 1e-9 * std::max(1.0, lhs.frobenius_norm()));
  }
}

TEST_CASE("sqrt_and_pinv_sqrt") {
  SUBCASE("rank-one flat vector") {
    const double r2 = std::sqrt(2.0);
    auto [root, invroot] = sqrt_and_pinv_sqrt(HermitianMatrix(mat2(1, 1, 1, 1)));
    CHECK((root.mat() - mat2(1, 1, 1, 1) / r2).norm() <= 1e-13);
    CHECK((invroot.mat() - mat2(1, 1, 1, 1) / (2.0 * r2)).norm() <= 1e-13);
  }
  SUBCASE("identity") {
    auto [root, invroot] = sqrt_and_pinv_sqrt(HermitianMatrix::identity(3));
    CHECK((root.mat() - Eigen::MatrixXcd::Identity(3, 3)).norm() <= 1e-13);
    CHECK((invroot.mat() - Eigen::MatrixXcd::Identity(3, 3)).norm() <= 1e-13);
  }
  SUBCASE("rejects indefinite input") {
    CHECK_THROWS_AS(sqrt_and_pinv_sqrt(HermitianMatrix(mat2(1, 0, 0, -1))),
                    std::invalid_argument);
  }
  SUBCASE("random PSD properties") {
    RandomStream rng(9034);
    for (int trial = 0; trial < 200; ++trial) {
      const int dim = 2 + trial % 7;
      HermitianMatrix g = random_hermitian(dim, rng);
      HermitianMatrix a = matrix_function(g, [](double x) { return x * x; });
      auto [root, invroot] = sqrt_and_pinv_sqrt(a);
      const double scale = std::max(1.0, a.frobenius_norm());
      CHECK((root.mat() * root.mat() - a.mat()).norm() <= 1e-9 * scale);
      HermitianMatrix supp = support_projection(a);
      CHECK((invroot.mat() * a.mat() * invroot.mat() - supp.mat()).norm() <= 1e-8);
    }
  }
}

TEST_CASE("support_projection") {
  SUBCASE("projector is its own support") {
    HermitianMatrix p(mat2(0.5, 0.5, 0.5, 0.5));
    CHECK((support_projection(p).mat() - p.mat()).norm() <= 1e-13);
  }
  SUBCASE("diagonal with kernel") {
    HermitianMatrix a(mat2(1, 0, 0, 0));
    CHECK((support_projection(a).mat() - mat2(1, 0, 0, 0)).norm() <= 1e-13);
  }
  SUBCASE("zero maps to zero") {
    CHECK(support_projection(HermitianMatrix::zero(4)).frobenius_norm() == 0.0);
  }
  SUBCASE("support absorbs the matrix") {
    RandomStream rng(41);
    for (int trial = 0; trial < 100; ++trial) {
      const int dim = 2 + trial % 7;
      HermitianMatrix g = random_hermitian(dim, rng);
      HermitianMatrix a = matrix_function(g, [](double x) { return x * x; });
      HermitianMatrix s = support_projection(a);
      CHECK((s.mat() * a.mat() - a.mat()).norm() <=
            1e-9 * std::max(1.0, a.frobenius_norm()));
      CHECK((s.mat() * s.mat() - s.mat()).norm() <= 1e-12);
    }
  }
}

TEST_CASE("pinch") {
  SUBCASE("fully off-diagonal partition") {
    Eigen::MatrixXcd m(2, 2);
    m << 1.5, std::complex<double>(0.25, 0.5), std::complex<double>(0.25, -0.5), 0.75;
    HermitianMatrix pinched = pinch(HermitianMatrix(m), {{0}, {1}});
    CHECK(std::abs(pinched.mat()(0, 1)) == 0.0);
    CHECK(pinched.mat()(0, 0).real() == doctest::Approx(1.5));
    CHECK(pinched.mat()(1, 1).real() == doctest::Approx(0.75));
  }
  SUBCASE("trivial partition is the identity map") {
    RandomStream rng(8);
    HermitianMatrix a = random_hermitian(4, rng);
    CHECK((pinch(a, {{0, 1, 2, 3}}).mat() - a.mat()).norm() == 0.0);
  }
  SUBCASE("partition validation") {
    HermitianMatrix a = HermitianMatrix::identity(3);
    CHECK_THROWS_AS(pinch(a, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(pinch(a, {{0, 1}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(pinch(a, {{0, 1}, {2, 3}}), std::invalid_argument);
  }
  SUBCASE("structural properties") {
    RandomStream rng(314);
    const Partition fine = {{0}, {1}, {2}, {3}};
    const Partition coarse = {{0, 1}, {2, 3}};
    for (int trial = 0; trial < 100; ++trial) {
      HermitianMatrix a = random_hermitian(4, rng);
      HermitianMatrix p = pinch(a, coarse);
      CHECK(p.trace() == doctest::Approx(a.trace()).epsilon(1e-12));
      CHECK((pinch(p, coarse).mat() - p.mat()).norm() == 0.0);
      CHECK((pinch(p, fine).mat() - pinch(a, fine).mat()).norm() == 0.0);
      HermitianMatrix psd = matrix_function(a, [](double x) { return x * x; });
      Spectrum s = eig_hermitian(pinch(psd, coarse));
      CHECK(s.eigenvalues(3) >= -1e-12);
    }
    CHECK((pinch(HermitianMatrix::identity(4), coarse).mat() -
           Eigen::MatrixXcd::Identity(4, 4))
              .norm() == 0.0);
    CHECK(refines(fine, coarse));
    CHECK_FALSE(refines(coarse, fine));
  }
}

TEST_CASE("direct_sum stacks spectra") {
  HermitianMatrix a(mat2(2.5, 1, 1, 1));
  HermitianMatrix b(mat2(0, 1, 1, 0));
  HermitianMatrix c = direct_sum(a, b);
  CHECK(c.dim() == 4);
  Spectrum s = eig_hermitian(c);
  CHECK(s.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(2) == doctest::Approx(0.5));
  CHECK(s.eigenvalues(3) == doctest::Approx(-1.0));
  CHECK(std::abs(c.mat()(0, 2)) == 0.0);
}
