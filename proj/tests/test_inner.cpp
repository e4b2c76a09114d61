#include <doctest.h>

#include <cmath>

#include <dynframe/inner.hpp>
#include <dynframe/hardy.hpp>
#include <dynframe/numkit.hpp>

#include "helpers.hpp"

using namespace dynframe;
using namespace dftest;
using inner::BlaschkeProduct;
using inner::MatrixInner;

namespace {

// Independent pointwise-evaluation oracle: trapezoid quadrature of
// B(e^{i t}) e^{-i n t} over a fine torus grid recovers the Fourier
// coefficients of a rational function to spectral accuracy.
Vec coeffs_by_quadrature(const BlaschkeProduct& b, Index m, Index grid = 4096) {
  Vec c = Vec::Zero(m + 1);
  for (Index k = 0; k < grid; ++k) {
    const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(grid);
    const Complex z(std::cos(t), std::sin(t));
    const Complex bz = b.eval(z);
    for (Index n = 0; n <= m; ++n)
      c[n] += bz * std::exp(Complex(0.0, -static_cast<double>(n) * t));
  }
  return c / static_cast<double>(grid);
}

BlaschkeProduct single(Complex a) { return BlaschkeProduct::from_zeros({a}); }

}  // namespace

TEST_CASE("blaschke_coeffs reference values") {
  Vec mono = inner::blaschke_coeffs(BlaschkeProduct::monomial(1), 4);
  CHECK(std::abs(mono[0]) == 0.0);
  CHECK(std::abs(mono[1] - Complex(1.0)) <= 1e-15);
  CHECK(mono.tail(3).cwiseAbs().maxCoeff() == 0.0);

  Vec half = inner::blaschke_coeffs(single(0.5), 3);
  CHECK(half[0].real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half[1].real() == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(half[2].real() == doctest::Approx(-0.375).epsilon(1e-15));
  CHECK(half[3].real() == doctest::Approx(-0.1875).epsilon(1e-15));
}

TEST_CASE("blaschke_coeffs match the quadrature oracle") {
  BlaschkeProduct two = BlaschkeProduct::from_zeros({Complex(0.5), Complex(-0.5)});
  Vec c = inner::blaschke_coeffs(two, 12);
  Vec oracle = coeffs_by_quadrature(two, 12);
  CHECK((c - oracle).cwiseAbs().maxCoeff() <= 1e-12);

  Rng rng(13);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Complex> zeros;
    const int deg = 1 + static_cast<int>(rng.uniform() * 3);
    for (int i = 0; i < deg; ++i)
      zeros.push_back(random_in_disc(rng, 0.8));
    BlaschkeProduct b = BlaschkeProduct::from_zeros(zeros);
    Vec got = inner::blaschke_coeffs(b, 10);
    Vec want = coeffs_by_quadrature(b, 10);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-11);
  }
}

TEST_CASE("blaschke products are unimodular on the torus") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> zeros;
    const int deg = 1 + static_cast<int>(rng.uniform() * 4);
    for (int i = 0; i < deg; ++i)
      zeros.push_back(random_in_disc(rng, 0.9));
    BlaschkeProduct b = BlaschkeProduct::from_zeros(zeros, Complex(0, 1));
    for (Index k = 0; k < 128; ++k) {
      const double t = 2.0 * M_PI * k / 128.0;
      CHECK(std::abs(std::abs(b.eval(Complex(std::cos(t), std::sin(t)))) - 1.0) <=
            1e-10);
    }
  }
}

TEST_CASE("zeros inside the disc are enforced") {
  CHECK_THROWS_AS((void)BlaschkeProduct::from_zeros({Complex(1.0)}), Error);
}

TEST_CASE("rho on scalars and Blaschke structure") {
  Vec real_coeffs = inner::blaschke_coeffs(single(0.5), 8);
  CHECK((inner::rho_scalar(real_coeffs) - real_coeffs).cwiseAbs().maxCoeff() == 0.0);

  BlaschkeProduct b = single(Complex(0.0, 0.5));
  BlaschkeProduct rb = inner::rho_blaschke(b);
  CHECK(rb.zeros()[0].a == Complex(0.0, -0.5));
  Vec c = inner::blaschke_coeffs(b, 10);
  Vec rc = inner::blaschke_coeffs(rb, 10);
  CHECK((rc - c.conjugate()).cwiseAbs().maxCoeff() <= 1e-14);

  // Involution, exactly.
  BlaschkeProduct back = inner::rho_blaschke(rb);
  CHECK(back.zeros()[0].a == b.zeros()[0].a);
  CHECK(back.alpha() == b.alpha());
}

TEST_CASE("rho_matrix is an involution and adjoints coefficients") {
  Rng rng(19);
  Mat u = random_unitary(rng, 2);
  Mat w = random_unitary(rng, 2);
  MatrixInner q = MatrixInner::product(
      u, {single(Complex(0.3, 0.2)), single(Complex(-0.1, -0.6))}, w);
  MatrixInner rq = inner::rho_matrix(q);
  auto qc = q.coeffs(8);
  auto rqc = rq.coeffs(8);
  for (Index n = 0; n <= 8; ++n)
    CHECK((rqc[n] - qc[n].adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  auto back = inner::rho_matrix(rq).coeffs(8);
  for (Index n = 0; n <= 8; ++n)
    CHECK((back[n] - qc[n]).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("scalar similarity verdicts") {
  inner::ScalarSimilarity real_zero = inner::similarity_test_scalar(single(0.5), 12);
  CHECK(real_zero.similar);
  REQUIRE(real_zero.alpha_witness.has_value());
  CHECK(std::abs(*real_zero.alpha_witness - Complex(1.0)) <= 1e-12);

  inner::ScalarSimilarity imag_zero =
      inner::similarity_test_scalar(single(Complex(0.0, 0.5)), 12);
  CHECK_FALSE(imag_zero.similar);

  inner::ScalarSimilarity pair = inner::similarity_test_scalar(
      BlaschkeProduct::from_zeros({Complex(0.3, 0.2), Complex(0.3, -0.2)}), 16);
  CHECK(pair.similar);
}

TEST_CASE("scalar similarity criteria agree on random products") {
  Rng rng(23);
  int similar_count = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Complex> zeros;
    const int pairs = static_cast<int>(rng.uniform() * 2);
    for (int i = 0; i < pairs; ++i) {
      Complex a = random_in_disc(rng, 0.9);
      zeros.push_back(a);
      zeros.push_back(std::conj(a));  // conjugation-closed half the time
    }
    const int extra = 1 + static_cast<int>(rng.uniform() * 2);
    for (int i = 0; i < extra && (pairs == 0 || trial % 2 == 0); ++i)
      zeros.push_back(random_in_disc(rng, 0.9));
    if (zeros.empty()) zeros.push_back(random_in_disc(rng, 0.4) + Complex(0.1, 0.0));
    BlaschkeProduct b = BlaschkeProduct::from_zeros(zeros);
    // Throws VerdictMismatch if the two criteria ever disagree.
    inner::ScalarSimilarity out =
        inner::similarity_test_scalar(b, 2 * b.degree() + 20);
    similar_count += out.similar ? 1 : 0;
  }
  CHECK(similar_count > 0);
  CHECK(similar_count < 60);
}

TEST_CASE("matrix similarity: diagonal with real zeros") {
  MatrixInner q = MatrixInner::diag({single(0.5), single(-0.25)});
  inner::MatrixSimilarity out =
      inner::similarity_test_matrix(q, 16, Mat(Mat::Identity(2, 2)));
  CHECK(out.similar);
  REQUIRE(out.witness_ok.has_value());
  CHECK(*out.witness_ok);
}

TEST_CASE("matrix similarity: swap-twisted conjugate pair") {
  // diag(b_{i/2}, b_{-i/2}) composed with the swap is rho-symmetric:
  // its coefficients are Hermitian, so A = I certifies similarity.
  Mat swap = Mat::Zero(2, 2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  BlaschkeProduct b = single(Complex(0.0, 0.5));
  MatrixInner q = MatrixInner::product(
      Mat(Mat::Identity(2, 2)), {b, inner::rho_blaschke(b)}, swap);
  inner::MatrixSimilarity out =
      inner::similarity_test_matrix(q, 16, Mat(Mat::Identity(2, 2)));
  CHECK(out.similar);
  REQUIRE(out.witness_ok.has_value());
  CHECK(*out.witness_ok);

  // The plain diagonal arrangement is not rho-symmetric, and the swap
  // does not commute with its coefficients.
  MatrixInner diag_pair = MatrixInner::diag({b, inner::rho_blaschke(b)});
  inner::MatrixSimilarity diag_out =
      inner::similarity_test_matrix(diag_pair, 16, swap);
  CHECK_FALSE(diag_out.similar);
  REQUIRE(diag_out.witness_ok.has_value());
  CHECK_FALSE(*diag_out.witness_ok);
}

TEST_CASE("matrix similarity: repeated imaginary zero fails") {
  BlaschkeProduct b = single(Complex(0.0, 0.5));
  MatrixInner q = MatrixInner::diag({b, b});
  CHECK_FALSE(inner::similarity_test_matrix(q, 16).similar);
}

TEST_CASE("matrix similarity is rho-symmetric") {
  Rng rng(29);
  for (int trial = 0; trial < 6; ++trial) {
    Complex a = random_in_disc(rng, 0.7);
    MatrixInner q = MatrixInner::diag({single(a), single(0.4)});
    inner::MatrixSimilarity s1 = inner::similarity_test_matrix(q, 14);
    inner::MatrixSimilarity s2 =
        inner::similarity_test_matrix(inner::rho_matrix(q), 14);
    CHECK(s1.similar == s2.similar);
  }
}

TEST_CASE("truncated inclusion of Q H^2 in rho(Q) H^2 forces equality") {
  // Conjugation-closed zeros: equality; open zeros: neither inclusion.
  hardy::TruncHardy h{1, 24};
  auto span_of = [&](const BlaschkeProduct& b) {
    return hardy::invariant_subspace(MatrixInner::diag({b}), h);
  };
  numkit::Subspace closed_q = span_of(
      BlaschkeProduct::from_zeros({Complex(0.3, 0.2), Complex(0.3, -0.2)}));
  numkit::Subspace closed_r = span_of(inner::rho_blaschke(
      BlaschkeProduct::from_zeros({Complex(0.3, 0.2), Complex(0.3, -0.2)})));
  CHECK(numkit::subspace_distance(closed_q.basis, closed_r.basis) <= 1e-10);
  CHECK(numkit::subspace_distance(closed_r.basis, closed_q.basis) <= 1e-10);

  BlaschkeProduct open_b = single(Complex(0.0, 0.5));
  numkit::Subspace open_q = span_of(open_b);
  numkit::Subspace open_r = span_of(inner::rho_blaschke(open_b));
  CHECK(numkit::subspace_distance(open_q.basis, open_r.basis) > 1e-3);
  CHECK(numkit::subspace_distance(open_r.basis, open_q.basis) > 1e-3);
}

TEST_CASE("divides") {
  CHECK(inner::divides(BlaschkeProduct::monomial(1), BlaschkeProduct::monomial(2)));
  CHECK_FALSE(
      inner::divides(BlaschkeProduct::monomial(2), BlaschkeProduct::monomial(1)));

  CHECK(inner::divides(single(0.5),
                       BlaschkeProduct::from_zeros({Complex(0.5), Complex(-0.5)})));

  BlaschkeProduct twice = BlaschkeProduct::from_zeros({Complex(0.5), Complex(0.5)});
  CHECK_FALSE(inner::divides(twice, single(0.5)));
  CHECK(inner::divides(single(0.5), twice));
}
