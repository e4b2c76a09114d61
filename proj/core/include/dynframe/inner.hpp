#pragma once

#include <optional>
#include <vector>

#include "dynframe/numkit.hpp"
#include "dynframe/types.hpp"

namespace dynframe::inner {

// Finite Blaschke product  alpha z^M prod_k [(conj(a_k)/|a_k|)(a_k - z)/(1 - conj(a_k) z)]
// with zeros strictly inside the disc. Zeros at the origin live in the
// z^M power, not the zero list.
struct BlaschkeZero {
  Complex a;
  Index multiplicity = 1;
};

class BlaschkeProduct {
public:
  BlaschkeProduct() = default;
  BlaschkeProduct(Complex alpha, std::vector<BlaschkeZero> zeros, Index power = 0);

  static BlaschkeProduct one() { return BlaschkeProduct(1.0, {}, 0); }
  static BlaschkeProduct monomial(Index power) {
    return BlaschkeProduct(1.0, {}, power);
  }
  static BlaschkeProduct from_zeros(const std::vector<Complex>& zeros,
                                    Complex alpha = 1.0);

  Complex alpha() const { return alpha_; }
  const std::vector<BlaschkeZero>& zeros() const { return zeros_; }
  Index power() const { return power_; }
  Index degree() const;

  Complex eval(Complex z) const;

private:
  Complex alpha_ = 1.0;
  std::vector<BlaschkeZero> zeros_;
  Index power_ = 0;
};

// Fourier coefficients of degree 0..m, by factor-by-factor series
// multiplication.
Vec blaschke_coeffs(const BlaschkeProduct& b, Index m);

// Structured operator-valued inner function: a constant unitary, a
// diagonal of scalar Blaschke products, or unitary * diagonal * unitary.
class MatrixInner {
public:
  enum class Kind { constant, diag_blaschke, product };

  // Any contractive constant is accepted (partial isometries included);
  // unitarity is what full_range_check verifies.
  static MatrixInner constant(Mat factor);
  static MatrixInner diag(std::vector<BlaschkeProduct> entries);
  static MatrixInner product(Mat left, std::vector<BlaschkeProduct> entries,
                             Mat right);

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  Index degree() const;
  Index column_degree(Index j) const;
  const std::vector<BlaschkeProduct>& diag_entries() const { return diag_; }
  const Mat& left() const { return left_; }
  const Mat& right() const { return right_; }

  Mat eval(Complex z) const;
  // Fourier coefficients Q_0..Q_m.
  std::vector<Mat> coeffs(Index m) const;

private:
  Kind kind_ = Kind::constant;
  Index dim_ = 0;
  Mat left_, right_;  // unitary factors (constant kind stores left_)
  std::vector<BlaschkeProduct> diag_;
};

// rho(Q)(z) = Q(conj z)*: conjugates scalar coefficients, adjoints
// operator coefficients. Exact involutions on the structured family.
Vec rho_scalar(const Vec& coeffs);
BlaschkeProduct rho_blaschke(const BlaschkeProduct& b);
MatrixInner rho_matrix(const MatrixInner& q);

struct ScalarSimilarity {
  bool similar = false;
  std::optional<Complex> alpha_witness;
  bool zero_set_verdict = false;
  bool coefficient_verdict = false;
};

// Two equivalent criteria for q H^2 = rho(q) H^2: the zero multiset is
// closed under conjugation, and some unimodular alpha makes all
// alpha * q_hat(n) real. Disagreement throws VerdictMismatch.
ScalarSimilarity similarity_test_scalar(const BlaschkeProduct& b, Index m,
                                        double tol = 1e-9);

struct MatrixSimilarity {
  bool similar = false;
  std::optional<bool> witness_ok;
};

// Subspace criterion for rho(Q) H^2 = Q H^2 at truncation m, plus
// verification of a supplied unitary witness A with
// A Q_n = Q_n A = (A Q_n)* for all n <= m.
MatrixSimilarity similarity_test_matrix(const MatrixInner& q, Index m,
                                        const std::optional<Mat>& a_candidate = {},
                                        double tol = 1e-8);

// Zero-multiset divisibility: B1 | B2 iff power(B1) <= power(B2) and the
// zero multiset of B1 is contained in that of B2.
bool divides(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
             double zero_tol = 1e-12);

}  // namespace dynframe::inner
