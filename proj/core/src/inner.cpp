#include "dynframe/inner.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dynframe/hardy.hpp"

namespace dynframe::inner {

namespace {

constexpr double kUnitTol = 1e-12;

void check_unitary(const Mat& u, const char* what) {
  if (u.rows() != u.cols())
    fail(ErrorCode::InvalidArgument, std::string(what) + " must be square");
  Mat g = u.adjoint() * u - Mat::Identity(u.cols(), u.cols());
  if (g.cwiseAbs().maxCoeff() > 1e-10)
    fail(ErrorCode::InvalidArgument, std::string(what) + " is not unitary");
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(Complex alpha, std::vector<BlaschkeZero> zeros,
                                 Index power)
    : alpha_(alpha), zeros_(std::move(zeros)), power_(power) {
  if (std::abs(std::abs(alpha_) - 1.0) > kUnitTol)
    fail(ErrorCode::InvalidArgument, "unimodular constant must have |alpha| = 1");
  if (power_ < 0) fail(ErrorCode::InvalidArgument, "power must be >= 0");
  for (const auto& z : zeros_) {
    if (z.multiplicity < 1)
      fail(ErrorCode::InvalidArgument, "zero multiplicity must be >= 1");
    if (std::abs(z.a) == 0.0)
      fail(ErrorCode::InvalidArgument, "zeros at the origin belong in the power field");
    if (std::abs(z.a) >= 1.0 - kUnitTol)
      fail(ErrorCode::NotInDisc, "Blaschke zero must satisfy |a| < 1 - 1e-12");
  }
}

BlaschkeProduct BlaschkeProduct::from_zeros(const std::vector<Complex>& zeros,
                                            Complex alpha) {
  Index power = 0;
  std::vector<BlaschkeZero> list;
  for (const Complex& a : zeros) {
    if (std::abs(a) == 0.0) {
      ++power;
      continue;
    }
    bool merged = false;
    for (auto& z : list) {
      if (std::abs(z.a - a) <= kUnitTol) {
        ++z.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) list.push_back({a, 1});
  }
  return BlaschkeProduct(alpha, std::move(list), power);
}

Index BlaschkeProduct::degree() const {
  Index deg = power_;
  for (const auto& z : zeros_) deg += z.multiplicity;
  return deg;
}

Complex BlaschkeProduct::eval(Complex z) const {
  Complex out = alpha_ * std::pow(z, static_cast<double>(power_));
  for (const auto& zero : zeros_) {
    const Complex factor =
        (std::conj(zero.a) / std::abs(zero.a)) * (zero.a - z) /
        (1.0 - std::conj(zero.a) * z);
    for (Index k = 0; k < zero.multiplicity; ++k) out *= factor;
  }
  return out;
}

Vec blaschke_coeffs(const BlaschkeProduct& b, Index m) {
  if (m < 0) fail(ErrorCode::InvalidArgument, "m must be >= 0");
  Vec c = Vec::Zero(m + 1);
  if (b.power() <= m) c[b.power()] = b.alpha();

  for (const auto& zero : b.zeros()) {
    // Factor series (conj a / |a|) (a + (|a|^2 - 1) sum_{n>=1} conj(a)^{n-1} z^n).
    Vec f = Vec::Zero(m + 1);
    const Complex a = zero.a;
    const Complex phase = std::conj(a) / std::abs(a);
    f[0] = phase * a;
    Complex pw = 1.0;
    for (Index n = 1; n <= m; ++n) {
      f[n] = phase * (std::norm(a) - 1.0) * pw;
      pw *= std::conj(a);
    }
    for (Index k = 0; k < zero.multiplicity; ++k) {
      Vec conv = Vec::Zero(m + 1);
      for (Index i = 0; i <= m; ++i) {
        if (c[i] == 0.0) continue;
        for (Index j = 0; i + j <= m; ++j) conv[i + j] += c[i] * f[j];
      }
      c = std::move(conv);
    }
  }
  return c;
}

MatrixInner MatrixInner::constant(Mat factor) {
  // Contractive constants are allowed (partial isometries included) so
  // the full-range diagnostic can reject them; inner-ness is a property
  // checked where it is needed.
  if (factor.rows() != factor.cols())
    fail(ErrorCode::InvalidArgument, "constant factor must be square");
  if (numkit::spectral_norm(factor) > 1.0 + 1e-10)
    fail(ErrorCode::InvalidArgument, "constant factor must be a contraction");
  MatrixInner q;
  q.kind_ = Kind::constant;
  q.dim_ = factor.rows();
  q.left_ = std::move(factor);
  return q;
}

MatrixInner MatrixInner::diag(std::vector<BlaschkeProduct> entries) {
  if (entries.empty()) fail(ErrorCode::InvalidArgument, "diagonal inner needs entries");
  MatrixInner q;
  q.kind_ = Kind::diag_blaschke;
  q.dim_ = static_cast<Index>(entries.size());
  q.diag_ = std::move(entries);
  return q;
}

MatrixInner MatrixInner::product(Mat left, std::vector<BlaschkeProduct> entries,
                                 Mat right) {
  check_unitary(left, "left unitary factor");
  check_unitary(right, "right unitary factor");
  if (left.rows() != static_cast<Index>(entries.size()) ||
      right.rows() != static_cast<Index>(entries.size()))
    fail(ErrorCode::DimensionMismatch, "product factors must share the dimension");
  MatrixInner q;
  q.kind_ = Kind::product;
  q.dim_ = left.rows();
  q.left_ = std::move(left);
  q.right_ = std::move(right);
  q.diag_ = std::move(entries);
  return q;
}

Index MatrixInner::degree() const {
  if (kind_ == Kind::constant) return 0;
  Index deg = 0;
  for (const auto& b : diag_) deg = std::max(deg, b.degree());
  return deg;
}

Index MatrixInner::column_degree(Index j) const {
  if (kind_ == Kind::constant) return 0;
  if (kind_ == Kind::diag_blaschke) return diag_[j].degree();
  Index deg = 0;
  for (Index k = 0; k < dim_; ++k)
    if (std::abs(right_(k, j)) > 1e-14) deg = std::max(deg, diag_[k].degree());
  return deg;
}

Mat MatrixInner::eval(Complex z) const {
  if (kind_ == Kind::constant) return left_;
  Vec d(dim_);
  for (Index i = 0; i < dim_; ++i) d[i] = diag_[i].eval(z);
  Mat dm = d.asDiagonal();
  if (kind_ == Kind::diag_blaschke) return dm;
  return left_ * dm * right_;
}

std::vector<Mat> MatrixInner::coeffs(Index m) const {
  std::vector<Mat> out;
  out.reserve(m + 1);
  if (kind_ == Kind::constant) {
    out.push_back(left_);
    for (Index n = 1; n <= m; ++n) out.push_back(Mat::Zero(dim_, dim_));
    return out;
  }
  std::vector<Vec> entry_coeffs;
  entry_coeffs.reserve(dim_);
  for (const auto& b : diag_) entry_coeffs.push_back(blaschke_coeffs(b, m));
  for (Index n = 0; n <= m; ++n) {
    Vec d(dim_);
    for (Index i = 0; i < dim_; ++i) d[i] = entry_coeffs[i][n];
    Mat dm = d.asDiagonal();
    out.push_back(kind_ == Kind::diag_blaschke ? dm : Mat(left_ * dm * right_));
  }
  return out;
}

Vec rho_scalar(const Vec& coeffs) { return coeffs.conjugate(); }

BlaschkeProduct rho_blaschke(const BlaschkeProduct& b) {
  std::vector<BlaschkeZero> zeros;
  zeros.reserve(b.zeros().size());
  for (const auto& z : b.zeros()) zeros.push_back({std::conj(z.a), z.multiplicity});
  return BlaschkeProduct(std::conj(b.alpha()), std::move(zeros), b.power());
}

MatrixInner rho_matrix(const MatrixInner& q) {
  switch (q.kind()) {
    case MatrixInner::Kind::constant:
      return MatrixInner::constant(q.left().adjoint());
    case MatrixInner::Kind::diag_blaschke: {
      std::vector<BlaschkeProduct> entries;
      for (const auto& b : q.diag_entries()) entries.push_back(rho_blaschke(b));
      return MatrixInner::diag(std::move(entries));
    }
    case MatrixInner::Kind::product: {
      std::vector<BlaschkeProduct> entries;
      for (const auto& b : q.diag_entries()) entries.push_back(rho_blaschke(b));
      // (L D_n R)* = R* D_n* L*.
      return MatrixInner::product(q.right().adjoint(), std::move(entries),
                                  q.left().adjoint());
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown inner kind");
}

namespace {

Index zero_multiplicity(const BlaschkeProduct& b, Complex a, double tol) {
  Index mult = 0;
  for (const auto& z : b.zeros())
    if (std::abs(z.a - a) <= tol) mult += z.multiplicity;
  return mult;
}

bool zeros_conjugation_closed(const BlaschkeProduct& b, double tol) {
  for (const auto& z : b.zeros())
    if (zero_multiplicity(b, std::conj(z.a), tol) !=
        zero_multiplicity(b, z.a, tol))
      return false;
  return true;
}

}  // namespace

ScalarSimilarity similarity_test_scalar(const BlaschkeProduct& b, Index m,
                                        double tol) {
  if (m < 2 * b.degree())
    fail(ErrorCode::DegreeOverflow, "need m >= 2 deg(B) for the coefficient test");
  const Vec c = blaschke_coeffs(b, m);
  const double scale = c.cwiseAbs().maxCoeff();

  ScalarSimilarity out;
  Index first = -1;
  for (Index n = 0; n <= m; ++n) {
    if (std::abs(c[n]) > 1e-14 * scale) {
      first = n;
      break;
    }
  }
  if (first >= 0) {
    const Complex base = std::conj(c[first]) / std::abs(c[first]);
    for (const Complex alpha : {base, -base}) {
      double worst = 0.0;
      for (Index n = 0; n <= m; ++n)
        worst = std::max(worst, std::abs(std::imag(alpha * c[n])));
      if (worst <= tol * scale) {
        out.coefficient_verdict = true;
        out.alpha_witness = alpha;
        break;
      }
    }
  }

  out.zero_set_verdict = zeros_conjugation_closed(b, 1e-12);
  if (out.zero_set_verdict != out.coefficient_verdict)
    fail(ErrorCode::VerdictMismatch,
         "zero-set and coefficient criteria disagree (tolerance failure)");
  out.similar = out.zero_set_verdict;
  return out;
}

MatrixSimilarity similarity_test_matrix(const MatrixInner& q, Index m,
                                        const std::optional<Mat>& a_candidate,
                                        double tol) {
  if (m < 2 * q.degree())
    fail(ErrorCode::DegreeOverflow, "need m >= 2 deg(Q) for the subspace test");
  hardy::TruncHardy h{q.dim(), m};
  numkit::Subspace mq = hardy::invariant_subspace(q, h);
  numkit::Subspace mrho = hardy::invariant_subspace(rho_matrix(q), h);

  MatrixSimilarity out;
  out.similar = numkit::subspace_equal(mq, mrho, tol);

  if (a_candidate) {
    const Mat& a = *a_candidate;
    bool ok = a.rows() == q.dim() && a.cols() == q.dim();
    if (ok) {
      Mat g = a.adjoint() * a - Mat::Identity(q.dim(), q.dim());
      ok = g.cwiseAbs().maxCoeff() <= 1e-10;
    }
    if (ok) {
      const std::vector<Mat> qc = q.coeffs(m);
      double scale = 0.0;
      for (const Mat& qn : qc) scale = std::max(scale, qn.cwiseAbs().maxCoeff());
      for (const Mat& qn : qc) {
        Mat aq = a * qn;
        if ((aq - qn * a).cwiseAbs().maxCoeff() > tol * scale ||
            (aq - aq.adjoint()).cwiseAbs().maxCoeff() > tol * scale) {
          ok = false;
          break;
        }
      }
    }
    out.witness_ok = ok;
  }
  return out;
}

bool divides(const BlaschkeProduct& b1, const BlaschkeProduct& b2, double zero_tol) {
  if (b1.power() > b2.power()) return false;
  for (const auto& z : b1.zeros()) {
    if (zero_multiplicity(b1, z.a, zero_tol) >
        zero_multiplicity(b2, z.a, zero_tol))
      return false;
  }
  return true;
}

}  // namespace dynframe::inner
