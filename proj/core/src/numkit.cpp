#include "dynframe/numkit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dynframe::numkit {

namespace {

double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

constexpr Index kJacobiLimit = 48;  // divide-and-conquer beyond this

RVec singular_values_of(const Mat& m) {
  if (std::max(m.rows(), m.cols()) <= kJacobiLimit)
    return Eigen::JacobiSVD<Mat>(m).singularValues();
  return Eigen::BDCSVD<Mat>(m).singularValues();
}

double default_rank_tol(const Mat& m) {
  return static_cast<double>(std::max(m.rows(), m.cols())) * kEps;
}

}  // namespace

HermMat::HermMat(Mat m, double sym_tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    fail(ErrorCode::NonHermitian, "matrix is not square");
  if (!all_finite(m_))
    fail(ErrorCode::NonHermitian, "matrix has non-finite entries");
  const double scale = 1.0 + max_abs(m_);
  const double asym = max_abs(m_ - m_.adjoint());
  if (asym > sym_tol * scale)
    fail(ErrorCode::NonHermitian,
         "symmetry defect " + std::to_string(asym) + " exceeds tolerance");
  // Work with the exactly Hermitian part from here on.
  m_ = 0.5 * (m_ + m_.adjoint().eval());
}

EigResult herm_eig(const HermMat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m.mat());
  if (es.info() != Eigen::Success)
    fail(ErrorCode::NonHermitian, "eigendecomposition did not converge");
  return EigResult{es.eigenvalues(), es.eigenvectors()};
}

HermMat psd_sqrt(const HermMat& m) {
  EigResult eig = herm_eig(m);
  const double scale = std::max(std::abs(eig.eigenvalues[0]),
                                std::abs(eig.eigenvalues[eig.eigenvalues.size() - 1]));
  const double clamp = 1e-10 * scale;
  RVec lam = eig.eigenvalues;
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -clamp)
      fail(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lam[i]) +
                                  " below clamp window " + std::to_string(-clamp));
    lam[i] = lam[i] > 0.0 ? std::sqrt(lam[i]) : 0.0;
  }
  Mat r = eig.eigenvectors * lam.asDiagonal().toDenseMatrix().cast<Complex>() *
          eig.eigenvectors.adjoint();
  return HermMat(std::move(r), 1e-10);
}

Index numerical_rank(const Mat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const double tol = rel_tol > 0.0 ? rel_tol : default_rank_tol(m);
  const RVec sv = singular_values_of(m);
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  const double cutoff = tol * sv[0];
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return rank;
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  const RVec sv = singular_values_of(m);
  return sv.size() == 0 ? 0.0 : sv[0];
}

double spectral_radius_of(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::InvalidArgument, "eigenvalue computation did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// Direct solve through the Schur form: with T = U R U* the equation
// becomes Y - R Y R* = U* V U for triangular R, which back-substitutes
// from the bottom-right corner.
HermMat stein_direct(const Mat& t, const Mat& v) {
  const Index d = t.rows();
  Eigen::ComplexSchur<Mat> schur(t);
  if (schur.info() != Eigen::Success)
    fail(ErrorCode::InvalidArgument, "Schur decomposition did not converge");
  const Mat& u = schur.matrixU();
  const Mat& r = schur.matrixT();
  Mat w = u.adjoint() * v * u;
  Mat y = Mat::Zero(d, d);
  for (Index i = d - 1; i >= 0; --i) {
    for (Index j = d - 1; j >= 0; --j) {
      Complex acc = w(i, j);
      for (Index k = i; k < d; ++k) {
        for (Index l = j; l < d; ++l) {
          if (k == i && l == j) continue;
          acc += r(i, k) * y(k, l) * std::conj(r(j, l));
        }
      }
      y(i, j) = acc / (1.0 - r(i, i) * std::conj(r(j, j)));
    }
  }
  Mat s = u * y * u.adjoint();
  s = 0.5 * (s + s.adjoint().eval());
  return HermMat(std::move(s), 1e-8);
}

HermMat stein_squaring(const Mat& t, const Mat& v) {
  // S_{k+1} = S_k + A_k S_k A_k*, A_{k+1} = A_k^2 sums the series in
  // O(log) doublings; the omitted tail is A_k S A_k* with norm bounded
  // by |A_k|^2 |S|.
  Mat s = v;
  Mat a = t;
  constexpr double rel_tol = 1e-14;
  for (int iter = 0; iter < 128; ++iter) {
    const double an = spectral_norm(a);
    if (an * an <= rel_tol) break;
    s = (s + a * s * a.adjoint()).eval();
    a = (a * a).eval();
  }
  s = 0.5 * (s + s.adjoint().eval());
  return HermMat(std::move(s), 1e-8);
}

}  // namespace

HermMat stein_solve(const Mat& t, const HermMat& v) {
  if (t.rows() != t.cols()) fail(ErrorCode::InvalidArgument, "T must be square");
  if (t.rows() != v.dim())
    fail(ErrorCode::DimensionMismatch, "T and V dimensions differ");
  const double rho = spectral_radius_of(t);
  if (rho >= 1.0 - 1e-10)
    fail(ErrorCode::Unstable,
         "spectral radius " + std::to_string(rho) + " is not < 1 - 1e-10");
  if (t.rows() <= kSteinDirectLimit) return stein_direct(t, v.mat());
  return stein_squaring(t, v.mat());
}

Mat orthonormal_columns(const Mat& m, double tol) {
  if (m.cols() == 0 || m.size() == 0) return Mat(m.rows(), 0);
  const auto pick = [&](const RVec& sv, const Mat& u) {
    if (sv.size() == 0 || sv[0] == 0.0) return Mat(m.rows(), 0);
    const double cutoff = (tol > 0.0 ? tol : default_rank_tol(m)) * sv[0];
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
      if (sv[i] > cutoff) ++rank;
    return Mat(u.leftCols(rank));
  };
  if (std::max(m.rows(), m.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    return pick(svd.singularValues(), svd.matrixU());
  }
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU);
  return pick(svd.singularValues(), svd.matrixU());
}

Subspace subspace_span(const Mat& vectors, double tol) {
  Subspace s;
  s.ambient_dim = vectors.rows();
  s.basis = orthonormal_columns(vectors, tol);
  s.tol = tol > 0.0 ? tol : default_rank_tol(vectors);
  return s;
}

Subspace subspace_complement(const Subspace& a) {
  const Index n = a.ambient_dim;
  const Index r = a.dim();
  if (r == 0) {
    Subspace full;
    full.ambient_dim = n;
    full.basis = Mat::Identity(n, n);
    full.tol = a.tol;
    return full;
  }
  Eigen::HouseholderQR<Mat> qr(a.basis);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Subspace c;
  c.ambient_dim = n;
  c.basis = q.rightCols(n - r);
  c.tol = a.tol;
  return c;
}

double subspace_distance(const Mat& a, const Mat& b) {
  if (a.cols() == 0) return 0.0;
  if (b.cols() == 0) return 1.0;
  Mat resid = a - b * (b.adjoint() * a);
  return spectral_norm(resid);
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim != b.ambient_dim)
    fail(ErrorCode::DimensionMismatch, "ambient dimensions differ");
  if (a.dim() != b.dim()) return false;
  // Principal angle theta <= tol iff sin(theta) <= sin(tol); for the
  // small tolerances used here sin(tol) ~ tol.
  return subspace_distance(a.basis, b.basis) <= tol &&
         subspace_distance(b.basis, a.basis) <= tol;
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim != b.ambient_dim)
    fail(ErrorCode::DimensionMismatch, "ambient dimensions differ");
  Subspace out;
  out.ambient_dim = a.ambient_dim;
  out.tol = tol;
  if (a.dim() == 0 || b.dim() == 0) {
    out.basis = Mat(a.ambient_dim, 0);
    return out;
  }
  Mat overlap = a.basis.adjoint() * b.basis;
  Eigen::JacobiSVD<Mat> svd(overlap, Eigen::ComputeThinU);
  const RVec& sv = svd.singularValues();
  Index k = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] >= 1.0 - tol) ++k;
  Mat dirs = a.basis * svd.matrixU().leftCols(k);
  out.basis = orthonormal_columns(dirs);
  return out;
}

Subspace subspace_minus(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim != b.ambient_dim)
    fail(ErrorCode::DimensionMismatch, "ambient dimensions differ");
  Subspace out;
  out.ambient_dim = a.ambient_dim;
  out.tol = tol;
  if (b.dim() == 0) {
    out.basis = a.basis;
    return out;
  }
  Mat resid = a.basis - b.basis * (b.basis.adjoint() * a.basis);
  out.basis = orthonormal_columns(resid, tol);
  return out;
}

}  // namespace dynframe::numkit
