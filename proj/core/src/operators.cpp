#include "dynframe/operators.hpp"

#include <cmath>
#include <utility>

#include <Eigen/LU>

namespace dynframe::ops {

OperatorSpec OperatorSpec::dense(Mat m) {
  if (m.rows() != m.cols())
    fail(ErrorCode::InvalidArgument, "dense operator must be square");
  if (!all_finite(m))
    fail(ErrorCode::InvalidArgument, "dense operator has non-finite entries");
  OperatorSpec s;
  s.kind_ = Kind::dense;
  s.dim_ = m.rows();
  s.mat_ = std::move(m);
  return s;
}

OperatorSpec OperatorSpec::diagonal(Vec entries) {
  if (!entries.allFinite())
    fail(ErrorCode::InvalidArgument, "diagonal entries must be finite");
  OperatorSpec s;
  s.kind_ = Kind::diagonal;
  s.dim_ = entries.size();
  s.diag_ = std::move(entries);
  return s;
}

OperatorSpec OperatorSpec::compression(Mat m, std::string source) {
  if (m.rows() != m.cols())
    fail(ErrorCode::InvalidArgument, "compression matrix must be square");
  OperatorSpec s;
  s.kind_ = Kind::compression;
  s.dim_ = m.rows();
  s.mat_ = std::move(m);
  s.source_ = std::move(source);
  return s;
}

Mat OperatorSpec::matrix() const {
  if (kind_ == Kind::diagonal) return diag_.asDiagonal().toDenseMatrix();
  return mat_;
}

Mat OperatorSpec::adjoint_matrix() const { return matrix().adjoint(); }

OperatorSpec OperatorSpec::adjoint() const {
  if (kind_ == Kind::diagonal) return diagonal(diag_.conjugate());
  if (kind_ == Kind::compression)
    return compression(mat_.adjoint(), source_.empty() ? "" : source_ + "*");
  return dense(mat_.adjoint());
}

double op_norm(const OperatorSpec& t) {
  if (t.is_diagonal())
    return t.dim() == 0 ? 0.0 : t.diagonal_entries().cwiseAbs().maxCoeff();
  return numkit::spectral_norm(t.matrix());
}

double spectral_radius(const OperatorSpec& t) {
  if (t.is_diagonal())
    return t.dim() == 0 ? 0.0 : t.diagonal_entries().cwiseAbs().maxCoeff();
  return numkit::spectral_radius_of(t.matrix());
}

namespace {

bool unitary_within(const OperatorSpec& t, double tol) {
  Mat m = t.matrix();
  Mat g = m * m.adjoint() - Mat::Identity(t.dim(), t.dim());
  return numkit::spectral_norm(g) <= tol * (1.0 + numkit::spectral_norm(m));
}

}  // namespace

AdmissibilityReport admissibility(const OperatorSpec& t, double tol) {
  if (!(tol > 0.0 && tol < 0.1))
    fail(ErrorCode::InvalidArgument, "admissibility tol must lie in (0, 0.1)");
  AdmissibilityReport r;
  r.tol = tol;
  r.norm = op_norm(t);
  r.spectral_radius = spectral_radius(t);
  r.is_contraction = r.norm <= 1.0 + tol;
  r.adjoint_strongly_stable = r.spectral_radius < 1.0 - tol;
  r.admits_parseval = r.is_contraction && r.adjoint_strongly_stable;
  r.admits_frame = r.adjoint_strongly_stable;

  const double band = std::min(tol, 1e-8);
  const bool in_band = std::abs(r.spectral_radius - 1.0) <= band;
  if (in_band && !unitary_within(t, tol))
    fail(ErrorCode::Borderline,
         "spectral radius " + std::to_string(r.spectral_radius) +
             " within " + std::to_string(band) +
             " of 1: no finite-dimensional verdict");
  return r;
}

OperatorSpec similarity_transform(const OperatorSpec& t, const Mat& v) {
  if (v.rows() != v.cols() || v.rows() != t.dim())
    fail(ErrorCode::DimensionMismatch, "similarity matrix shape mismatch");
  Eigen::JacobiSVD<Mat> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  const double smax = sv[0];
  if (smax == 0.0 || smin <= static_cast<double>(v.rows()) * kEps * smax)
    fail(ErrorCode::Singular, "similarity matrix is singular at tolerance");
  Mat vinv = svd.matrixV() * sv.cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>() *
             svd.matrixU().adjoint();
  return OperatorSpec::dense(v * t.matrix() * vinv);
}

}  // namespace dynframe::ops
