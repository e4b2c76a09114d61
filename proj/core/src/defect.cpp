#include "dynframe/defect.hpp"

#include <cmath>
#include <utility>

#include <Eigen/SVD>

namespace dynframe::defect {

using numkit::HermMat;
using numkit::Subspace;
using ops::OperatorSpec;

namespace {

Mat defect_square(const OperatorSpec& t) {
  Mat tm = t.matrix();
  return Mat::Identity(t.dim(), t.dim()) - tm * tm.adjoint();
}

// Deterministic basis of the range of a Hermitian PSD matrix: SVD order
// (descending singular values) with each column's largest entry rotated
// to the positive real axis.
Mat phase_fixed_range_basis(const Mat& m, double tol) {
  Mat basis = numkit::orthonormal_columns(m, tol);
  for (Index j = 0; j < basis.cols(); ++j) {
    Index imax = 0;
    basis.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = basis(imax, j);
    if (std::abs(pivot) > 0.0) basis.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
  return basis;
}

}  // namespace

DefectData compute(const OperatorSpec& t, double tol) {
  const double nrm = ops::op_norm(t);
  if (nrm > 1.0 + tol)
    fail(ErrorCode::NotContraction,
         "operator norm " + std::to_string(nrm) + " exceeds 1 + tol");
  Mat sq = defect_square(t);
  HermMat sq_herm(sq, 1e-10);
  DefectData data{numkit::psd_sqrt(sq_herm), Subspace{}, 0};
  data.index = numkit::numerical_rank(sq, tol);
  data.defect_space.ambient_dim = t.dim();
  data.defect_space.basis = phase_fixed_range_basis(sq, tol);
  data.defect_space.basis.conservativeResize(t.dim(), data.index);
  data.defect_space.tol = tol;
  return data;
}

Index parseval_index(const OperatorSpec& t, double tol) {
  ops::AdmissibilityReport rep = ops::admissibility(t, tol);
  if (!rep.admits_parseval) return 0;
  return compute(t, tol).index;
}

frames::FrameSystem parseval_generators(const OperatorSpec& t, double tol) {
  ops::AdmissibilityReport rep = ops::admissibility(t, tol);
  if (!rep.admits_parseval)
    fail(ErrorCode::NotAdmissible,
         "operator does not admit a Parseval frame of iterates");
  DefectData data = compute(t, tol);
  if (data.index == 0)
    fail(ErrorCode::Degenerate, "defect space is trivial (T is unitary-like)");
  Mat gens = data.d.mat() * data.defect_space.basis;
  return frames::FrameSystem(t, std::move(gens));
}

Index horizon_for(const OperatorSpec& t, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  const Mat tm = t.matrix();
  Mat p = tm;
  constexpr Index kMaxHorizon = 1 << 14;
  Index m = 0;
  while (m < kMaxHorizon) {
    const double nn = numkit::spectral_norm(p);
    if (nn * nn <= tol) return m;
    p = (p * tm).eval();
    ++m;
  }
  fail(ErrorCode::TailNotCertified,
       "no horizon below the cap reaches tolerance " + std::to_string(tol));
}

RotaEmbedding rota_embed(const OperatorSpec& t, Index m, double tol) {
  ops::AdmissibilityReport rep = ops::admissibility(t, tol);
  if (!rep.admits_parseval)
    fail(ErrorCode::NotAdmissible, "embedding requires an admissible contraction");
  if (m < 1) fail(ErrorCode::InvalidArgument, "cutoff must be >= 1");

  DefectData data = compute(t, tol);
  const Index k = std::max<Index>(data.index, 1);
  RotaEmbedding out;
  out.space = hardy::TruncHardy{k, m};

  // Row block n holds the defect-space coordinates of D (T*)^n.
  const Mat dmat = data.d.mat();
  const Mat tadj = t.adjoint_matrix();
  Mat coords = data.defect_space.basis.adjoint() * dmat;  // k x d
  out.l = Mat::Zero(out.space.dim(), t.dim());
  Mat pw = Mat::Identity(t.dim(), t.dim());
  for (Index n = 0; n <= m; ++n) {
    out.l.block(n * k, 0, k, t.dim()) = coords * pw;
    pw = (tadj * pw).eval();
  }
  // pw now holds (T*)^{m+1}; the Gram telescopes to I - T^{m+1} T*^{m+1}.
  out.tail_amplitude = numkit::spectral_norm(pw);
  out.isometry_defect = numkit::spectral_norm(
      out.l.adjoint() * out.l - Mat::Identity(t.dim(), t.dim()));
  if (out.isometry_defect > out.tail_amplitude * out.tail_amplitude + 1e-10)
    fail(ErrorCode::TailNotCertified, "isometry defect exceeds the tail bound");

  // S* L - L T* vanishes away from the top degree.
  Mat bk = hardy::backshift_matrix(out.space);
  Mat resid = bk * out.l - out.l * tadj;
  resid.bottomRows(k).setZero();
  out.intertwine_defect = numkit::spectral_norm(resid);
  return out;
}

hardy::ModelSpace model_space_of(const OperatorSpec& t, Index m, double tol,
                                 ModelSpaceChecks* checks) {
  RotaEmbedding emb = rota_embed(t, m, tol);
  hardy::ModelSpace n;
  n.space = emb.space;
  n.basis = numkit::subspace_span(emb.l, 1e-10);
  n.source = "image of the defect embedding";
  n.tail_tol = emb.tail_amplitude;

  Mat bk = hardy::backshift_matrix(emb.space);
  Mat resid = bk * n.basis.basis -
              n.basis.basis * (n.basis.basis.adjoint() * (bk * n.basis.basis));
  n.invariance_defect = numkit::spectral_norm(resid);

  if (checks) {
    // Injectivity of P_N on the constants: smallest singular value of
    // N* restricted to the degree-zero block.
    const Index k = emb.space.mult;
    Mat overlap = n.basis.basis.topRows(k).adjoint();  // dimN x k
    Eigen::JacobiSVD<Mat> svd(overlap);
    checks->constants_overlap_sigma_min =
        svd.singularValues().size() > 0
            ? svd.singularValues()[svd.singularValues().size() - 1]
            : 0.0;
  }
  return n;
}

}  // namespace dynframe::defect
