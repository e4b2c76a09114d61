#include "dynframe/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "dynframe/defect.hpp"

namespace dynframe::hardy {

using inner::BlaschkeProduct;
using inner::MatrixInner;
using numkit::Subspace;

HardyVec::HardyVec(TruncHardy s, Vec c) : space(s), coeffs(std::move(c)) {
  if (coeffs.size() != space.dim())
    fail(ErrorCode::DimensionMismatch, "coefficient vector does not fit the space");
}

HardyVec HardyVec::constant(TruncHardy s, const Vec& v) {
  if (v.size() != s.mult)
    fail(ErrorCode::DimensionMismatch, "constant value dimension mismatch");
  HardyVec f = zero(s);
  f.coeffs.head(s.mult) = v;
  return f;
}

HardyVec shift(const HardyVec& f) {
  const Index d = f.space.mult;
  const Index m = f.space.cutoff;
  const double top = f.block_at(m).norm();
  if (top > 1e-12 * (1.0 + f.norm()))
    fail(ErrorCode::Overflow, "top-degree coefficient is nonzero; shift would truncate");
  HardyVec out = HardyVec::zero(f.space);
  out.coeffs.segment(d, d * m) = f.coeffs.head(d * m);
  return out;
}

HardyVec backshift(const HardyVec& f) {
  const Index d = f.space.mult;
  const Index m = f.space.cutoff;
  HardyVec out = HardyVec::zero(f.space);
  out.coeffs.head(d * m) = f.coeffs.tail(d * m);
  return out;
}

Mat shift_matrix(const TruncHardy& h) {
  Mat s = Mat::Zero(h.dim(), h.dim());
  for (Index n = 0; n + 1 <= h.cutoff; ++n)
    s.block((n + 1) * h.mult, n * h.mult, h.mult, h.mult) =
        Mat::Identity(h.mult, h.mult);
  return s;
}

Mat backshift_matrix(const TruncHardy& h) { return shift_matrix(h).adjoint(); }

HardyVec mult_by_inner(const MatrixInner& q, const HardyVec& f) {
  if (q.dim() != f.space.mult)
    fail(ErrorCode::DimensionMismatch, "multiplicity mismatch");
  const Index m = f.space.cutoff;
  const Index deg = q.degree();
  double high_mass = 0.0;
  for (Index n = std::max<Index>(0, m - deg + 1); n <= m; ++n)
    high_mass += f.block_at(n).squaredNorm();
  if (std::sqrt(high_mass) > 1e-12 * (1.0 + f.norm()))
    fail(ErrorCode::DegreeOverflow,
         "f carries mass above degree m - deg(Q); product would truncate");
  const std::vector<Mat> qc = q.coeffs(m);
  HardyVec out = HardyVec::zero(f.space);
  for (Index n = 0; n <= m; ++n) {
    Vec acc = Vec::Zero(q.dim());
    for (Index k = 0; k <= n; ++k) acc += qc[k] * f.block_at(n - k);
    out.block(n) = acc;
  }
  return out;
}

namespace {

// Numerator polynomial of a Blaschke product: alpha z^M prod (a_i - z)^mult,
// so that b = numerator / prod (1 - conj(a_i) z)^mult. Polynomial columns
// make the truncated shift-invariant subspace exact:
// b H^2 intersected with polynomials of degree <= m equals
// numerator * poly_{m - deg}.
Vec numerator_poly(const BlaschkeProduct& b, Index m) {
  Vec p = Vec::Zero(m + 1);
  if (b.power() > m)
    fail(ErrorCode::CutoffTooSmall, "numerator degree exceeds the cutoff");
  p[b.power()] = b.alpha();
  for (const auto& zero : b.zeros()) {
    for (Index rep = 0; rep < zero.multiplicity; ++rep) {
      Vec next = Vec::Zero(m + 1);
      for (Index i = 0; i <= m; ++i) {
        if (p[i] == 0.0) continue;
        next[i] += p[i] * zero.a;
        if (i + 1 <= m) next[i + 1] -= p[i];
      }
      p = std::move(next);
    }
  }
  return p;
}

struct ColumnFamily {
  // Per ambient coordinate block: polynomial coefficient vectors of the
  // numerator of each diagonal entry, plus the constant mixing matrix.
  std::vector<Vec> polys;   // one per diagonal entry (or column for constant)
  Mat mix;                  // left unitary factor (identity when absent)
  std::vector<Index> degrees;
};

ColumnFamily column_family(const MatrixInner& q, Index m) {
  ColumnFamily fam;
  const Index d = q.dim();
  if (q.kind() == MatrixInner::Kind::constant) {
    fam.mix = q.left();
    for (Index j = 0; j < d; ++j) {
      Vec p = Vec::Zero(m + 1);
      p[0] = 1.0;
      fam.polys.push_back(std::move(p));
      fam.degrees.push_back(0);
    }
    return fam;
  }
  fam.mix = q.kind() == MatrixInner::Kind::product ? q.left()
                                                   : Mat::Identity(d, d);
  for (const auto& b : q.diag_entries()) {
    fam.polys.push_back(numerator_poly(b, m));
    fam.degrees.push_back(b.degree());
  }
  return fam;
}

}  // namespace

Subspace invariant_subspace(const MatrixInner& q, const TruncHardy& h) {
  if (q.dim() != h.mult)
    fail(ErrorCode::DimensionMismatch, "multiplicity mismatch");
  const Index m = h.cutoff;
  const Index d = h.mult;
  if (q.degree() > m)
    fail(ErrorCode::DegreeOverflow, "inner degree exceeds the cutoff");
  ColumnFamily fam = column_family(q, m);

  Index total = 0;
  for (Index j = 0; j < d; ++j) total += m - fam.degrees[j] + 1;
  Mat cols = Mat::Zero(h.dim(), total);
  Index c = 0;
  for (Index j = 0; j < d; ++j) {
    const Vec& p = fam.polys[j];
    const Index deg = fam.degrees[j];
    const Vec dir = fam.mix.col(j);
    for (Index n = 0; n + deg <= m; ++n, ++c)
      for (Index k = 0; k <= deg; ++k)
        cols.col(c).segment((n + k) * d, d) += p[k] * dir;
  }
  return numkit::subspace_span(cols);
}

ModelSpace model_space(const MatrixInner& q, const TruncHardy& h) {
  if (h.cutoff < q.degree() + 8)
    fail(ErrorCode::CutoffTooSmall, "need cutoff m >= deg(Q) + 8");
  Subspace m_sub = invariant_subspace(q, h);
  ModelSpace n;
  n.space = h;
  n.basis = numkit::subspace_complement(m_sub);
  n.source = "model space of structured inner function";

  double r = 0.0;
  if (q.kind() != MatrixInner::Kind::constant)
    for (const auto& b : q.diag_entries())
      for (const auto& z : b.zeros()) r = std::max(r, std::abs(z.a));
  n.tail_tol = r == 0.0 ? 0.0
                        : std::pow(r, static_cast<double>(h.cutoff - q.degree() + 1)) /
                              (1.0 - r);

  if (n.basis.dim() > 0) {
    Mat bk = backshift_matrix(h);
    Mat resid = bk * n.basis.basis -
                n.basis.basis * (n.basis.basis.adjoint() * (bk * n.basis.basis));
    n.invariance_defect = numkit::spectral_norm(resid);
  }
  return n;
}

ops::OperatorSpec compression(const ModelSpace& n) {
  Mat sh = shift_matrix(n.space);
  Mat a = n.basis.basis.adjoint() * sh * n.basis.basis;
  return ops::OperatorSpec::compression(std::move(a), n.source);
}

frames::FrameSystem basic_frame(const ModelSpace& n) {
  if (n.dim() < 1) fail(ErrorCode::Degenerate, "model space is trivial");
  const Index d = n.space.mult;
  std::vector<Vec> gens;
  for (Index i = 0; i < d; ++i) {
    Vec e = Vec::Zero(n.space.dim());
    e[i] = 1.0;
    Vec g = n.basis.basis.adjoint() * e;
    if (g.norm() > 1e-6) gens.push_back(std::move(g));
  }
  if (gens.empty())
    fail(ErrorCode::Degenerate, "all constants project to zero");
  Mat g(n.dim(), static_cast<Index>(gens.size()));
  for (Index j = 0; j < g.cols(); ++j) g.col(j) = gens[j];
  return frames::FrameSystem(compression(n), std::move(g));
}

Subspace wandering_subspace(const numkit::Subspace& m, const TruncHardy& h,
                            double tol) {
  if (m.ambient_dim != h.dim())
    fail(ErrorCode::DimensionMismatch, "subspace does not live in the truncation");
  // S-invariance defect, measured on basis columns whose shifts stay
  // fully inside the truncation.
  Mat sh = shift_matrix(h);
  double defect = 0.0;
  for (Index j = 0; j < m.dim(); ++j) {
    Vec x = m.basis.col(j);
    if (x.tail(h.mult).norm() > 1e-8) continue;  // boundary column
    Vec sx = sh * x;
    defect = std::max(defect, (sx - m.basis * (m.basis.adjoint() * sx)).norm());
  }
  if (defect > std::max(tol, 1e-6))
    fail(ErrorCode::NotInvariant,
         "shift-invariance defect " + std::to_string(defect));

  // x in W iff x in M and S* x orthogonal to M; the backshift is the
  // exact adjoint of the truncated shift, so no boundary loss here.
  Subspace comp = numkit::subspace_complement(m);
  Mat bk = backshift_matrix(h);
  Mat a(comp.dim() + m.dim(), h.dim());
  a.topRows(comp.dim()) = comp.basis.adjoint();
  a.bottomRows(m.dim()) = m.basis.adjoint() * bk;

  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  const double cutoff = std::max(tol, 1e-8) * (sv.size() > 0 ? sv[0] : 1.0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  Subspace w;
  w.ambient_dim = h.dim();
  w.basis = svd.matrixV().rightCols(h.dim() - rank);
  w.tol = tol;
  return w;
}

FullRangeReport full_range_check(const MatrixInner& q, Index grid_points) {
  if (grid_points < 8)
    fail(ErrorCode::InvalidArgument, "need at least 8 grid points");
  FullRangeReport rep;
  rep.min_rank = q.dim();
  for (Index k = 0; k < grid_points; ++k) {
    const double theta = 2.0 * M_PI * static_cast<double>(k) /
                         static_cast<double>(grid_points);
    Mat qz = q.eval(Complex(std::cos(theta), std::sin(theta)));
    rep.min_rank = std::min(rep.min_rank, numkit::numerical_rank(qz, 1e-10));
  }
  rep.is_full_range = rep.min_rank == q.dim();
  return rep;
}

AdjointFrameResult adjoint_frame(const MatrixInner& q, const TruncHardy& h) {
  ModelSpace n = model_space(q, h);
  if (n.dim() < 1) fail(ErrorCode::Degenerate, "model space is trivial");
  const Index d = h.mult;
  const std::vector<Mat> qc = q.coeffs(h.cutoff);

  Mat wandering(h.dim(), d);
  for (Index i = 0; i < d; ++i) {
    HardyVec ei = HardyVec::zero(h);
    for (Index nn = 0; nn <= h.cutoff; ++nn) ei.block(nn) = qc[nn].col(i);
    wandering.col(i) = ei.coeffs;
  }

  std::vector<Vec> gens;
  std::vector<Index> kept;
  Mat bk = backshift_matrix(h);
  for (Index i = 0; i < d; ++i) {
    Vec se = bk * wandering.col(i);
    Vec g = n.basis.basis.adjoint() * se;
    if (g.norm() > 1e-6) {
      gens.push_back(std::move(g));
      kept.push_back(i);
    }
  }
  if (gens.empty()) fail(ErrorCode::Degenerate, "all adjoint generators vanish");
  Mat g(n.dim(), static_cast<Index>(gens.size()));
  for (Index j = 0; j < g.cols(); ++j) g.col(j) = gens[j];

  Mat star = n.basis.basis.adjoint() * bk * n.basis.basis;
  AdjointFrameResult out{
      frames::FrameSystem(
          ops::OperatorSpec::compression(std::move(star), "S* on " + n.source),
          std::move(g)),
      std::move(n), Mat(h.dim(), static_cast<Index>(kept.size()))};
  for (Index j = 0; j < static_cast<Index>(kept.size()); ++j)
    out.wandering_images.col(j) = wandering.col(kept[j]);
  return out;
}

Subspace script_L(const ModelSpace& n) {
  if (n.dim() < 1) fail(ErrorCode::Degenerate, "model space is trivial");
  const TruncHardy h = n.space;
  const Index d = h.mult;
  const Index ext_dim = h.dim() + d;  // degrees 0..m+1; U never underflows here

  Mat sh = shift_matrix(h);
  Mat cols(ext_dim, n.dim());
  for (Index j = 0; j < n.dim(); ++j) {
    Vec x = n.basis.basis.col(j);
    Vec ux = Vec::Zero(ext_dim);
    ux.tail(h.dim()) = x;  // exact multiplication by z into degree m+1
    Vec ax = n.basis.basis * (n.basis.basis.adjoint() * (sh * x));
    ux.head(h.dim()) -= ax;
    cols.col(j) = ux;
  }
  Subspace ext = numkit::subspace_span(cols, 1e-10);

  // The theory puts this span inside the analytic part; the degree m+1
  // block only carries truncation noise. Drop it and renormalize.
  double top_mass = 0.0;
  if (ext.dim() > 0)
    top_mass = ext.basis.bottomRows(d).norm() / std::sqrt(double(ext.dim()));
  if (top_mass > 1e-3)
    fail(ErrorCode::CutoffTooSmall,
         "(U - A_N)N leaks " + std::to_string(top_mass) +
             " past the cutoff; increase m");
  Mat trimmed = ext.basis.topRows(h.dim());
  Subspace out = numkit::subspace_span(trimmed, 1e-8);
  return out;
}

WanderingSplit wandering_split(const ModelSpace& n, double tol) {
  const TruncHardy h = n.space;
  WanderingSplit split;
  Subspace m = numkit::subspace_complement(n.basis);
  split.w = wandering_subspace(m, h, tol);

  Subspace constants;
  constants.ambient_dim = h.dim();
  constants.basis = Mat::Zero(h.dim(), h.mult);
  constants.basis.topRows(h.mult) = Mat::Identity(h.mult, h.mult);
  constants.tol = tol;

  split.k0 = numkit::subspace_intersection(split.w, constants, tol);
  split.w1 = numkit::subspace_minus(split.w, split.k0, tol);
  split.k1 = numkit::subspace_minus(constants, split.k0, tol);
  return split;
}

OptimalFrames optimal_frames(const ops::OperatorSpec& t, Index m) {
  defect::RotaEmbedding rota = defect::rota_embed(t, m);
  hardy::ModelSpace n = defect::model_space_of(t, m);
  const TruncHardy h = rota.space;

  // Inverse of the embedding on its image.
  Mat gram = rota.l.adjoint() * rota.l;
  Mat v = gram.partialPivLu().solve(rota.l.adjoint());

  const Index k = h.mult;
  Mat for_op_gens(t.dim(), k);
  for (Index j = 0; j < k; ++j) {
    Vec e = Vec::Zero(h.dim());
    e[j] = 1.0;
    Vec pn = n.basis.basis * (n.basis.basis.adjoint() * e);
    for_op_gens.col(j) = v * pn;
  }

  Subspace msub = numkit::subspace_complement(n.basis);
  // Wandering directions carry the amplitude-level truncation tail of
  // the embedded kernels; the rank cut must sit above it.
  const double wtol = std::max(1e-8, 32.0 * rota.tail_amplitude);
  Subspace w = wandering_subspace(msub, h, wtol);
  if (w.dim() != k)
    fail(ErrorCode::CutoffTooSmall,
         "wandering subspace dimension " + std::to_string(w.dim()) +
             " does not match the defect index " + std::to_string(k));
  Mat bk = backshift_matrix(h);
  Mat for_adj_gens(t.dim(), k);
  for (Index j = 0; j < k; ++j) {
    Vec se = bk * w.basis.col(j);
    Vec pn = n.basis.basis * (n.basis.basis.adjoint() * se);
    for_adj_gens.col(j) = v * pn;
  }

  OptimalFrames out{
      frames::FrameSystem(t, std::move(for_op_gens)),
      frames::FrameSystem(ops::OperatorSpec::dense(t.adjoint_matrix()),
                          std::move(for_adj_gens)),
      k};
  return out;
}

AdjointModelResult basic_of_adjoint(const MatrixInner& q, const TruncHardy& h) {
  AdjointModelResult out{model_space(inner::rho_matrix(q), h), false};
  ModelSpace round = model_space(inner::rho_matrix(inner::rho_matrix(q)), h);
  ModelSpace original = model_space(q, h);
  out.roundtrip_ok =
      numkit::subspace_equal(round.basis, original.basis, 1e-10);
  return out;
}

}  // namespace dynframe::hardy
