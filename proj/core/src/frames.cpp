#include "dynframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dynframe::frames {

using numkit::HermMat;
using numkit::Subspace;
using ops::OperatorSpec;

FrameSystem::FrameSystem(OperatorSpec op_, Mat generators_, HorizonPolicy policy_)
    : op(std::move(op_)), generators(std::move(generators_)), policy(policy_) {
  if (generators.cols() < 1)
    fail(ErrorCode::InvalidArgument, "frame system needs at least one generator");
  if (generators.rows() != op.dim())
    fail(ErrorCode::DimensionMismatch, "generator ambient dimension mismatch");
  for (Index j = 0; j < generators.cols(); ++j)
    if (generators.col(j).norm() == 0.0)
      fail(ErrorCode::InvalidArgument, "zero generator column " + std::to_string(j));
}

namespace {

HermMat gram_sum(const Mat& generators) {
  Mat v = generators * generators.adjoint();
  return HermMat(std::move(v), 1e-10);
}

// Bound on |sum_{n>M} T^n V T*^n| / |V|.
double series_tail_factor(const Mat& t, Index max_power) {
  const double nrm = numkit::spectral_norm(t);
  if (nrm < 1.0) {
    return std::pow(nrm, 2.0 * static_cast<double>(max_power + 1)) /
           (1.0 - nrm * nrm);
  }
  // Powers eventually contract when the radius is < 1; bound the sum of
  // squared power norms by a block-geometric argument.
  Mat p = Mat::Identity(t.rows(), t.cols());
  double head = 0.0;
  double s = 1.0;
  Index k = 0;
  constexpr Index kMaxSteps = 4096;
  while (s > 0.5 && k < kMaxSteps) {
    head += s * s;
    p = (p * t).eval();
    s = numkit::spectral_norm(p);
    ++k;
  }
  if (s > 0.5) return std::numeric_limits<double>::infinity();
  const double total = head / (1.0 - s * s);
  Mat tp = Mat::Identity(t.rows(), t.cols());
  // T^{M+1} by binary powering.
  Index e = max_power + 1;
  Mat base = t;
  while (e > 0) {
    if (e & 1) tp = (tp * base).eval();
    base = (base * base).eval();
    e >>= 1;
  }
  const double pn = numkit::spectral_norm(tp);
  return pn * pn * total;
}

HermMat diagonal_stein(const Vec& lam, const Mat& v) {
  const Index d = lam.size();
  Mat s(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i)
      s(i, j) = v(i, j) / (1.0 - lam[i] * std::conj(lam[j]));
  return HermMat(std::move(s), 1e-8);
}

}  // namespace

HermMat frame_operator(const FrameSystem& sys) {
  HermMat v = gram_sum(sys.generators);
  if (sys.policy.kind == HorizonPolicy::Kind::exact_stein) {
    const double rho = ops::spectral_radius(sys.op);
    if (rho >= 1.0 - 1e-10)
      fail(ErrorCode::Unstable, "spectral radius " + std::to_string(rho) +
                                    " too close to 1 for the exact policy");
    if (sys.op.is_diagonal())
      return diagonal_stein(sys.op.diagonal_entries(), v.mat());
    return numkit::stein_solve(sys.op.matrix(), v);
  }
  // Truncated series with certified tail.
  const Mat t = sys.op.matrix();
  Mat x = v.mat();
  Mat s = x;
  for (Index n = 1; n <= sys.policy.max_power; ++n) {
    x = (t * x * t.adjoint()).eval();
    s += x;
  }
  const double bound =
      series_tail_factor(t, sys.policy.max_power) * numkit::spectral_norm(v.mat());
  if (!(bound <= sys.policy.tail_tol))
    fail(ErrorCode::TailNotCertified,
         "series tail bound " + std::to_string(bound) + " exceeds tail_tol " +
             std::to_string(sys.policy.tail_tol));
  s = 0.5 * (s + s.adjoint().eval());
  return HermMat(std::move(s), 1e-8);
}

FrameReport frame_bounds(const FrameSystem& sys, FrameTolerances tol) {
  FrameReport rep;
  rep.frame_operator = frame_operator(sys);
  if (sys.policy.kind == HorizonPolicy::Kind::series)
    rep.tail_bound = series_tail_factor(sys.op.matrix(), sys.policy.max_power) *
                     numkit::spectral_norm(gram_sum(sys.generators).mat());
  numkit::EigResult eig = numkit::herm_eig(rep.frame_operator);
  rep.lower_bound = std::max(eig.eigenvalues[0], 0.0);  // S is PSD; clip roundoff
  rep.upper_bound = eig.eigenvalues[eig.eigenvalues.size() - 1];
  rep.is_frame = rep.lower_bound > tol.frame_ratio * rep.upper_bound;
  rep.parseval_defect = numkit::spectral_norm(
      rep.frame_operator.mat() - Mat::Identity(sys.dim(), sys.dim()));
  rep.is_parseval = rep.parseval_defect <= tol.parseval_tol;
  return rep;
}

Reconstruction reconstruct(const FrameSystem& sys, const Vec& x, Index horizon) {
  if (x.size() != sys.dim())
    fail(ErrorCode::DimensionMismatch, "vector dimension mismatch");
  FrameReport rep = frame_bounds(sys);
  if (!rep.is_frame) fail(ErrorCode::NotAFrame, "system is not a frame");

  numkit::EigResult eig = numkit::herm_eig(rep.frame_operator);
  Vec inv_lam(eig.eigenvalues.size());
  for (Index i = 0; i < inv_lam.size(); ++i) inv_lam[i] = 1.0 / eig.eigenvalues[i];
  Vec y = eig.eigenvectors *
          (inv_lam.asDiagonal() * (eig.eigenvectors.adjoint() * x));

  // sum_{n<=M} T^n V V* T*^n y accumulated power by power.
  const Mat t = sys.op.matrix();
  const Mat& g = sys.generators;
  Vec acc = Vec::Zero(x.size());
  Mat tn_g = g;
  for (Index n = 0; n <= horizon; ++n) {
    acc += tn_g * (tn_g.adjoint() * y);
    tn_g = (t * tn_g).eval();
  }
  Reconstruction out;
  out.approx = acc;
  out.residual = (x - acc).norm();
  const double tail =
      series_tail_factor(t, horizon) * numkit::spectral_norm(gram_sum(g).mat());
  out.tail_estimate = tail / rep.lower_bound * x.norm();
  return out;
}

Mat synthesis_matrix(const FrameSystem& sys, Index max_power) {
  if (max_power < 0) fail(ErrorCode::InvalidArgument, "max_power must be >= 0");
  const Index k = sys.generator_count();
  const Mat t = sys.op.matrix();
  Mat out(sys.dim(), k * (max_power + 1));
  Mat tn_g = sys.generators;
  for (Index n = 0; n <= max_power; ++n) {
    out.block(0, n * k, sys.dim(), k) = tn_g;
    tn_g = (t * tn_g).eval();
  }
  return out;
}

Subspace synthesis_kernel(const FrameSystem& sys, Index max_power, double tol) {
  Mat c = synthesis_matrix(sys, max_power);
  Eigen::BDCSVD<Mat> svd(c, Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  const double rel =
      tol > 0.0 ? tol : static_cast<double>(std::max(c.rows(), c.cols())) * kEps;
  Index rank = 0;
  if (sv.size() > 0 && sv[0] > 0.0) {
    const double cutoff = rel * sv[0];
    for (Index i = 0; i < sv.size(); ++i)
      if (sv[i] > cutoff) ++rank;
  }
  Subspace ker;
  ker.ambient_dim = c.cols();
  ker.basis = svd.matrixV().rightCols(c.cols() - rank);
  ker.tol = rel;
  return ker;
}

FrameSystem reduce_generators(const FrameSystem& sys) {
  Eigen::JacobiSVD<Mat> svd(sys.generators, Eigen::ComputeThinU);
  const RVec& sv = svd.singularValues();
  const Index r = numkit::numerical_rank(sys.generators);
  Mat w = svd.matrixU().leftCols(r) * sv.head(r).asDiagonal();
  return FrameSystem(sys.op, std::move(w), sys.policy);
}

namespace {

struct EigenCluster {
  Complex center;
  Index count = 0;
};

std::vector<EigenCluster> cluster_eigenvalues(const Vec& lam, double ctol) {
  std::vector<EigenCluster> clusters;
  for (Index i = 0; i < lam.size(); ++i) {
    bool merged = false;
    for (auto& c : clusters) {
      if (std::abs(lam[i] - c.center) <= ctol) {
        c.center = (c.center * static_cast<double>(c.count) + lam[i]) /
                   static_cast<double>(c.count + 1);
        ++c.count;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({lam[i], 1});
  }
  return clusters;
}

Index kernel_dimension(const Mat& t, Complex lambda, double ctol) {
  Mat shifted = t - lambda * Mat::Identity(t.rows(), t.cols());
  Eigen::JacobiSVD<Mat> svd(shifted);
  const RVec& sv = svd.singularValues();
  const double scale = 1.0 + numkit::spectral_norm(t);
  const double cutoff =
      std::max(static_cast<double>(t.rows()) * kEps * scale, 4.0 * ctol);
  Index dim = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] <= cutoff) ++dim;
  return dim;
}

}  // namespace

IndexOracleResult frame_index_oracle(const OperatorSpec& t, std::uint64_t seed) {
  const double rho = ops::spectral_radius(t);
  if (rho >= 1.0 - 1e-10)
    fail(ErrorCode::Unstable, "frame index oracle needs spectral radius < 1");
  const Index d = t.dim();

  Vec lam;
  if (t.is_diagonal()) {
    lam = t.diagonal_entries();
  } else {
    Eigen::ComplexEigenSolver<Mat> es(t.matrix(), false);
    lam = es.eigenvalues();
  }
  const double ctol = 1e-8 * (1.0 + lam.cwiseAbs().maxCoeff());

  Index gamma = 0;
  const Mat tm = t.matrix();
  for (const auto& c : cluster_eigenvalues(lam, ctol))
    gamma = std::max(gamma, kernel_dimension(tm, c.center, ctol));
  gamma = std::max<Index>(gamma, 1);

  // Witness: generic seeded vectors, weighted by the defect square root
  // when T is a contraction so the orbit sums stay well conditioned.
  Mat weight = Mat::Identity(d, d);
  if (ops::op_norm(t) <= 1.0) {
    Mat g = Mat::Identity(d, d) - tm * tm.adjoint();
    weight = numkit::psd_sqrt(HermMat(std::move(g), 1e-10)).mat();
  }

  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    Mat gens = weight * rng.cgauss_mat(d, gamma);
    bool nonzero = true;
    for (Index j = 0; j < gens.cols(); ++j)
      if (gens.col(j).norm() == 0.0) nonzero = false;
    if (!nonzero) continue;
    FrameSystem sys(t, gens);
    FrameReport rep = frame_bounds(sys);
    if (rep.is_frame) {
      IndexOracleResult out;
      out.gamma = gamma;
      out.witness_generators = std::move(gens);
      out.witness_report = std::move(rep);
      out.seed_used = seed + static_cast<std::uint64_t>(attempt);
      return out;
    }
  }
  fail(ErrorCode::CertificateFailed,
       "no seeded witness with " + std::to_string(gamma) +
           " generators verified as a frame after 8 attempts");
}

}  // namespace dynframe::frames
