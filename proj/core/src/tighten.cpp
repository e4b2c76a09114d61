#include "dynframe/tighten.hpp"

#include <cmath>
#include <utility>

namespace dynframe::tighten {

using frames::FrameSystem;
using numkit::HermMat;
using ops::OperatorSpec;

namespace {

// S^{1/2} and S^{-1/2} from one eigendecomposition; the is_frame
// precondition keeps the spectrum floored away from zero, so no
// pseudo-inverse fallback is needed.
std::pair<Mat, Mat> sqrt_and_invsqrt(const HermMat& s) {
  numkit::EigResult eig = numkit::herm_eig(s);
  Vec half(eig.eigenvalues.size());
  Vec invhalf(eig.eigenvalues.size());
  for (Index i = 0; i < half.size(); ++i) {
    const double root = std::sqrt(eig.eigenvalues[i]);
    half[i] = root;
    invhalf[i] = 1.0 / root;
  }
  Mat vh = eig.eigenvectors;
  return {vh * half.asDiagonal() * vh.adjoint(),
          vh * invhalf.asDiagonal() * vh.adjoint()};
}

}  // namespace

TightenResult canonical_tighten(const FrameSystem& sys) {
  frames::FrameReport rep = frame_bounds(sys);
  if (!rep.is_frame)
    fail(ErrorCode::NotAFrame, "cannot tighten: lower frame bound is zero");

  auto [shalf, sinvhalf] = sqrt_and_invsqrt(rep.frame_operator);
  OperatorSpec q = OperatorSpec::dense(sinvhalf * sys.op.matrix() * shalf);
  FrameSystem tightened(q, sinvhalf * sys.generators, sys.policy);
  frames::FrameReport tight_rep = frame_bounds(tightened);
  const double q_norm = ops::op_norm(q);
  return TightenResult{std::move(q), std::move(tightened),
                       tight_rep.parseval_defect, q_norm};
}

IndexCertificate index_certificate(const OperatorSpec& t, std::uint64_t seed) {
  frames::IndexOracleResult oracle = frames::frame_index_oracle(t, seed);
  FrameSystem reduced =
      frames::reduce_generators(FrameSystem(t, oracle.witness_generators));

  // The Stein identity S - T S T* = sum_j g_j g_j* for the reduced witness.
  HermMat s = frames::frame_operator(reduced);
  Mat tm = t.matrix();
  Mat stein_resid = s.mat() - tm * s.mat() * tm.adjoint() -
                    reduced.generators * reduced.generators.adjoint();

  TightenResult tight = canonical_tighten(reduced);
  Mat qm = tight.q.matrix();
  Mat defect_q = Mat::Identity(t.dim(), t.dim()) - qm * qm.adjoint();

  IndexCertificate cert{oracle.gamma, tight.q, false, 0, 0.0, 0.0};
  // Rank tolerance absorbs the conditioning of S^{+-1/2}.
  cert.rank_defect_q = numkit::numerical_rank(defect_q, 1e-8);
  cert.stein_residual = numkit::spectral_norm(stein_resid);
  cert.q_norm = ops::op_norm(tight.q);
  cert.check = cert.rank_defect_q == cert.gamma &&
               cert.stein_residual <= 1e-10 * (1.0 + numkit::spectral_norm(s.mat())) &&
               cert.q_norm <= 1.0 + 1e-8;
  if (!cert.check)
    fail(ErrorCode::CertificateFailed,
         "index certificate mismatch: gamma=" + std::to_string(cert.gamma) +
             " rank(I-QQ*)=" + std::to_string(cert.rank_defect_q) +
             " stein_residual=" + std::to_string(cert.stein_residual) +
             " |Q|=" + std::to_string(cert.q_norm) +
             " (tolerance failure, not a counterexample)");
  return cert;
}

}  // namespace dynframe::tighten
