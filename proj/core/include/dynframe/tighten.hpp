#pragma once

#include "dynframe/frames.hpp"
#include "dynframe/operators.hpp"
#include "dynframe/types.hpp"

namespace dynframe::tighten {

struct TightenResult {
  ops::OperatorSpec q;             // S^{-1/2} T S^{1/2}
  frames::FrameSystem tightened;   // generators S^{-1/2} v_i
  double parseval_defect = 0.0;
  double q_norm = 0.0;
};

// Canonical tightening of a frame of iterates. Throws NotAFrame when the
// system fails the frame test (a non-frame has no tightening).
TightenResult canonical_tighten(const frames::FrameSystem& sys);

struct IndexCertificate {
  Index gamma = 0;
  ops::OperatorSpec q;
  bool check = false;
  Index rank_defect_q = 0;         // rank(I - Q Q*)
  double stein_residual = 0.0;     // |S - T S T* - sum g_j g_j*|
  double q_norm = 0.0;
};

// Realizes gamma(T) = gamma_p(Q) = rank(I - Q Q*) numerically: oracle
// witness, reduction to independent generators, canonical tightening,
// rank comparison. A failed comparison throws CertificateFailed with the
// residuals in the message (it signals tolerances, not mathematics).
IndexCertificate index_certificate(const ops::OperatorSpec& t,
                                   std::uint64_t seed = 0x5eed);

}  // namespace dynframe::tighten
