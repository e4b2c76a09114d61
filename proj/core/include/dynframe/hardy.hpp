#pragma once

#include <string>
#include <utility>

#include "dynframe/frames.hpp"
#include "dynframe/inner.hpp"
#include "dynframe/numkit.hpp"
#include "dynframe/operators.hpp"
#include "dynframe/types.hpp"

namespace dynframe::hardy {

// Truncated vector Hardy space: multiplicity d, degrees 0..m, stacked
// degree-major (coefficient a_n occupies entries n*d .. n*d+d-1).
struct TruncHardy {
  Index mult = 1;
  Index cutoff = 0;

  Index dim() const { return mult * (cutoff + 1); }
  Index index(Index degree, Index coord) const { return degree * mult + coord; }

  bool operator==(const TruncHardy&) const = default;
};

struct HardyVec {
  TruncHardy space;
  Vec coeffs;

  HardyVec(TruncHardy s, Vec c);
  static HardyVec zero(TruncHardy s) { return HardyVec(s, Vec::Zero(s.dim())); }
  // The constant function with value v.
  static HardyVec constant(TruncHardy s, const Vec& v);

  Eigen::VectorBlock<Vec> block(Index degree) {
    return coeffs.segment(degree * space.mult, space.mult);
  }
  Vec block_at(Index degree) const {
    return coeffs.segment(degree * space.mult, space.mult);
  }
  double norm() const { return coeffs.norm(); }
};

// Multiplication by z; the top coefficient must vanish or Overflow is
// thrown (truncation boundary).
HardyVec shift(const HardyVec& f);
// (f - f(0)) / z; exact on the truncation.
HardyVec backshift(const HardyVec& f);

Mat shift_matrix(const TruncHardy& h);      // drops the outgoing top block
Mat backshift_matrix(const TruncHardy& h);

struct ModelSpace {
  TruncHardy space;
  numkit::Subspace basis;  // orthonormal, ambient dim d*(m+1)
  std::string source;
  double tail_tol = 0.0;
  double invariance_defect = 0.0;

  Index dim() const { return basis.dim(); }
};

// Q(z) f(z) as coefficient convolution; degrees past the cutoff must
// carry no mass or DegreeOverflow is thrown.
HardyVec mult_by_inner(const inner::MatrixInner& q, const HardyVec& f);

// Truncation of Q H^2: span of Q e_i chi^n over all degrees n that keep
// the product exactly representable (per-column degree budget).
numkit::Subspace invariant_subspace(const inner::MatrixInner& q,
                                    const TruncHardy& h);

// Truncation of H^2 ominus Q H^2 together with its tail estimate.
ModelSpace model_space(const inner::MatrixInner& q, const TruncHardy& h);

// Matrix of P_N S on the basis of N.
ops::OperatorSpec compression(const ModelSpace& n);

// Parseval frame {A_N^n (P_N e_i)} of N, in N coordinates; zero
// generators (constants orthogonal to N) are dropped.
frames::FrameSystem basic_frame(const ModelSpace& n);

// W = M ominus S M, computed through the exact backshift adjoint.
numkit::Subspace wandering_subspace(const numkit::Subspace& m, const TruncHardy& h,
                                    double tol = 1e-8);

struct FullRangeReport {
  bool is_full_range = false;
  Index min_rank = 0;
};

// Minimum numerical rank of Q(z) over a uniform torus grid.
FullRangeReport full_range_check(const inner::MatrixInner& q, Index grid_points = 64);

struct AdjointFrameResult {
  frames::FrameSystem system;  // operator S*|_N in N coordinates
  ModelSpace space;
  Mat wandering_images;  // columns E_i = Q e_i that survived
};

// Parseval frame {(S*)^n S* E_i} of N with E_i = Q e_i; constant columns
// of Q contribute S* E_i = 0 and are dropped.
AdjointFrameResult adjoint_frame(const inner::MatrixInner& q, const TruncHardy& h);

// Closure of (U - A_N) N re-expressed in the analytic truncation.
numkit::Subspace script_L(const ModelSpace& n);

struct WanderingSplit {
  numkit::Subspace w;        // wandering subspace of M = complement of N
  numkit::Subspace k0;       // W intersect constants
  numkit::Subspace w1;       // W ominus K0
  numkit::Subspace k1;       // constants ominus K0
};

WanderingSplit wandering_split(const ModelSpace& n, double tol = 1e-6);

struct OptimalFrames {
  frames::FrameSystem for_op;
  frames::FrameSystem for_adjoint;
  Index generator_count = 0;
};

// Simultaneous minimal Parseval frames for T and T*, built through the
// isometric embedding into the truncated Hardy space.
OptimalFrames optimal_frames(const ops::OperatorSpec& t, Index m);

struct AdjointModelResult {
  ModelSpace n_rho;
  bool roundtrip_ok = false;
};

// Model space of rho(Q), plus the involution round trip check.
AdjointModelResult basic_of_adjoint(const inner::MatrixInner& q, const TruncHardy& h);

}  // namespace dynframe::hardy
