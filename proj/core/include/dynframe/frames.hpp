#pragma once

#include <optional>
#include <string>

#include "dynframe/numkit.hpp"
#include "dynframe/operators.hpp"
#include "dynframe/types.hpp"

namespace dynframe::frames {

// How the semi-infinite orbit {T^n v_i} is summed: exactly through the
// Stein equation, or as a truncated series with a certified tail.
struct HorizonPolicy {
  enum class Kind { exact_stein, series };
  Kind kind = Kind::exact_stein;
  Index max_power = 0;
  double tail_tol = 0.0;

  static HorizonPolicy exact() { return {}; }
  static HorizonPolicy series(Index max_power, double tail_tol) {
    return {Kind::series, max_power, tail_tol};
  }
};

struct FrameSystem {
  ops::OperatorSpec op;
  Mat generators;  // columns v_1..v_k
  HorizonPolicy policy;

  FrameSystem(ops::OperatorSpec op_, Mat generators_,
              HorizonPolicy policy_ = HorizonPolicy::exact());

  Index dim() const { return op.dim(); }
  Index generator_count() const { return generators.cols(); }
};

struct FrameTolerances {
  double frame_ratio = 1e-8;   // is_frame iff lambda_min > ratio * lambda_max
  double parseval_tol = 1e-8;  // is_parseval iff |S - I| <= parseval_tol
};

struct FrameReport {
  double lower_bound = 0.0;  // A
  double upper_bound = 0.0;  // B
  bool is_frame = false;
  bool is_parseval = false;
  double parseval_defect = 0.0;  // |S - I|
  numkit::HermMat frame_operator;
  double tail_bound = 0.0;  // nonzero under a series policy
};

// Frame operator S of {T^n v_i}: the solution of S - T S T* = sum v_i v_i*.
numkit::HermMat frame_operator(const FrameSystem& sys);

FrameReport frame_bounds(const FrameSystem& sys, FrameTolerances tol = {});

struct Reconstruction {
  Vec approx;
  double residual = 0.0;
  double tail_estimate = 0.0;
};

// Canonical-dual reconstruction x ~ sum_{n<=M,i} <x, S^-1 T^n v_i> T^n v_i.
Reconstruction reconstruct(const FrameSystem& sys, const Vec& x, Index horizon);

// One column per (power n <= M, generator i) pair, power-major.
Mat synthesis_matrix(const FrameSystem& sys, Index max_power);
numkit::Subspace synthesis_kernel(const FrameSystem& sys, Index max_power,
                                  double tol = 0.0);

// Linearly independent generators with the same Gram sum (hence the same
// frame operator, bounds, and Parseval flag) and the same span.
FrameSystem reduce_generators(const FrameSystem& sys);

struct IndexOracleResult {
  Index gamma = 0;
  Mat witness_generators;
  FrameReport witness_report;
  std::uint64_t seed_used = 0;
};

// Desk-scale frame index: the largest eigenspace dimension of T (the
// invariant-factor count), witnessed by seeded random generators that
// are verified to produce a frame.
IndexOracleResult frame_index_oracle(const ops::OperatorSpec& t,
                                     std::uint64_t seed = 0x5eed);

}  // namespace dynframe::frames
