#pragma once

#include <string>

#include "dynframe/numkit.hpp"
#include "dynframe/types.hpp"

namespace dynframe::ops {

// Evolution operator in finite dimension. Diagonal operators keep their entry
// list (several instances exploit exact eigenvalues); shift compressions
// carry the compressed matrix plus a description of where it came from.
class OperatorSpec {
public:
  enum class Kind { dense, diagonal, compression };

  static OperatorSpec dense(Mat m);
  static OperatorSpec diagonal(Vec entries);
  static OperatorSpec compression(Mat m, std::string source);

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  bool is_diagonal() const { return kind_ == Kind::diagonal; }
  const Vec& diagonal_entries() const { return diag_; }
  const std::string& source() const { return source_; }

  Mat matrix() const;
  Mat adjoint_matrix() const;
  OperatorSpec adjoint() const;

private:
  Kind kind_ = Kind::dense;
  Index dim_ = 0;
  Mat mat_;
  Vec diag_;
  std::string source_;
};

struct AdmissibilityReport {
  double norm = 0.0;
  double spectral_radius = 0.0;
  bool is_contraction = false;
  bool adjoint_strongly_stable = false;
  bool admits_parseval = false;
  bool admits_frame = false;
  double tol = 0.0;
};

double op_norm(const OperatorSpec& t);
double spectral_radius(const OperatorSpec& t);

inline constexpr double kDefaultAdmissibilityTol = 1e-8;

// Finite-dimensional semantics: the adjoint is strongly stable iff the
// spectral radius is < 1 - tol, and "similar to a contraction" holds on
// the same condition. A radius within min(tol, 1e-8) of 1 has no
// finite-dimensional verdict and throws Borderline, except for
// operators that are unitary within tolerance, where the flags are
// false regardless of how the radius resolves.
AdmissibilityReport admissibility(const OperatorSpec& t,
                                  double tol = kDefaultAdmissibilityTol);

// V T V^{-1} as a dense operator. Throws Singular when V is not
// invertible at the rank tolerance.
OperatorSpec similarity_transform(const OperatorSpec& t, const Mat& v);

}  // namespace dynframe::ops
