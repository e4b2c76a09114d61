#pragma once

#include <utility>
#include <vector>

#include "dynframe/types.hpp"

namespace dynframe::numkit {

// Hermitian matrix with the symmetry checked once at construction:
// max|M - M*| <= 1e-12 * (1 + max|M|).
class HermMat {
public:
  HermMat() = default;  // empty 0x0 placeholder
  explicit HermMat(Mat m, double sym_tol = 1e-12);

  const Mat& mat() const { return m_; }
  Index dim() const { return m_.rows(); }

  static HermMat identity(Index n) { return HermMat(Mat::Identity(n, n)); }
  static HermMat zero(Index n) { return HermMat(Mat::Zero(n, n)); }

private:
  Mat m_;
};

struct EigResult {
  RVec eigenvalues;  // ascending
  Mat eigenvectors;  // unitary, columns match eigenvalues
};

struct Subspace {
  Index ambient_dim = 0;
  Mat basis;  // orthonormal columns
  double tol = 1e-10;

  Index dim() const { return basis.cols(); }
};

EigResult herm_eig(const HermMat& m);

// PSD square root with eigenvalue clamping: eigenvalues in
// [-1e-10*|M|, 0) are treated as roundoff and set to zero, anything
// below that window throws NotPSD.
HermMat psd_sqrt(const HermMat& m);

// Number of singular values above rel_tol * sigma_max. rel_tol <= 0
// selects the default max(rows, cols) * eps.
Index numerical_rank(const Mat& m, double rel_tol = 0.0);

double spectral_norm(const Mat& m);
double spectral_radius_of(const Mat& m);

// Solves S - T S T* = V for the unique Hermitian S (spectral radius of
// T must be < 1). Dimensions up to kSteinDirectLimit go through a
// Schur-form triangular solve; larger ones through a squaring iteration
// whose omitted tail T^N S (T*)^N is driven below roundoff.
inline constexpr Index kSteinDirectLimit = 64;
HermMat stein_solve(const Mat& t, const HermMat& v);

Subspace subspace_span(const Mat& vectors, double tol = 0.0);
Subspace subspace_complement(const Subspace& a);
bool subspace_equal(const Subspace& a, const Subspace& b, double tol);

// Largest principal-angle sine between span(a) and span(b); the basis
// matrices must have orthonormal columns.
double subspace_distance(const Mat& a, const Mat& b);

// Common directions of two subspaces (principal vectors with cos(angle)
// >= 1 - tol).
Subspace subspace_intersection(const Subspace& a, const Subspace& b, double tol = 1e-8);

// Orthogonal difference a ominus b: the part of a orthogonal to b.
Subspace subspace_minus(const Subspace& a, const Subspace& b, double tol = 1e-8);

Mat orthonormal_columns(const Mat& m, double tol = 0.0);

}  // namespace dynframe::numkit
