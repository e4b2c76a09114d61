#pragma once

#include "dynframe/frames.hpp"
#include "dynframe/hardy.hpp"
#include "dynframe/numkit.hpp"
#include "dynframe/operators.hpp"
#include "dynframe/types.hpp"

namespace dynframe::defect {

struct DefectData {
  numkit::HermMat d;               // (I - T T*)^(1/2)
  numkit::Subspace defect_space;   // closed range of I - T T*
  Index index = 0;                 // its dimension
};

// Throws NotContraction when |T| > 1 + tol.
DefectData compute(const ops::OperatorSpec& t, double tol = 1e-8);

// dim (I - T T*) H for admissible T, 0 otherwise.
Index parseval_index(const ops::OperatorSpec& t, double tol = 1e-8);

// Generators D g_i over an orthonormal basis {g_i} of the defect space;
// the resulting system of iterates is Parseval with exactly
// parseval_index(T) linearly independent generators.
frames::FrameSystem parseval_generators(const ops::OperatorSpec& t,
                                        double tol = 1e-8);

struct RotaEmbedding {
  Mat l;  // maps C^d into the truncated Hardy space, degree-major
  hardy::TruncHardy space;
  double isometry_defect = 0.0;    // |L* L - I|, equals |T^{m+1}|^2
  double intertwine_defect = 0.0;  // |S* L - L T*| away from the top degree
  double tail_amplitude = 0.0;     // |T^{m+1}|, the amplitude-level tail
};

// L v = sum_n D (T*)^n v chi^n truncated at degree m.
RotaEmbedding rota_embed(const ops::OperatorSpec& t, Index m, double tol = 1e-8);

// Smallest cutoff m with |T^{m+1}|^2 <= tol; throws TailNotCertified
// beyond the search cap.
Index horizon_for(const ops::OperatorSpec& t, double tol);

struct ModelSpaceChecks {
  double constants_overlap_sigma_min = 0.0;  // injectivity of P_N on constants
};

// Image of the embedding as a backward-shift-invariant subspace.
hardy::ModelSpace model_space_of(const ops::OperatorSpec& t, Index m,
                                 double tol = 1e-8,
                                 ModelSpaceChecks* checks = nullptr);

}  // namespace dynframe::defect
