#pragma once

#include <dynframe/numkit.hpp>
#include <dynframe/operators.hpp>
#include <dynframe/types.hpp>

namespace dftest {

using namespace dynframe;

// Random dense matrix with prescribed spectral norm.
inline Mat random_with_norm(Rng& rng, Index d, double norm) {
  Mat g = rng.cgauss_mat(d, d);
  return g * (norm / numkit::spectral_norm(g));
}

// Random contraction with spectral radius strictly below `radius_cap`;
// scaling the norm below the cap forces the radius below it too.
inline Mat random_contraction(Rng& rng, Index d, double radius_cap) {
  return random_with_norm(rng, d, radius_cap * (0.25 + 0.74 * rng.uniform()));
}

inline Mat random_unitary(Rng& rng, Index d) {
  Mat g = rng.cgauss_mat(d, d);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  // Fix phases so the factor is unique given the input.
  Mat r = q.adjoint() * g;
  for (Index j = 0; j < d; ++j) {
    const Complex piv = r(j, j);
    if (std::abs(piv) > 0.0) q.col(j) *= piv / std::abs(piv);
  }
  return q;
}

// Independent summation oracle for the Stein equation: the truncated
// series sum_{n<=M} T^n V T*^n with M chosen from the norm tail bound.
inline Mat stein_series_oracle(const Mat& t, const Mat& v, double tail_tol) {
  Mat term = v;
  Mat sum = v;
  const double nrm = numkit::spectral_norm(t);
  Index max_power = 1 << 22;
  if (nrm < 1.0) {
    const double target = tail_tol * (1.0 - nrm * nrm) / numkit::spectral_norm(v);
    max_power =
        static_cast<Index>(std::ceil(std::log(target) / (2.0 * std::log(nrm)))) + 2;
  }
  for (Index n = 1; n <= max_power; ++n) {
    term = (t * term * t.adjoint()).eval();
    sum += term;
    if (numkit::spectral_norm(term) < tail_tol * 1e-3 && n > 4) break;
  }
  return sum;
}

// Uniform draw from the closed disc of the given radius.
inline Complex random_in_disc(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double t = 2.0 * M_PI * rng.uniform();
  return Complex(r * std::cos(t), r * std::sin(t));
}

inline Mat jordan_zero_block(Index d) {
  Mat j = Mat::Zero(d, d);
  for (Index i = 0; i + 1 < d; ++i) j(i, i + 1) = 1.0;
  return j;
}

// Stable operator with well-separated eigenvalues (spread over circles
// inside the disc) conjugated by a mildly non-normal similarity. Orbit
// Gram matrices of such operators stay far from the frame threshold,
// unlike fully clustered spectra whose single-generator systems are
// Vandermonde-degenerate in floating point.
inline Mat random_stable_spread(Rng& rng, Index d, double radius_cap) {
  Vec lam(d);
  const double base = 2.0 * M_PI * rng.uniform();
  for (Index i = 0; i < d; ++i) {
    const double r = radius_cap * (0.35 + 0.65 * rng.uniform());
    const double theta =
        base + 2.0 * M_PI * (static_cast<double>(i) + 0.25 * rng.uniform()) /
                   static_cast<double>(d);
    lam[i] = Complex(r * std::cos(theta), r * std::sin(theta));
  }
  Mat v = Mat::Identity(d, d) + 0.35 * rng.cgauss_mat(d, d);
  return v * lam.asDiagonal() * v.partialPivLu().solve(Mat::Identity(d, d));
}

}  // namespace dftest
