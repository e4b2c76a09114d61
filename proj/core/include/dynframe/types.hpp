#pragma once

#include <complex>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dynframe {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kEps = 2.220446049250313e-16;

// Error taxonomy shared by all modules. Each value maps to one failure mode
// of the numerical contracts; the CLI maps them onto exit codes.
enum class ErrorCode {
  NonHermitian,
  NotPSD,
  DimensionMismatch,
  Unstable,
  Singular,
  Borderline,
  NotAFrame,
  TailNotCertified,
  NotContraction,
  NotAdmissible,
  Degenerate,
  NotInvariant,
  DegreeOverflow,
  CutoffTooSmall,
  Overflow,
  VerdictMismatch,
  CertificateFailed,
  NotInDisc,
  InvalidArgument,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::Borderline: return "Borderline";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::TailNotCertified: return "TailNotCertified";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::VerdictMismatch: return "VerdictMismatch";
    case ErrorCode::CertificateFailed: return "CertificateFailed";
    case ErrorCode::NotInDisc: return "NotInDisc";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, std::string(error_name(code)) + ": " + msg);
}

// Deterministic complex Gaussian draws; all randomized procedures in the
// library are seeded explicitly so runs are reproducible.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double gauss() { return normal_(gen_); }

  Complex cgauss() {
    const double re = normal_(gen_);
    const double im = normal_(gen_);
    return Complex(re, im) / std::sqrt(2.0);
  }

  double uniform() { return unif_(gen_); }

  Vec cgauss_vec(Index n) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = cgauss();
    return v;
  }

  Mat cgauss_mat(Index r, Index c) {
    Mat m(r, c);
    for (Index j = 0; j < c; ++j)
      for (Index i = 0; i < r; ++i) m(i, j) = cgauss();
    return m;
  }

private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

inline bool all_finite(const Mat& m) { return m.allFinite(); }

}  // namespace dynframe
