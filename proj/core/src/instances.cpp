#include "dynframe/instances.hpp"

#include <cmath>

namespace dynframe::instances {

using ops::OperatorSpec;

namespace {

void check_in_disc(const std::vector<Complex>& lambdas) {
  for (const Complex& l : lambdas)
    if (!(std::abs(l) < 1.0))
      fail(ErrorCode::NotInDisc, "entry with |lambda| >= 1");
}

}  // namespace

OperatorSpec carleson_diag(const std::vector<Complex>& lambdas) {
  check_in_disc(lambdas);
  Vec d(static_cast<Index>(lambdas.size()));
  for (Index i = 0; i < d.size(); ++i) d[i] = lambdas[i];
  return OperatorSpec::diagonal(std::move(d));
}

double carleson_margin(const std::vector<Complex>& lambdas) {
  check_in_disc(lambdas);
  const Index n = static_cast<Index>(lambdas.size());
  if (n <= 1) return 1.0;
  double margin = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < n; ++k) {
    double prod = 1.0;
    for (Index j = 0; j < n; ++j) {
      if (j == k) continue;
      prod *= std::abs(lambdas[k] - lambdas[j]) /
              std::abs(1.0 - std::conj(lambdas[k]) * lambdas[j]);
    }
    margin = std::min(margin, prod);
  }
  return margin;
}

OperatorSpec head_multiplicity_diag(Index n, const std::vector<Complex>& lambdas) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "need N >= 2");
  if (lambdas.empty()) fail(ErrorCode::InvalidArgument, "need a sequence");
  check_in_disc(lambdas);
  Vec d(n - 1 + static_cast<Index>(lambdas.size()));
  for (Index i = 0; i < n - 1; ++i) d[i] = lambdas[0];
  for (Index i = 0; i < static_cast<Index>(lambdas.size()); ++i)
    d[n - 1 + i] = lambdas[i];
  return OperatorSpec::diagonal(std::move(d));
}

OperatorSpec stable_non_contraction(const std::vector<Complex>& lambdas) {
  check_in_disc(lambdas);
  const Index d = 2 + static_cast<Index>(lambdas.size());
  Mat t = Mat::Zero(d, d);
  t(1, 0) = 2.0;  // T e_1 = 2 e_2, T e_2 = 0
  for (Index i = 0; i < static_cast<Index>(lambdas.size()); ++i)
    t(2 + i, 2 + i) = lambdas[i];
  return OperatorSpec::dense(std::move(t));
}

Mat stable_non_contraction_witness(const std::vector<Complex>& lambdas) {
  const Index d = 2 + static_cast<Index>(lambdas.size());
  Mat gens = Mat::Zero(d, 2);
  gens(0, 0) = 1.0;  // e_1 reaches the nilpotent chain {e_1, 2 e_2}
  for (Index i = 0; i < static_cast<Index>(lambdas.size()); ++i)
    gens(2 + i, 1) = std::sqrt(1.0 - std::norm(lambdas[i]));
  return gens;
}

std::vector<Complex> dyadic_carleson(Index count) {
  std::vector<Complex> out;
  out.reserve(count);
  for (Index k = 1; k <= count; ++k)
    out.emplace_back(1.0 - std::pow(2.0, -static_cast<double>(k)), 0.0);
  return out;
}

std::vector<Complex> leveled_carleson(Index count) {
  std::vector<Complex> out;
  out.reserve(count);
  Index level = 1;
  while (static_cast<Index>(out.size()) < count) {
    const double r = 1.0 - std::pow(2.0, -static_cast<double>(level));
    const Index per_level = Index(1) << (level - 1);
    for (Index j = 0; j < per_level && static_cast<Index>(out.size()) < count; ++j) {
      const double theta =
          2.0 * M_PI * static_cast<double>(j) / static_cast<double>(per_level);
      out.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
    ++level;
  }
  return out;
}

}  // namespace dynframe::instances
