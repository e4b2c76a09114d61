#include <benchmark/benchmark.h>

#include <dynframe/defect.hpp>
#include <dynframe/frames.hpp>
#include <dynframe/hardy.hpp>
#include <dynframe/inner.hpp>
#include <dynframe/numkit.hpp>

using namespace dynframe;

namespace {

Mat contraction_of_dim(Index d, double norm) {
  Rng rng(0xBE7C4 + static_cast<std::uint64_t>(d));
  Mat g = rng.cgauss_mat(d, d);
  return g * (norm / numkit::spectral_norm(g));
}

void BM_SteinSolve(benchmark::State& state) {
  const Index d = state.range(0);
  Mat t = contraction_of_dim(d, 0.8);
  Rng rng(5);
  Mat g = rng.cgauss_mat(d, d);
  numkit::HermMat v(Mat(g * g.adjoint()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(numkit::stein_solve(t, v));
  }
  state.SetComplexityN(d);
}
BENCHMARK(BM_SteinSolve)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_ParsevalGenerators(benchmark::State& state) {
  const Index d = state.range(0);
  ops::OperatorSpec t = ops::OperatorSpec::dense(contraction_of_dim(d, 0.85));
  for (auto _ : state) {
    frames::FrameSystem sys = defect::parseval_generators(t);
    benchmark::DoNotOptimize(sys.generators);
  }
}
BENCHMARK(BM_ParsevalGenerators)->RangeMultiplier(2)->Range(4, 32);

void BM_BlaschkeCoeffs(benchmark::State& state) {
  const Index deg = state.range(0);
  std::vector<Complex> zeros;
  for (Index k = 0; k < deg; ++k)
    zeros.emplace_back(0.7 * std::cos(1.0 + k), 0.7 * std::sin(1.0 + k));
  inner::BlaschkeProduct b = inner::BlaschkeProduct::from_zeros(zeros);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inner::blaschke_coeffs(b, 256));
  }
}
BENCHMARK(BM_BlaschkeCoeffs)->Arg(2)->Arg(4)->Arg(8);

void BM_ModelSpace(benchmark::State& state) {
  const Index m = state.range(0);
  inner::MatrixInner q = inner::MatrixInner::diag(
      {inner::BlaschkeProduct::from_zeros({Complex(0.5), Complex(-0.3, 0.4)})});
  hardy::TruncHardy h{1, m};
  for (auto _ : state) {
    hardy::ModelSpace n = hardy::model_space(q, h);
    benchmark::DoNotOptimize(n.basis.basis);
  }
}
BENCHMARK(BM_ModelSpace)->Arg(40)->Arg(80)->Arg(160);

void BM_AdjointFrame(benchmark::State& state) {
  const Index m = state.range(0);
  inner::MatrixInner q = inner::MatrixInner::diag(
      {inner::BlaschkeProduct::from_zeros({Complex(0.5)}),
       inner::BlaschkeProduct::from_zeros({Complex(0.0, 0.4)})});
  hardy::TruncHardy h{2, m};
  for (auto _ : state) {
    hardy::AdjointFrameResult adj = hardy::adjoint_frame(q, h);
    benchmark::DoNotOptimize(adj.system.generators);
  }
}
BENCHMARK(BM_AdjointFrame)->Arg(40)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
