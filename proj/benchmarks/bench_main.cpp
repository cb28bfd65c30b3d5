#include <fstream>
#include <sstream>

#include <benchmark/benchmark.h>

#include "castml/cas/factor.hpp"
#include "castml/cas/protocol.hpp"
#include "castml/compiler.hpp"
#include "castml/math/translator.hpp"

namespace {

void BM_TranslateSpan(benchmark::State& state) {
  const char* spans[] = {"x^2+1", "\\frac{a+b}{2}", "\\sqrt[3]{\\alpha_i^2}", "e^{i\\pi}+1", "\\sin x\\cdot\\cos y"};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(castml::math::translate_span(spans[i++ % 5], false));
  }
}
BENCHMARK(BM_TranslateSpan);

void BM_FactorPowerMinusOne(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  castml::cas::Poly p = castml::cas::Poly::monomial("x", 1, n) - castml::cas::Poly("x", {1});
  for (auto _ : state) benchmark::DoNotOptimize(castml::cas::factor_poly(p));
}
BENCHMARK(BM_FactorPowerMinusOne)->Arg(10)->Arg(30)->Arg(64);

void BM_CompileCorpus(benchmark::State& state) {
  std::ifstream in(CASTML_CORPUS, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  const std::string source = s.str();
  for (auto _ : state) benchmark::DoNotOptimize(castml::compile_document(source));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * source.size()));
}
BENCHMARK(BM_CompileCorpus);

void BM_Evaluate(benchmark::State& state) {
  const castml::cas::EvalRequest requests[] = {
      {"c1", "factor(x^10-1)", castml::cas::EvalMode::Math},
      {"c2", "plot(sin(x))", castml::cas::EvalMode::Text},
      {"c3", "diff(sin(x)^2*exp(x))", castml::cas::EvalMode::Math},
      {"c4", "expand((x+1)^12)", castml::cas::EvalMode::Text},
  };
  const auto& req = requests[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(castml::cas::evaluate(req));
  state.SetLabel(req.command);
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
