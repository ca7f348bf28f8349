#include <map>

#include <benchmark/benchmark.h>

#include "swiftnorm/cluster.hpp"
#include "swiftnorm/features.hpp"
#include "swiftnorm/ingest.hpp"
#include "swiftnorm/lsa.hpp"
#include "swiftnorm/preprocess.hpp"
#include "swiftnorm/similarity.hpp"
#include "swiftnorm/synth.hpp"

using namespace swiftnorm;

namespace {

// Corpus with roughly `forms` canonical forms; cached per size.
const Corpus& corpus_of(std::size_t forms) {
  static std::map<std::size_t, Corpus> cache;
  auto it = cache.find(forms);
  if (it == cache.end()) {
    SynthConfig cfg;
    cfg.n_entities = forms / 2;
    const auto synth = generate(cfg);
    it = cache.emplace(forms, build_corpus(parse_plain(synth.raw_lines(), "synth"))).first;
  }
  return it->second;
}

void BM_RatcliffObershelp(benchmark::State& state) {
  const std::string a = "ACME TRADING LIMITED HIGH STREET LONDON";
  const std::string b = "ACME TRADNG LTD HIGH STRET LONDON UK";
  for (auto _ : state) benchmark::DoNotOptimize(ratcliff_obershelp(a, b));
}
BENCHMARK(BM_RatcliffObershelp);

void BM_SimilarityMatrix(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(similarity_matrix(corpus, 1));
  state.counters["m"] = static_cast<double>(corpus.size());
}
BENCHMARK(BM_SimilarityMatrix)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EuclideanDistances(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<std::size_t>(state.range(0)));
  const Matrix sim = similarity_matrix(corpus, 1);
  for (auto _ : state) benchmark::DoNotOptimize(euclidean_distances(sim, 1));
}
BENCHMARK(BM_EuclideanDistances)->Arg(1000)->Arg(2500)->Unit(benchmark::kMillisecond);

void BM_Agglomerate(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<std::size_t>(state.range(0)));
  const auto features = tfidf_matrix(corpus, build_vocabulary(corpus, 1));
  AgglomerateOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(agglomerate(features, corpus, opts));
}
BENCHMARK(BM_Agglomerate)->Arg(1000)->Arg(2500)->Unit(benchmark::kMillisecond);

void BM_LsaDecompose(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<std::size_t>(state.range(0)));
  const auto tfidf = tfidf_matrix(corpus, build_vocabulary(corpus, 1));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(tfidf.values));
}
BENCHMARK(BM_LsaDecompose)->Arg(1000)->Arg(2500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
