#include <benchmark/benchmark.h>

#include <random>

#include "heisec/gadgets.hpp"
#include "heisec/reductions.hpp"
#include "heisec/words.hpp"

using namespace heisec;

namespace {

std::vector<HeisenbergElement> random_elements(int d, int count, int magnitude) {
  std::mt19937_64 gen(42);
  std::uniform_int_distribution<int> dist(-magnitude, magnitude);
  std::vector<HeisenbergElement> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    HeisenbergElement g;
    for (int k = 0; k < d; ++k) {
      g.a.emplace_back(dist(gen));
      g.b.emplace_back(dist(gen));
    }
    g.c = dist(gen);
    out.push_back(std::move(g));
  }
  return out;
}

void BM_HeisenbergMultiply(benchmark::State& state) {
  auto elems = random_elements(static_cast<int>(state.range(0)), 256, 1000);
  std::size_t i = 0;
  for (auto _ : state) {
    auto r = h_multiply(elems[i % elems.size()], elems[(i + 1) % elems.size()]);
    benchmark::DoNotOptimize(r);
    ++i;
  }
}
BENCHMARK(BM_HeisenbergMultiply)->Arg(1)->Arg(2)->Arg(8);

void BM_EvaluateWord(benchmark::State& state) {
  Alphabet a = tyx_alphabet();
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> letter(0, 2);
  Word w;
  for (int i = 0; i < state.range(0); ++i) w.indices.push_back(letter(gen));
  for (auto _ : state) {
    auto r = evaluate_word(a, w);
    benchmark::DoNotOptimize(r);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateWord)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_FindWordsProp21(benchmark::State& state) {
  Alphabet a = tyx_alphabet();
  AmbientElement y(h_from_y({Int(1)}));
  EnumerationBudget budget;
  budget.max_len = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = find_words_with_value(a, y, budget);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_FindWordsProp21)->Arg(7)->Arg(9)->Arg(11);

void BM_UniqueProductPermutations(benchmark::State& state) {
  UniqueProductGadget g = make_unique_product_gadget(static_cast<int>(state.range(0)));
  EnumerationBudget budget;
  for (auto _ : state) {
    auto cert = verify_gadget(g, UniqueProductMode::Permutations, budget);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_UniqueProductPermutations)->Arg(4)->Arg(6)->Arg(7);

void BM_MembershipSearch(benchmark::State& state) {
  SubmonoidPresentation a{GroupDescriptor::lattice(1), {AmbientElement(LatticeElement{{Int(1)}})}};
  SubmonoidPresentation b{GroupDescriptor::lattice(1), {AmbientElement(LatticeElement{{Int(2)}})}};
  SectionReduction red = build_pair_product_section(a, b);
  AmbientElement query =
      red.make_pair(AmbientElement(LatticeElement{{Int(state.range(0))}}),
                    AmbientElement(h_from_y({Int(1)})));
  EnumerationBudget budget;
  budget.max_len = 2 * static_cast<int>(state.range(0)) + 1;
  for (auto _ : state) {
    auto v = bounded_submonoid_membership(red, query, budget);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_MembershipSearch)->Arg(4)->Arg(8)->Arg(12);

void BM_MainIdentityEnumeration(benchmark::State& state) {
  MainGadgetElements m = make_main_gadget_elements(make_h5_vectors(3));
  EnumerationBudget budget;
  budget.max_l = 2;
  budget.max_len = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto cert = verify_gadget(m, budget);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_MainIdentityEnumeration)->Arg(5)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
