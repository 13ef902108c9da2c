//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "rxnscope/agents.hpp"
#include "rxnscope/eval.hpp"
#include "rxnscope/rgroup.hpp"
#include "rxnscope/smiles.hpp"
#include "rxnscope/substructure.hpp"

using namespace rxnscope;

namespace {

const char *kProduct
    = "CC[C@]1(c2ccccc2)O[C@H](c2ccccc2Cl)N(S(=O)(=O)c2ccc(C)cc2)C1=O";
const char *kTemplate
    = "[Ar]C1([R])O[C@H](c2ccccc2Cl)N(S(=O)(=O)c2ccc(C)cc2)C1=O";

void BM_Canonicalize(benchmark::State &state) {
  for (auto _: state)
    benchmark::DoNotOptimize(canonicalize(kProduct));
}
BENCHMARK(BM_Canonicalize);

void BM_FindMatches(benchmark::State &state) {
  MolecularGraph pattern = parse_smiles("c1ccccc1");
  MolecularGraph target = parse_smiles(kProduct);
  for (auto _: state)
    benchmark::DoNotOptimize(find_matches(pattern, target));
}
BENCHMARK(BM_FindMatches);

void BM_Fingerprint(benchmark::State &state) {
  MolecularGraph g = parse_smiles(kProduct);
  for (auto _: state)
    benchmark::DoNotOptimize(fingerprint(g));
}
BENCHMARK(BM_Fingerprint);

void BM_ExtractRGroups(benchmark::State &state) {
  MolecularGraph tmpl = parse_smiles(kTemplate);
  MolecularGraph variant = parse_smiles(kProduct);
  for (auto _: state)
    benchmark::DoNotOptimize(extract_rgroup_fragments(tmpl, variant));
}
BENCHMARK(BM_ExtractRGroups);

void BM_ExtractBundle(benchmark::State &state) {
  const std::string bundle = std::string(RXNSCOPE_FIXTURE_DIR) + "/fig2";
  agents::InputDescriptor d = agents::load_bundle(bundle);
  for (auto _: state) {
    auto tools = agents::make_bundle_registry(
        bundle, AbbreviationTable::defaults(), ConditionLexicon::defaults());
    agents::ScriptedBackend backend;
    benchmark::DoNotOptimize(agents::run_extraction(d, *tools, backend));
  }
}
BENCHMARK(BM_ExtractBundle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
