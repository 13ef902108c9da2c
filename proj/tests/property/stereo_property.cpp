//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include "rxnscope/chemops.hpp"
#include "rxnscope/smiles.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rxnscope;
using namespace rxnscope::testing;

namespace {

std::string perceived(const MolecularGraph &g) {
  return canonical_smiles(perceive_stereo(g).graph);
}

}  // namespace

TEST_SUITE("stereo") {

TEST_CASE("wedge perception agrees with the 3D signed-volume oracle") {
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < 50; ++k) {
    WedgeDrawing d = random_wedge_drawing(rng, k % 2 == 0);
    CAPTURE(k);
    CAPTURE(d.expected_smiles);
    CHECK(perceived(d.graph) == canonicalize(d.expected_smiles));
  }
}

TEST_CASE("mirroring the drawing and swapping wedges changes nothing") {
  std::mt19937_64 rng(kSeed + 1);
  for (int k = 0; k < 50; ++k) {
    WedgeDrawing d = random_wedge_drawing(rng, k % 2 == 1);
    CAPTURE(k);
    CHECK(perceived(flip_wedges(mirror_drawing(d.graph))) == perceived(d.graph));
    // The reflection alone is the enantiomer.
    CHECK(perceived(mirror_drawing(d.graph)) != perceived(d.graph));
  }
}

TEST_CASE("flipping the wedges inverts the center") {
  std::mt19937_64 rng(kSeed + 2);
  for (int k = 0; k < 50; ++k) {
    WedgeDrawing d = random_wedge_drawing(rng, k % 2 == 0);
    CAPTURE(k);
    std::string flipped = perceived(flip_wedges(d.graph));
    CHECK(flipped != perceived(d.graph));
    CHECK(canonicalize(flipped, false) == canonicalize(d.expected_smiles, false));
  }
}

}  // TEST_SUITE
