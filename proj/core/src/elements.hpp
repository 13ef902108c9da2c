//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_SRC_ELEMENTS_HPP_
#define RXNSCOPE_SRC_ELEMENTS_HPP_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rxnscope::internal {

bool is_element_symbol(std::string_view symbol);

// B C N O P S F Cl Br I: may be written outside brackets.
bool is_organic_subset(std::string_view symbol);

// Elements that may carry a lowercase aromatic spelling.
bool is_aromatic_capable(std::string_view symbol);

// Default (neutral) valences in increasing order; empty when unknown.
std::span<const int> default_valences(std::string_view symbol);

// Allowed valence states for a charged atom, or nullopt when the element is
// outside the valence table and must not be checked.
std::optional<std::vector<int>> allowed_valences(std::string_view symbol,
                                                 int charge);

int atomic_number(std::string_view symbol);

}  // namespace rxnscope::internal

#endif  // RXNSCOPE_SRC_ELEMENTS_HPP_
