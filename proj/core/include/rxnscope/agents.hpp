//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_AGENTS_HPP_
#define RXNSCOPE_AGENTS_HPP_

#include "rxnscope/agents/backend.hpp"
#include "rxnscope/agents/detection.hpp"
#include "rxnscope/agents/memory.hpp"
#include "rxnscope/agents/observer.hpp"
#include "rxnscope/agents/pipeline.hpp"
#include "rxnscope/agents/plan.hpp"
#include "rxnscope/agents/tools.hpp"

#endif  // RXNSCOPE_AGENTS_HPP_
