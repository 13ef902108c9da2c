//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_TOOLS_CLI_HPP_
#define RXNSCOPE_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace rxnscope::cli {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one command. args excludes the program name. JSON goes to out,
/// diagnostics to err.
int dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err);

}  // namespace rxnscope::cli

#endif  // RXNSCOPE_TOOLS_CLI_HPP_
