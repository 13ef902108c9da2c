//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_AGENTS_MEMORY_HPP_
#define RXNSCOPE_AGENTS_MEMORY_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rxnscope::agents {

struct ArchiveEntry {
  int step;
  std::string key;
  nlohmann::json value;
};

/// Short-term scratch for the running step, an append-only archive, and a
/// key -> value digest of completed work. Confined to one run.
class Memory {
public:
  /// Starts a new step's scratch space.
  void begin_step(int step);
  void note(nlohmann::json scratch);
  const std::vector<nlohmann::json> &short_term() const { return short_; }

  /// Appends to the archive and overwrites the digest entry.
  void put(const std::string &key, nlohmann::json value);
  /// Appends to the archive only.
  void archive(const std::string &key, nlohmann::json value);

  /// Digest first, then the newest archive entry; nullopt when absent.
  std::optional<nlohmann::json> get(const std::string &key) const;
  nlohmann::json digest() const;

  const std::vector<ArchiveEntry> &long_term() const { return long_; }
  int current_step() const { return step_; }

private:
  int step_ = -1;
  std::vector<nlohmann::json> short_;
  std::vector<ArchiveEntry> long_;
  std::map<std::string, nlohmann::json> dynamic_;
};

}  // namespace rxnscope::agents

#endif  // RXNSCOPE_AGENTS_MEMORY_HPP_
