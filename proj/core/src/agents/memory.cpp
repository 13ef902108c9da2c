//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/agents/memory.hpp"

namespace rxnscope::agents {

void Memory::begin_step(int step) {
  step_ = step;
  short_.clear();
}

void Memory::note(nlohmann::json scratch) {
  short_.push_back(std::move(scratch));
}

void Memory::put(const std::string &key, nlohmann::json value) {
  long_.push_back({ step_, key, value });
  dynamic_[key] = std::move(value);
}

void Memory::archive(const std::string &key, nlohmann::json value) {
  long_.push_back({ step_, key, std::move(value) });
}

std::optional<nlohmann::json> Memory::get(const std::string &key) const {
  auto it = dynamic_.find(key);
  if (it != dynamic_.end())
    return std::optional<nlohmann::json>(std::in_place, it->second);
  for (auto e = long_.rbegin(); e != long_.rend(); ++e)
    if (e->key == key)
      return std::optional<nlohmann::json>(std::in_place, e->value);
  return std::nullopt;
}

nlohmann::json Memory::digest() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto &[k, v]: dynamic_)
    j[k] = v;
  return j;
}

}  // namespace rxnscope::agents
