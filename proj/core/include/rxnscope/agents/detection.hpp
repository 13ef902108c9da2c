//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_AGENTS_DETECTION_HPP_
#define RXNSCOPE_AGENTS_DETECTION_HPP_

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rxnscope/error.hpp"

namespace rxnscope::agents {

/// Coordinate token or class marker ("MOL").
using DetectionToken = std::variant<long long, std::string>;

struct BoundingBox {
  long long x1 = 0;
  long long y1 = 0;
  long long x2 = 0;
  long long y2 = 0;
  std::string kind;

  bool operator==(const BoundingBox &) const = default;
};

class DetectionError: public Error {
public:
  DetectionError(std::size_t offset, const std::string &message)
      : Error("detection_error",
              message + " at token " + std::to_string(offset)),
        offset_(offset) { }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Consecutive [x1, y1, x2, y2, marker] groups become boxes in order; kind is
/// the marker lowercased without brackets. Throws DetectionError.
std::vector<BoundingBox> decode_detection_sequence(
    const std::vector<DetectionToken> &tokens);

std::vector<DetectionToken> encode_detection_sequence(
    const std::vector<BoundingBox> &boxes);

/// JSON array of integers and strings to tokens. Throws DetectionError.
std::vector<DetectionToken> tokens_from_json(const nlohmann::json &j);
nlohmann::json box_to_json(const BoundingBox &b);

}  // namespace rxnscope::agents

#endif  // RXNSCOPE_AGENTS_DETECTION_HPP_
