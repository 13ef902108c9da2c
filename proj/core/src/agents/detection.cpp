//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/agents/detection.hpp"

#include <cctype>

namespace rxnscope::agents {
namespace {

long long coordinate(const std::vector<DetectionToken> &tokens,
                     std::size_t i) {
  const long long *v = std::get_if<long long>(&tokens[i]);
  if (!v)
    throw DetectionError(i, "expected a coordinate");
  if (*v < 0)
    throw DetectionError(i, "negative coordinate");
  return *v;
}

std::string marker_kind(std::string m) {
  if (m.size() >= 2 && m.front() == '[' && m.back() == ']')
    m = m.substr(1, m.size() - 2);
  for (char &c: m)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return m;
}

}  // namespace

std::vector<BoundingBox> decode_detection_sequence(
    const std::vector<DetectionToken> &tokens) {
  if (tokens.size() % 5 != 0)
    throw DetectionError(tokens.size() - tokens.size() % 5,
                         "incomplete five-token group");
  std::vector<BoundingBox> boxes;
  for (std::size_t i = 0; i < tokens.size(); i += 5) {
    BoundingBox b;
    b.x1 = coordinate(tokens, i);
    b.y1 = coordinate(tokens, i + 1);
    b.x2 = coordinate(tokens, i + 2);
    b.y2 = coordinate(tokens, i + 3);
    if (b.x2 <= b.x1)
      throw DetectionError(i + 2, "inverted corners: x2 <= x1");
    if (b.y2 <= b.y1)
      throw DetectionError(i + 3, "inverted corners: y2 <= y1");
    const std::string *m = std::get_if<std::string>(&tokens[i + 4]);
    if (!m || m->empty())
      throw DetectionError(i + 4, "expected a class marker");
    b.kind = marker_kind(*m);
    boxes.push_back(std::move(b));
  }
  return boxes;
}

std::vector<DetectionToken> encode_detection_sequence(
    const std::vector<BoundingBox> &boxes) {
  std::vector<DetectionToken> out;
  for (const BoundingBox &b: boxes) {
    out.insert(out.end(), { b.x1, b.y1, b.x2, b.y2 });
    std::string m = b.kind;
    for (char &c: m)
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out.emplace_back(std::move(m));
  }
  return out;
}

std::vector<DetectionToken> tokens_from_json(const nlohmann::json &j) {
  if (!j.is_array())
    throw DetectionError(0, "token sequence must be an array");
  std::vector<DetectionToken> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_number_integer())
      out.emplace_back(j[i].get<long long>());
    else if (j[i].is_string())
      out.emplace_back(j[i].get<std::string>());
    else
      throw DetectionError(i, "token is neither an integer nor a marker");
  }
  return out;
}

nlohmann::json box_to_json(const BoundingBox &b) {
  return { { "x1", b.x1 }, { "y1", b.y1 }, { "x2", b.x2 }, { "y2", b.y2 },
           { "kind", b.kind } };
}

}  // namespace rxnscope::agents
