//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdlib>
#include <fstream>

#include <httplib.h>

#include "rxnscope/agents/backend.hpp"
#include "rxnscope/error.hpp"

namespace rxnscope::agents {

using nlohmann::json;

namespace {

std::optional<std::string> env(const char *name) {
  const char *v = std::getenv(name);
  if (v == nullptr || *v == '\0')
    return std::nullopt;
  return std::string(v);
}

}  // namespace

RemoteConfig RemoteConfig::load(
    const std::optional<std::filesystem::path> &file) {
  RemoteConfig c;
  if (file) {
    std::ifstream in(*file);
    if (!in)
      throw Error("config_error", "cannot read " + file->string());
    json j = json::parse(in);
    c.endpoint = j.value("endpoint", c.endpoint);
    c.path = j.value("path", c.path);
    c.token = j.value("token", c.token);
    c.model = j.value("model", c.model);
    c.temperature = j.value("temperature", c.temperature);
    c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
  }
  if (auto v = env("RXNSCOPE_ENDPOINT"))
    c.endpoint = *v;
  if (auto v = env("RXNSCOPE_TOKEN"))
    c.token = *v;
  if (auto v = env("RXNSCOPE_MODEL"))
    c.model = *v;
  if (auto v = env("RXNSCOPE_TEMPERATURE"))
    c.temperature = std::stod(*v);
  if (c.endpoint.empty())
    throw Error("config_error", "remote backend needs an endpoint");
  return c;
}

RemoteBackend::RemoteBackend(RemoteConfig config): config_(std::move(config)) {}

BackendReply RemoteBackend::call(const BackendRequest &request) {
  json body = {
    { "model", config_.model },
    { "temperature", config_.temperature },
    { "messages",
      json::array({ { { "role", "system" }, { "content", request.role_prompt } },
                    { { "role", "user" },
                      { "content", request.to_json().dump() } } }) },
  };

  httplib::Client client(config_.endpoint);
  client.set_read_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!config_.token.empty())
    headers.emplace("Authorization", "Bearer " + config_.token);
  auto res = client.Post(config_.path, headers, body.dump(), "application/json");
  if (!res)
    throw Error("backend_error",
                "request failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw Error("backend_error", "HTTP " + std::to_string(res->status));

  json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded())
    throw Error("backend_error", "response is not JSON");
  try {
    std::string content =
        reply.at("choices").at(0).at("message").at("content").get<std::string>();
    json inner = json::parse(content, nullptr, false);
    if (inner.is_discarded())
      throw Error("backend_error", "reply content is not JSON");
    return BackendReply::from_json(inner);
  } catch (const json::exception &e) {
    throw Error("backend_error", std::string("malformed response: ") + e.what());
  }
}

}  // namespace rxnscope::agents
