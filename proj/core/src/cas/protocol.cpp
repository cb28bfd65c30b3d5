#include "castml/cas/protocol.hpp"

#include <algorithm>
#include <array>

#include <json.hpp>

namespace castml::cas {

using json = nlohmann::ordered_json;

std::string_view to_string(EvalMode mode) { return mode == EvalMode::Math ? "math" : "text"; }
std::string_view to_string(EvalStatus status) { return status == EvalStatus::Ok ? "ok" : "error"; }
std::string_view to_string(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::Tex:
      return "tex";
    case PayloadKind::Text:
      return "text";
    case PayloadKind::Svg:
      return "svg";
  }
  return "?";
}

namespace {

json parse_object(std::string_view text, std::initializer_list<std::string_view> fields) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("expected a JSON object");
  for (auto field : fields) {
    if (!j.contains(field)) throw ProtocolError("missing field '" + std::string(field) + "'");
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(fields.begin(), fields.end(), key) == fields.end()) {
      throw ProtocolError("unknown field '" + key + "'");
    }
  }
  return j;
}

std::string string_field(const json& j, const char* name) {
  const auto& v = j.at(name);
  if (!v.is_string()) throw ProtocolError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

template <typename Enum, std::size_t N>
Enum enum_field(const json& j, const char* name, const std::array<Enum, N>& values) {
  const std::string s = string_field(j, name);
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  throw ProtocolError(std::string("invalid value '") + s + "' for field '" + name + "'");
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

}  // namespace

std::string to_json(const EvalRequest& request) {
  json j;
  j["id"] = request.id;
  j["command"] = request.command;
  j["mode"] = to_string(request.mode);
  return dump(j);
}

std::string to_json(const EvalResponse& response) {
  json j;
  j["id"] = response.id;
  j["status"] = to_string(response.status);
  j["kind"] = to_string(response.kind);
  j["payload"] = response.payload;
  j["diagnostics"] = response.diagnostics;
  return dump(j);
}

EvalRequest parse_request(std::string_view text) {
  const json j = parse_object(text, {"id", "command", "mode"});
  EvalRequest r;
  r.id = string_field(j, "id");
  r.command = string_field(j, "command");
  r.mode = enum_field(j, "mode", std::array{EvalMode::Math, EvalMode::Text});
  return r;
}

EvalResponse parse_response(std::string_view text) {
  const json j = parse_object(text, {"id", "status", "kind", "payload", "diagnostics"});
  EvalResponse r;
  r.id = string_field(j, "id");
  r.status = enum_field(j, "status", std::array{EvalStatus::Ok, EvalStatus::Error});
  r.kind = enum_field(j, "kind", std::array{PayloadKind::Tex, PayloadKind::Text, PayloadKind::Svg});
  r.payload = string_field(j, "payload");
  const auto& diags = j.at("diagnostics");
  if (!diags.is_array()) throw ProtocolError("field 'diagnostics' must be an array");
  for (const auto& d : diags) {
    if (!d.is_string()) throw ProtocolError("diagnostics must be strings");
    r.diagnostics.push_back(d.get<std::string>());
  }
  return r;
}

}  // namespace castml::cas
