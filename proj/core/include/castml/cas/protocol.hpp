#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace castml::cas {

enum class EvalMode { Math, Text };
enum class EvalStatus { Ok, Error };
enum class PayloadKind { Tex, Text, Svg };

std::string_view to_string(EvalMode mode);
std::string_view to_string(EvalStatus status);
std::string_view to_string(PayloadKind kind);

struct EvalRequest {
  std::string id;
  std::string command;
  EvalMode mode = EvalMode::Math;

  friend bool operator==(const EvalRequest&, const EvalRequest&) = default;
};

struct EvalResponse {
  std::string id;
  EvalStatus status = EvalStatus::Ok;
  PayloadKind kind = PayloadKind::Text;
  std::string payload;
  std::vector<std::string> diagnostics;

  friend bool operator==(const EvalResponse&, const EvalResponse&) = default;
};

/// Thrown by the parse functions for malformed JSON or a field set that is
/// not exactly the protocol's.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compact JSON with the fields in protocol order.
std::string to_json(const EvalRequest& request);
std::string to_json(const EvalResponse& response);

EvalRequest parse_request(std::string_view json);
EvalResponse parse_response(std::string_view json);

/// Runs one request against the built-in CAS. Stateless and total: any
/// failure becomes status=error with a diagnostic.
EvalResponse evaluate(const EvalRequest& request) noexcept;

}  // namespace castml::cas
