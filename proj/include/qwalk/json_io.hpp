#pragma once

#include <stdexcept>
#include <string>

#include "qwalk/graph.hpp"

namespace qwalk {

/// Instance file parsing failure; `field` names the offending key when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses the JSON instance document described in the README.
/// Throws ParseError for malformed documents and std::invalid_argument for
/// semantic violations (forwarded from make_instance).
WalkInstance parse_instance(const std::string& text);

/// Canonical JSON form; parse_instance(serialize_instance(x)) reproduces x.
std::string serialize_instance(const WalkInstance& inst);

}  // namespace qwalk
