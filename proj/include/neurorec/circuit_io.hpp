#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "neurorec/model.hpp"

namespace neurorec {

/// Malformed circuit text. Line and column are 1-based; they are 0 when the
/// document is syntactically valid JSON but violates the schema.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

nlohmann::ordered_json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::ordered_json& doc);

/// Canonical text form: fixed key order, two-space indentation, trailing
/// newline. Equal circuits serialize to identical bytes.
std::string serialize(const Circuit& circuit);
/// Throws ParseError on malformed text and ModelError on a circuit that does
/// not validate.
Circuit deserialize(std::string_view text);

/// Parses text into a JSON document, translating syntax errors into
/// ParseError with a line/column position.
nlohmann::ordered_json parse_json_document(std::string_view text);

}  // namespace neurorec
