#ifndef RDNBOOST_PARSER_HPP
#define RDNBOOST_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdnboost/background.hpp"
#include "rdnboost/logic.hpp"

namespace rdnboost {

struct SourcePosition {
  int line = 1;    // 1-based
  int column = 1;  // 1-based

  friend bool operator==(const SourcePosition&, const SourcePosition&) = default;
};

// Malformed input is reported as a value; parsers never throw on bad text.
struct ParseError {
  SourcePosition position;
  std::string message;
  std::string excerpt;  // the offending line
};

template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::optional<ParseError> error;

  bool ok() const { return value.has_value(); }
};

// One ground statement, e.g. "friends(alice,bob).". Facts must be ground;
// variables are rejected.
ParseResult<Atom> parse_ground_atom(std::string_view line);

// Like parse_ground_atom but accepting variables ([A-Z_][A-Za-z0-9_]*), for
// query atoms and model files.
ParseResult<Atom> parse_logic_atom(std::string_view line);

// One mode statement, e.g. "friends(+person,-person).".
ParseResult<Mode> parse_mode(std::string_view line);

template <typename T>
struct FileParse {
  std::vector<T> items;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

// One statement per line; blank lines skipped; '%' starts a comment running
// to end of line. Parsing continues past errors so every error is reported,
// each with its source position. Item order follows the file.
FileParse<Atom> parse_ground_atoms(std::string_view text);
FileParse<Mode> parse_modes(std::string_view text);

// Canonical surface syntax; parse(print_statement(x)) == x.
std::string print_statement(const Atom& a);
std::string print_statement(const Mode& m);

std::string format_error(const std::string& path, const ParseError& e);

}  // namespace rdnboost

#endif  // RDNBOOST_PARSER_HPP
