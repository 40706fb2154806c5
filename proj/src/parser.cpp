#include "rdnboost/parser.hpp"

#include <algorithm>

namespace rdnboost {

namespace {

// ASCII-only classification; input may be arbitrary bytes.
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident(char c) { return is_lower(c) || is_upper(c) || is_digit(c) || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f' || c == '\r'; }

class Cursor {
 public:
  Cursor(std::string_view s, int line_no) : s_(s), line_(line_no) {}

  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return s_[i_]; }
  void advance() { ++i_; }
  void skip_space() {
    while (!eof() && is_space(peek())) advance();
  }
  std::string read_ident() {
    std::string out;
    while (!eof() && is_ident(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  // Column clamped into the line so positions always point at real text.
  ParseError error(const std::string& message) const {
    int col = static_cast<int>(i_) + 1;
    int max_col = std::max(1, static_cast<int>(s_.size()));
    return ParseError{SourcePosition{line_, std::min(col, max_col)}, message, std::string(s_)};
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  int line_;
};

ParseResult<Atom> parse_atom_line(std::string_view line, int line_no, bool allow_variables) {
  Cursor c(line, line_no);
  c.skip_space();
  if (c.eof()) return {std::nullopt, c.error("empty statement")};
  if (is_upper(c.peek()) || c.peek() == '_') {
    return {std::nullopt, c.error("predicate must begin with a lowercase letter")};
  }
  if (!is_lower(c.peek())) return {std::nullopt, c.error("expected predicate name")};
  Atom atom;
  atom.predicate = c.read_ident();

  c.skip_space();
  if (c.eof() || c.peek() != '(') return {std::nullopt, c.error("expected '(' after predicate")};
  c.advance();

  while (true) {
    c.skip_space();
    if (c.eof()) return {std::nullopt, c.error("unbalanced parentheses: missing ')'")};
    char ch = c.peek();
    if (ch == ')' || ch == ',' || ch == '.') {
      return {std::nullopt, c.error("empty argument")};
    }
    if (is_upper(ch) || ch == '_') {
      if (!allow_variables) {
        return {std::nullopt, c.error("facts must be ground: variable argument")};
      }
      atom.args.push_back(Term::variable(c.read_ident()));
    } else if (is_lower(ch) || is_digit(ch)) {
      atom.args.push_back(Term::constant(c.read_ident()));
    } else {
      return {std::nullopt, c.error("expected constant or variable")};
    }
    c.skip_space();
    if (c.eof()) return {std::nullopt, c.error("unbalanced parentheses: missing ')'")};
    if (c.peek() == ',') {
      c.advance();
      continue;
    }
    if (c.peek() == ')') {
      c.advance();
      break;
    }
    return {std::nullopt, c.error("unbalanced parentheses: expected ',' or ')'")};
  }

  c.skip_space();
  if (c.eof() || c.peek() != '.') return {std::nullopt, c.error("missing terminal '.'")};
  c.advance();
  c.skip_space();
  if (!c.eof()) return {std::nullopt, c.error("unexpected text after '.'")};
  return {std::move(atom), std::nullopt};
}

ParseResult<Mode> parse_mode_line(std::string_view line, int line_no) {
  Cursor c(line, line_no);
  c.skip_space();
  if (c.eof()) return {std::nullopt, c.error("empty statement")};
  if (is_upper(c.peek()) || c.peek() == '_') {
    return {std::nullopt, c.error("predicate must begin with a lowercase letter")};
  }
  if (!is_lower(c.peek())) return {std::nullopt, c.error("expected predicate name")};
  Mode mode;
  mode.predicate = c.read_ident();

  c.skip_space();
  if (c.eof() || c.peek() != '(') return {std::nullopt, c.error("expected '(' after predicate")};
  c.advance();

  while (true) {
    c.skip_space();
    if (c.eof()) return {std::nullopt, c.error("unbalanced parentheses: missing ')'")};
    char ch = c.peek();
    if (ch == ')' || ch == ',' || ch == '.') {
      return {std::nullopt, c.error("empty argument")};
    }
    ArgRole role;
    if (ch == '+') {
      role = ArgRole::Input;
    } else if (ch == '-') {
      role = ArgRole::Output;
    } else if (ch == '#') {
      role = ArgRole::Constant;
    } else if (is_ident(ch)) {
      return {std::nullopt, c.error("missing role marker: expected '+', '-' or '#'")};
    } else {
      return {std::nullopt, c.error("unknown role marker")};
    }
    c.advance();
    c.skip_space();
    if (c.eof() || !is_lower(c.peek())) {
      return {std::nullopt, c.error("missing type name after role marker")};
    }
    mode.args.push_back(ModeArg{role, c.read_ident()});
    c.skip_space();
    if (c.eof()) return {std::nullopt, c.error("unbalanced parentheses: missing ')'")};
    if (c.peek() == ',') {
      c.advance();
      continue;
    }
    if (c.peek() == ')') {
      c.advance();
      break;
    }
    return {std::nullopt, c.error("unbalanced parentheses: expected ',' or ')'")};
  }

  c.skip_space();
  if (c.eof() || c.peek() != '.') return {std::nullopt, c.error("missing terminal '.'")};
  c.advance();
  c.skip_space();
  if (!c.eof()) return {std::nullopt, c.error("unexpected text after '.'")};
  return {std::move(mode), std::nullopt};
}

// Lines with the comment suffix stripped; blank/comment-only lines become
// empty and are skipped by the file parsers.
std::vector<std::string_view> logical_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (std::size_t pct = line.find('%'); pct != std::string_view::npos) {
      line = line.substr(0, pct);
    }
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), is_space);
}

}  // namespace

ParseResult<Atom> parse_ground_atom(std::string_view line) {
  return parse_atom_line(line, 1, /*allow_variables=*/false);
}

ParseResult<Atom> parse_logic_atom(std::string_view line) {
  return parse_atom_line(line, 1, /*allow_variables=*/true);
}

ParseResult<Mode> parse_mode(std::string_view line) {
  return parse_mode_line(line, 1);
}

FileParse<Atom> parse_ground_atoms(std::string_view text) {
  FileParse<Atom> out;
  const auto lines = logical_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    auto r = parse_atom_line(lines[i], static_cast<int>(i) + 1, /*allow_variables=*/false);
    if (r.ok()) {
      out.items.push_back(std::move(*r.value));
    } else {
      out.errors.push_back(std::move(*r.error));
    }
  }
  return out;
}

FileParse<Mode> parse_modes(std::string_view text) {
  FileParse<Mode> out;
  const auto lines = logical_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    auto r = parse_mode_line(lines[i], static_cast<int>(i) + 1);
    if (r.ok()) {
      out.items.push_back(std::move(*r.value));
    } else {
      out.errors.push_back(std::move(*r.error));
    }
  }
  return out;
}

std::string print_statement(const Atom& a) {
  return to_string(a) + ".";
}

std::string print_statement(const Mode& m) {
  return to_string(m);
}

std::string format_error(const std::string& path, const ParseError& e) {
  std::string out = path;
  out += ':';
  out += std::to_string(e.position.line);
  out += ':';
  out += std::to_string(e.position.column);
  out += ": error: ";
  out += e.message;
  if (!e.excerpt.empty()) {
    out += "\n    ";
    out += e.excerpt;
  }
  return out;
}

}  // namespace rdnboost
