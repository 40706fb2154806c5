#include "rdnboost/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "rdnboost/parser.hpp"

namespace rdnboost {

namespace {

constexpr const char* kFormatHeader = "rdnboost model v1";

// Keeps reported probabilities strictly inside (0,1) even for extreme
// potentials.
constexpr double kProbEps = 1e-15;

double parse_double_or_throw(const std::string& text, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ModelFormatError(line, "expected a number, found '" + text + "'");
  }
  return v;
}

long parse_int_or_throw(const std::string& text, int line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ModelFormatError(line, "expected an integer, found '" + text + "'");
  }
  return v;
}

Atom parse_atom_or_throw(const std::string& text, int line) {
  auto r = parse_logic_atom(text + ".");
  if (!r.ok()) throw ModelFormatError(line, "bad atom '" + text + "': " + r.error->message);
  return std::move(*r.value);
}

// Whitespace-separated atom list, each in canonical (space-free) form.
std::vector<Atom> parse_test_or_throw(std::istringstream& rest, int line) {
  std::vector<Atom> test;
  std::string tok;
  while (rest >> tok) test.push_back(parse_atom_or_throw(tok, line));
  if (test.empty()) throw ModelFormatError(line, "inner node has no test literals");
  return test;
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  bool next(std::string& out) {
    if (!std::getline(in_, out)) return false;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    ++line_;
    return true;
  }
  std::string expect(const std::string& what) {
    std::string line;
    if (!next(line)) throw ModelFormatError(line_ + 1, "unexpected end of file, expected " + what);
    return line;
  }
  int line() const { return line_; }

 private:
  std::istringstream in_;
  int line_ = 0;
};

std::unique_ptr<TreeNode> read_node(LineReader& r, const Background& bg, int depth) {
  if (depth > bg.max_tree_depth) {
    throw ModelFormatError(r.line(), "tree deeper than max_tree_depth");
  }
  std::string line = r.expect("a tree node");
  std::istringstream ss(line);
  std::string tag;
  ss >> tag;
  auto node = std::make_unique<TreeNode>();
  if (tag == "leaf") {
    std::string value;
    if (!(ss >> value)) throw ModelFormatError(r.line(), "leaf without a value");
    std::string extra;
    if (ss >> extra) throw ModelFormatError(r.line(), "trailing text after leaf value");
    node->value = parse_double_or_throw(value, r.line());
    return node;
  }
  if (tag != "inner") throw ModelFormatError(r.line(), "expected 'leaf' or 'inner', found '" + tag + "'");
  node->test = parse_test_or_throw(ss, r.line());
  if (static_cast<int>(node->test.size()) > bg.node_size) {
    throw ModelFormatError(r.line(), "node test larger than node_size");
  }
  node->on_true = read_node(r, bg, depth + 1);
  node->on_false = read_node(r, bg, depth + 1);
  return node;
}

void write_node(const TreeNode& node, std::string& out) {
  if (node.is_leaf()) {
    out += "leaf ";
    out += format_value(node.value);
    out += '\n';
    return;
  }
  out += "inner";
  for (const Atom& a : node.test) {
    out += ' ';
    out += to_string(a);
  }
  out += '\n';
  write_node(*node.on_true, out);
  write_node(*node.on_false, out);
}

std::string expect_key(const std::string& line, const std::string& key, int line_no) {
  if (line.rfind(key + " ", 0) != 0) {
    throw ModelFormatError(line_no, "expected '" + key + " ...', found '" + line + "'");
  }
  return line.substr(key.size() + 1);
}

}  // namespace

double sigmoid(double x) {
  double p = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
  return std::clamp(p, kProbEps, 1.0 - kProbEps);
}

BoostedRDN::BoostedRDN(Background background, std::string target)
    : background_(std::move(background)), target_(std::move(target)) {
  if (const Mode* m = find_mode(background_, target_)) head_ = head_pattern(*m);
}

void BoostedRDN::set_learning_rate(double v) {
  if (!(v > 0.0) || v > 1.0) {
    throw std::invalid_argument("learning_rate must be in (0, 1]");
  }
  learning_rate_ = v;
}

void BoostedRDN::require_no_target_facts(const Database& db) const {
  if (db.has_fact_predicate(target_, head_.arity())) {
    throw ValidationError({"facts must not contain the target predicate " + target_ + "/" +
                           std::to_string(head_.arity()) +
                           " (examples are never used as facts)"});
  }
}

void BoostedRDN::fit(const Database& db) {
  if (db.pos().empty() && db.neg().empty()) throw EmptyDatabaseError();
  BackgroundValidation v = validate_background(background_, target_);
  if (!find_mode(background_, target_)) throw NoModeError(target_);
  if (!v.ok()) throw ValidationError(v.errors);

  head_ = head_pattern(*find_mode(background_, target_));
  std::vector<std::string> issues;
  for (const Atom& a : db.pos()) {
    if (a.predicate != target_ || a.arity() != head_.arity()) {
      issues.push_back("positive example " + to_string(a) + " is not a " + target_ + "/" +
                       std::to_string(head_.arity()) + " atom");
    }
  }
  for (const Atom& a : db.neg()) {
    if (a.predicate != target_ || a.arity() != head_.arity()) {
      issues.push_back("negative example " + to_string(a) + " is not a " + target_ + "/" +
                       std::to_string(head_.arity()) + " atom");
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  require_no_target_facts(db);

  if (psi0_from_prior_) {
    if (db.pos().empty() || db.neg().empty()) {
      throw ValidationError({"psi0 from prior requires at least one positive and one negative example"});
    }
    psi0_ = std::log(static_cast<double>(db.pos().size()) / static_cast<double>(db.neg().size()));
  }

  std::vector<WeightedExample> examples;
  std::vector<double> labels;
  examples.reserve(db.pos().size() + db.neg().size());
  for (const Atom& a : db.pos()) {
    examples.push_back({a, 0.0});
    labels.push_back(1.0);
  }
  for (const Atom& a : db.neg()) {
    examples.push_back({a, 0.0});
    labels.push_back(0.0);
  }

  trees_.clear();
  fitted_ = false;
  std::vector<double> psi(examples.size(), psi0_);
  for (int m = 0; m < background_.n_trees; ++m) {
    for (std::size_t i = 0; i < examples.size(); ++i) {
      examples[i].value = labels[i] - sigmoid(psi[i]);
    }
    RegressionTree tree = fit_tree(examples, db, background_, target_);
    for (std::size_t i = 0; i < examples.size(); ++i) {
      psi[i] += learning_rate_ * evaluate_tree(tree, examples[i].atom, db);
    }
    trees_.push_back(std::move(tree));
  }
  fitted_ = true;
}

double BoostedRDN::potential(const Atom& example, const Database& db) const {
  double psi = psi0_;
  for (const RegressionTree& tree : trees_) {
    psi += learning_rate_ * evaluate_tree(tree, example, db);
  }
  return psi;
}

std::vector<std::pair<Atom, double>> BoostedRDN::predict_proba(const Database& db) const {
  if (!fitted_) throw NotFittedError();
  require_no_target_facts(db);
  std::vector<std::pair<Atom, double>> out;
  out.reserve(db.pos().size() + db.neg().size());
  for (const Atom& a : db.pos()) out.emplace_back(a, sigmoid(potential(a, db)));
  for (const Atom& a : db.neg()) out.emplace_back(a, sigmoid(potential(a, db)));
  return out;
}

std::vector<std::pair<Atom, bool>> BoostedRDN::predict(const Database& db) const {
  std::vector<std::pair<Atom, bool>> out;
  for (auto& [atom, p] : predict_proba(db)) out.emplace_back(atom, p > 0.5);
  return out;
}

std::string BoostedRDN::serialize() const {
  if (!fitted_) throw NotFittedError();
  std::string out;
  out += kFormatHeader;
  out += '\n';
  out += "target " + target_ + '\n';
  out += "head " + to_string(head_) + '\n';
  out += "psi0 " + format_value(psi0_) + '\n';
  out += "learning_rate " + format_value(learning_rate_) + '\n';
  out += "max_tree_depth " + std::to_string(background_.max_tree_depth) + '\n';
  out += "node_size " + std::to_string(background_.node_size) + '\n';
  out += "n_trees " + std::to_string(background_.n_trees) + '\n';
  out += "max_new_vars_per_literal " + std::to_string(background_.max_new_vars_per_literal) + '\n';
  out += "allow_self_aliasing " + std::to_string(background_.allow_self_aliasing ? 1 : 0) + '\n';
  out += "min_examples_per_node " + std::to_string(background_.min_examples_per_node) + '\n';
  out += "gain_tolerance " + format_value(background_.gain_tolerance) + '\n';
  out += "modes " + std::to_string(background_.modes.size()) + '\n';
  for (const Mode& m : background_.modes) {
    out += to_string(m);
    out += '\n';
  }
  out += "trees " + std::to_string(trees_.size()) + '\n';
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    out += "tree " + std::to_string(i) + '\n';
    write_node(*trees_[i].root, out);
  }
  out += "end\n";
  return out;
}

BoostedRDN BoostedRDN::deserialize(const std::string& text) {
  LineReader r(text);
  std::string line;
  if (!r.next(line)) throw VersionError("<empty file>");
  if (line != kFormatHeader) throw VersionError(line);

  auto read_kv = [&r](const std::string& key) {
    std::string kv_line = r.expect("'" + key + " ...'");
    return expect_key(kv_line, key, r.line());
  };
  auto read_int = [&](const std::string& key) {
    return parse_int_or_throw(read_kv(key), r.line());
  };
  auto read_double = [&](const std::string& key) {
    return parse_double_or_throw(read_kv(key), r.line());
  };

  std::string target = read_kv("target");
  Atom head = parse_atom_or_throw(read_kv("head"), r.line());
  double psi0 = read_double("psi0");
  double lr = read_double("learning_rate");

  Background bg;
  bg.max_tree_depth = static_cast<int>(read_int("max_tree_depth"));
  bg.node_size = static_cast<int>(read_int("node_size"));
  bg.n_trees = static_cast<int>(read_int("n_trees"));
  bg.max_new_vars_per_literal = static_cast<int>(read_int("max_new_vars_per_literal"));
  bg.allow_self_aliasing = read_int("allow_self_aliasing") != 0;
  bg.min_examples_per_node = static_cast<int>(read_int("min_examples_per_node"));
  bg.gain_tolerance = read_double("gain_tolerance");

  long n_modes = read_int("modes");
  if (n_modes < 0) throw ModelFormatError(r.line(), "negative mode count");
  for (long i = 0; i < n_modes; ++i) {
    std::string mode_line = r.expect("a mode declaration");
    auto m = parse_mode(mode_line);
    if (!m.ok()) throw ModelFormatError(r.line(), "bad mode: " + m.error->message);
    bg.modes.push_back(std::move(*m.value));
  }

  const Mode* target_mode = find_mode(bg, target);
  if (!target_mode) throw ModelFormatError(r.line(), "no mode for target '" + target + "'");
  if (head.predicate != target || head.arity() != target_mode->arity() || !std::all_of(
          head.args.begin(), head.args.end(), [](const Term& t) { return t.is_variable(); })) {
    throw ModelFormatError(r.line(), "head does not match the target mode");
  }

  long n_trees = read_int("trees");
  if (n_trees < 0) throw ModelFormatError(r.line(), "negative tree count");
  if (n_trees > bg.n_trees) throw ModelFormatError(r.line(), "more trees than n_trees allows");

  BoostedRDN model(std::move(bg), target);
  model.head_ = head;
  model.psi0_ = psi0;
  if (!(lr > 0.0) || lr > 1.0) throw ModelFormatError(r.line(), "learning_rate out of range");
  model.learning_rate_ = lr;

  for (long i = 0; i < n_trees; ++i) {
    std::string tree_line = r.expect("tree " + std::to_string(i));
    if (tree_line != "tree " + std::to_string(i)) {
      throw ModelFormatError(r.line(), "expected 'tree " + std::to_string(i) + "', found '" +
                                           tree_line + "'");
    }
    RegressionTree tree;
    tree.head = head;
    tree.root = read_node(r, model.background_, 0);
    model.trees_.push_back(std::move(tree));
  }
  if (r.expect("'end'") != "end") throw ModelFormatError(r.line(), "expected 'end'");
  if (r.next(line)) {
    if (!line.empty()) throw ModelFormatError(r.line(), "trailing content after 'end'");
    while (r.next(line)) {
      if (!line.empty()) throw ModelFormatError(r.line(), "trailing content after 'end'");
    }
  }
  model.fitted_ = true;
  return model;
}

}  // namespace rdnboost
