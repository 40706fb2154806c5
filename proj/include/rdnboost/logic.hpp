#ifndef RDNBOOST_LOGIC_HPP
#define RDNBOOST_LOGIC_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rdnboost {

enum class TermKind { Constant, Variable };

// Function-free first-order term: a constant or a variable. Variables are
// tagged structurally; surface-syntax conventions (capitalization) live in
// the parser and printer.
class Term {
 public:
  static Term constant(std::string name) { return Term(TermKind::Constant, std::move(name)); }
  static Term variable(std::string name) { return Term(TermKind::Variable, std::move(name)); }

  TermKind kind() const { return kind_; }
  bool is_constant() const { return kind_ == TermKind::Constant; }
  bool is_variable() const { return kind_ == TermKind::Variable; }
  const std::string& name() const { return name_; }

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind_ == b.kind_ && a.name_ == b.name_;
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    return a.name_ <=> b.name_;
  }

 private:
  Term(TermKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}
  TermKind kind_;
  std::string name_;
};

// Predicate applied to terms. Immutable value with structural equality and a
// stable (predicate, arity, args) ordering so all iteration is deterministic.
struct Atom {
  std::string predicate;
  std::vector<Term> args;

  int arity() const { return static_cast<int>(args.size()); }
  bool ground() const;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.predicate == b.predicate && a.args == b.args;
  }
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
    return a.args < b.args;
  }
};

// Finite map variable -> term. Bindings may form chains internally; lookups
// and application always follow chains to the final term, so application is
// idempotent. A variable is never bound to itself.
class Substitution {
 public:
  Substitution() = default;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  // Final term for `var` after following chains; nullopt when unbound.
  std::optional<Term> lookup(const std::string& var) const;

  // Follows chains: variables resolve to their final binding, constants to
  // themselves.
  Term resolve(Term t) const;

  // Records var := value (value resolved first). Identity bindings are
  // dropped. The variable must currently resolve to itself.
  void bind(const std::string& var, const Term& value);

  // Chain-free copy: every binding maps directly to its final term.
  Substitution resolved() const;

  const std::map<std::string, Term>& bindings() const { return map_; }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.map_ == b.map_;
  }

 private:
  std::map<std::string, Term> map_;
};

// Head atom plus conjunctive body.
struct Clause {
  Atom head;
  std::vector<Atom> body;

  friend bool operator==(const Clause& a, const Clause& b) {
    return a.head == b.head && a.body == b.body;
  }
};

Term apply(const Substitution& s, const Term& t);
Atom apply(const Substitution& s, const Atom& a);

// Most general unifier extending `seed`, or nullopt when the atoms clash.
// Failure is a value, not a fault. The result is chain-free.
std::optional<Substitution> unify(const Atom& a, const Atom& b, const Substitution& seed = {});

void collect_variables(const Term& t, std::vector<std::string>& out);
void collect_variables(const Atom& a, std::vector<std::string>& out);

// Renames clause variables so the result shares none with `taken`; variable
// equality pattern and all predicates are preserved. Variables not in `taken`
// keep their names.
Clause rename_apart(const Clause& c, const std::set<std::string>& taken);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Clause& c);

}  // namespace rdnboost

#endif  // RDNBOOST_LOGIC_HPP
