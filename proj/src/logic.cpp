#include "rdnboost/logic.hpp"

#include <cassert>

namespace rdnboost {

bool Atom::ground() const {
  for (const Term& t : args) {
    if (t.is_variable()) return false;
  }
  return true;
}

std::optional<Term> Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  if (it == map_.end()) return std::nullopt;
  return resolve(it->second);
}

Term Substitution::resolve(Term t) const {
  // Chains are acyclic by construction of bind(); each step strictly shortens
  // the remaining chain, so this terminates.
  while (t.is_variable()) {
    auto it = map_.find(t.name());
    if (it == map_.end()) return t;
    t = it->second;
  }
  return t;
}

void Substitution::bind(const std::string& var, const Term& value) {
  Term v = resolve(value);
  if (v.is_variable() && v.name() == var) return;
  map_.insert_or_assign(var, std::move(v));
}

Substitution Substitution::resolved() const {
  Substitution out;
  for (const auto& [var, value] : map_) {
    Term r = resolve(value);
    if (r.is_variable() && r.name() == var) continue;
    out.map_.insert_or_assign(var, std::move(r));
  }
  return out;
}

Term apply(const Substitution& s, const Term& t) {
  return s.resolve(t);
}

Atom apply(const Substitution& s, const Atom& a) {
  Atom out;
  out.predicate = a.predicate;
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(s.resolve(t));
  return out;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b, const Substitution& seed) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  Substitution s = seed;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    Term u = s.resolve(a.args[i]);
    Term v = s.resolve(b.args[i]);
    if (u == v) continue;
    if (u.is_variable()) {
      s.bind(u.name(), v);
    } else if (v.is_variable()) {
      s.bind(v.name(), u);
    } else {
      return std::nullopt;  // distinct constants
    }
  }
  return s.resolved();
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) out.push_back(t.name());
}

void collect_variables(const Atom& a, std::vector<std::string>& out) {
  for (const Term& t : a.args) collect_variables(t, out);
}

Clause rename_apart(const Clause& c, const std::set<std::string>& taken) {
  std::vector<std::string> vars;
  collect_variables(c.head, vars);
  for (const Atom& a : c.body) collect_variables(a, vars);

  std::set<std::string> own(vars.begin(), vars.end());
  std::map<std::string, std::string> renaming;
  std::set<std::string> used;
  for (const std::string& v : vars) {
    if (renaming.count(v)) continue;
    std::string fresh = v;
    int suffix = 0;
    while (taken.count(fresh) || used.count(fresh) || (fresh != v && own.count(fresh))) {
      ++suffix;
      fresh = v + std::to_string(suffix);
    }
    renaming.emplace(v, fresh);
    used.insert(fresh);
  }

  auto rename_atom = [&](const Atom& a) {
    Atom out;
    out.predicate = a.predicate;
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) {
      if (t.is_variable()) {
        out.args.push_back(Term::variable(renaming.at(t.name())));
      } else {
        out.args.push_back(t);
      }
    }
    return out;
  };

  Clause out;
  out.head = rename_atom(c.head);
  out.body.reserve(c.body.size());
  for (const Atom& a : c.body) out.body.push_back(rename_atom(a));
  return out;
}

std::string to_string(const Term& t) {
  return t.name();
}

std::string to_string(const Atom& a) {
  std::string out = a.predicate;
  if (a.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i > 0) out += ',';
    out += a.args[i].name();
  }
  out += ')';
  return out;
}

std::string to_string(const Clause& c) {
  std::string out = to_string(c.head);
  if (!c.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i > 0) out += ", ";
      out += to_string(c.body[i]);
    }
  }
  out += '.';
  return out;
}

}  // namespace rdnboost
