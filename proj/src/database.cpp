#include "rdnboost/database.hpp"

#include <algorithm>
#include <set>

namespace rdnboost {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "database validation failed:";
  for (const std::string& s : issues) {
    out += "\n  - ";
    out += s;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

bool Database::has_fact_predicate(const std::string& predicate, int arity) const {
  auto it = index_.find({predicate, arity});
  return it != index_.end() && !it->second.unique_rows.empty();
}

Database build_database(std::vector<Atom> pos, std::vector<Atom> neg, std::vector<Atom> facts,
                        std::vector<Mode> modes) {
  std::vector<std::string> issues;
  Background bg;
  bg.modes = modes;

  std::map<std::string, std::set<std::string>> types;
  auto check_atom = [&](const Atom& a, const char* where) -> const Mode* {
    if (!a.ground()) {
      issues.push_back(std::string(where) + " atom " + to_string(a) + " is not ground");
      return nullptr;
    }
    const Mode* m = find_mode(bg, a.predicate, a.arity());
    if (!m) {
      issues.push_back("no mode declared for " + a.predicate + "/" + std::to_string(a.arity()) +
                       " (" + std::string(where) + " atom " + to_string(a) + ")");
      return nullptr;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      types[m->args[i].type].insert(a.args[i].name());
    }
    return m;
  };

  for (const Atom& a : pos) check_atom(a, "positive example");
  for (const Atom& a : neg) check_atom(a, "negative example");
  for (const Atom& a : facts) check_atom(a, "fact");

  {
    std::set<Atom> pos_set(pos.begin(), pos.end());
    for (const Atom& a : neg) {
      if (pos_set.count(a)) {
        issues.push_back("atom " + to_string(a) + " appears in both pos and neg");
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  Database db;
  db.pos_ = std::move(pos);
  db.neg_ = std::move(neg);
  db.facts_ = std::move(facts);
  db.modes_ = std::move(modes);
  for (auto& [type, constants] : types) {
    db.type_map_.emplace(type, std::vector<std::string>(constants.begin(), constants.end()));
  }

  std::map<Atom, std::uint32_t> first_row;
  for (std::uint32_t row = 0; row < db.facts_.size(); ++row) {
    const Atom& a = db.facts_[row];
    if (!first_row.emplace(a, row).second) continue;  // duplicate fact
    auto& pf = db.index_[{a.predicate, a.arity()}];
    if (pf.by_const.empty()) pf.by_const.resize(a.args.size());
    pf.unique_rows.push_back(row);
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      pf.by_const[i][a.args[i].name()].push_back(row);
    }
  }
  return db;
}

QueryResult::QueryResult(const Database& db, Atom pattern, Substitution seed)
    : db_(&db), pattern_(std::move(pattern)), seed_(std::move(seed)) {
  auto it = db.index_.find({pattern_.predicate, pattern_.arity()});
  if (it == db.index_.end()) return;
  const auto& pf = it->second;

  // Pick the smallest posting list among constant-bound argument positions;
  // fall back to all unique rows when nothing is bound.
  Atom resolved = apply(seed_, pattern_);
  const std::vector<std::uint32_t>* best = &pf.unique_rows;
  for (std::size_t i = 0; i < resolved.args.size(); ++i) {
    if (!resolved.args[i].is_constant()) continue;
    auto entry = pf.by_const[i].find(resolved.args[i].name());
    if (entry == pf.by_const[i].end()) {
      candidates_.clear();
      return;
    }
    if (entry->second.size() < best->size()) best = &entry->second;
  }
  candidates_ = *best;
}

std::optional<Substitution> QueryResult::next() {
  while (i_ < candidates_.size()) {
    const Atom& fact = db_->facts_[candidates_[i_++]];
    if (auto mgu = unify(pattern_, fact, seed_)) return mgu;
  }
  return std::nullopt;
}

std::vector<Substitution> QueryResult::all() {
  std::vector<Substitution> out;
  while (auto s = next()) out.push_back(std::move(*s));
  return out;
}

QueryResult query_atom(const Database& db, const Atom& pattern, const Substitution& seed) {
  return QueryResult(db, pattern, seed);
}

namespace {

bool satisfies_from(const Database& db, const std::vector<Atom>& body, std::size_t at,
                    const Substitution& seed) {
  if (at == body.size()) return true;
  QueryResult q(db, body[at], seed);
  while (auto s = q.next()) {
    if (satisfies_from(db, body, at + 1, *s)) return true;
  }
  return false;
}

}  // namespace

bool satisfies_body(const Database& db, const std::vector<Atom>& body, const Substitution& seed) {
  return satisfies_from(db, body, 0, seed);
}

}  // namespace rdnboost
