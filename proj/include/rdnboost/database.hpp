#ifndef RDNBOOST_DATABASE_HPP
#define RDNBOOST_DATABASE_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdnboost/background.hpp"
#include "rdnboost/logic.hpp"

namespace rdnboost {

// Raised when inputs violate the data model; carries every issue found so
// callers can report them all at once.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// Positive examples, negative examples, and ground facts, with per-predicate
// and per-argument-constant indexes. Immutable after build; concurrent
// queries are safe. Closed world: a ground atom not among the facts is false.
class Database {
 public:
  const std::vector<Atom>& pos() const { return pos_; }
  const std::vector<Atom>& neg() const { return neg_; }
  const std::vector<Atom>& facts() const { return facts_; }
  const std::vector<Mode>& modes() const { return modes_; }
  const TypeMap& type_map() const { return type_map_; }

  bool has_fact_predicate(const std::string& predicate, int arity) const;

 private:
  friend Database build_database(std::vector<Atom> pos, std::vector<Atom> neg,
                                 std::vector<Atom> facts, std::vector<Mode> modes);
  friend class QueryResult;

  struct PredicateFacts {
    // Rows into facts_, insertion order, duplicates skipped; queries iterate
    // these so results are duplicate-free and deterministic.
    std::vector<std::uint32_t> unique_rows;
    // Per argument position: constant name -> rows (ascending).
    std::vector<std::map<std::string, std::vector<std::uint32_t>>> by_const;
  };

  std::vector<Atom> pos_, neg_, facts_;
  std::vector<Mode> modes_;
  std::map<std::pair<std::string, int>, PredicateFacts> index_;
  TypeMap type_map_;
};

// Validates groundness, mode coverage (every predicate/arity must be
// declared), and pos/neg disjointness; builds the index and the type map by
// aligning fact and example arguments with mode type declarations. Throws
// ValidationError listing every problem.
Database build_database(std::vector<Atom> pos, std::vector<Atom> neg, std::vector<Atom> facts,
                        std::vector<Mode> modes);

// Lazy, deterministic stream of substitutions extending a seed so that the
// pattern becomes a fact. Duplicate-free; order follows fact insertion.
class QueryResult {
 public:
  QueryResult(const Database& db, Atom pattern, Substitution seed);

  std::optional<Substitution> next();
  std::vector<Substitution> all();

 private:
  const Database* db_;
  Atom pattern_;
  Substitution seed_;
  std::vector<std::uint32_t> candidates_;
  std::size_t i_ = 0;
};

QueryResult query_atom(const Database& db, const Atom& pattern, const Substitution& seed = {});

// True iff some extension of `seed` grounds every body atom into facts
// (left-to-right backtracking; existential semantics). Empty body is true.
bool satisfies_body(const Database& db, const std::vector<Atom>& body, const Substitution& seed = {});

}  // namespace rdnboost

#endif  // RDNBOOST_DATABASE_HPP
