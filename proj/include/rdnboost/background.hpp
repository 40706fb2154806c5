#ifndef RDNBOOST_BACKGROUND_HPP
#define RDNBOOST_BACKGROUND_HPP

#include <map>
#include <string>
#include <vector>

#include "rdnboost/logic.hpp"

namespace rdnboost {

// Argument roles in a mode declaration: input (+) must bind an existing
// variable, output (-) may introduce a fresh one, constant (#) enumerates
// observed constants of the type.
enum class ArgRole { Input, Output, Constant };

struct ModeArg {
  ArgRole role;
  std::string type;

  friend bool operator==(const ModeArg&, const ModeArg&) = default;
};

struct Mode {
  std::string predicate;
  std::vector<ModeArg> args;

  int arity() const { return static_cast<int>(args.size()); }

  friend bool operator==(const Mode&, const Mode&) = default;
};

// Background knowledge: mode declarations plus the hyperparameters bounding
// clause search. All bounds are configurable; defaults are project choices.
struct Background {
  std::vector<Mode> modes;
  int max_tree_depth = 3;
  int node_size = 2;
  int n_trees = 10;
  int max_new_vars_per_literal = 2;
  bool allow_self_aliasing = false;
  int min_examples_per_node = 2;
  double gain_tolerance = 1e-9;
};

// Variable name -> type name for everything bound so far along a tree path.
using VariableContext = std::map<std::string, std::string>;

// Type name -> sorted unique constants observed at arguments of that type.
using TypeMap = std::map<std::string, std::vector<std::string>>;

// Candidate literal plus the typing of any variables it introduces.
struct CandidateLiteral {
  Atom atom;
  VariableContext introduces;

  friend bool operator==(const CandidateLiteral&, const CandidateLiteral&) = default;
};

// Mode-directed refinement: all literals addable under `ctx`. Input arguments
// bind existing context variables of the matching type, output arguments use
// an existing variable or a fresh one, constant arguments enumerate observed
// constants. Candidates duplicating an atom on `path` (head included) are
// dropped, as are self-aliasing literals unless allowed. Deduplicated up to
// fresh-variable renaming; order is deterministic.
std::vector<CandidateLiteral> refinements(const Background& bg, const VariableContext& ctx,
                                          const TypeMap& constants,
                                          const std::vector<Atom>& path = {});

struct BackgroundValidation {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

// Errors when the target has no mode or bounds are out of range; warnings for
// modes unreachable from the target's variable types.
BackgroundValidation validate_background(const Background& bg, const std::string& target);

// First mode whose predicate matches, nullptr when absent.
const Mode* find_mode(const Background& bg, const std::string& predicate);
const Mode* find_mode(const Background& bg, const std::string& predicate, int arity);

std::string to_string(const Mode& m);

}  // namespace rdnboost

#endif  // RDNBOOST_BACKGROUND_HPP
