#ifndef RDNBOOST_TREE_HPP
#define RDNBOOST_TREE_HPP

#include <memory>
#include <string>
#include <vector>

#include "rdnboost/background.hpp"
#include "rdnboost/database.hpp"
#include "rdnboost/logic.hpp"

namespace rdnboost {

// Ground target atom with its pseudo-residual (gradient) value.
struct WeightedExample {
  Atom atom;
  double value = 0.0;
};

// Leaf (no children, holds a value) or inner node (a conjunction of up to
// node_size literals; variables bound by the test are visible only below the
// true branch).
struct TreeNode {
  std::vector<Atom> test;
  double value = 0.0;
  std::unique_ptr<TreeNode> on_true;
  std::unique_ptr<TreeNode> on_false;

  bool is_leaf() const { return on_true == nullptr; }
};

struct RegressionTree {
  Atom head;  // target pattern, e.g. cancer(A)
  std::unique_ptr<TreeNode> root;
};

class NoModeError : public std::runtime_error {
 public:
  explicit NoModeError(const std::string& target)
      : std::runtime_error("no mode declared for target predicate '" + target + "'") {}
};

// Head pattern for a target: one variable per mode argument, named A, B, ...
Atom head_pattern(const Mode& target_mode);
VariableContext head_context(const Mode& target_mode);

// Greedy top-down induction. At each node every candidate test from
// refinements is scored (conjunctions grown literal-by-literal up to
// node_size); the test maximizing weighted-variance reduction wins, earliest
// candidate on ties. Splitting stops at the depth limit, below
// min_examples_per_node, or when no test's gain exceeds the tolerance.
// Leaves hold the mean value of their examples.
RegressionTree fit_tree(const std::vector<WeightedExample>& examples, const Database& db,
                        const Background& bg, const std::string& target);

// Routes the example from the root, taking the true branch iff the path
// conjunction extended with the node's test is satisfiable, and returns the
// reached leaf's value.
double evaluate_tree(const RegressionTree& tree, const Atom& example, const Database& db);

// One line per root-to-leaf path: "head :- literals. % value=v". Failed
// tests appear as \+(...) markers; display only, never evaluated.
std::vector<std::string> clause_listing(const RegressionTree& tree);

std::string format_value(double v);  // shortest round-trip decimal form

}  // namespace rdnboost

#endif  // RDNBOOST_TREE_HPP
