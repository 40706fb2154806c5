#include "rdnboost/tree.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace rdnboost {

namespace {

double subset_mean(const std::vector<WeightedExample>& ex, const std::vector<std::size_t>& idx) {
  double sum = 0.0;
  for (std::size_t i : idx) sum += ex[i].value;
  return idx.empty() ? 0.0 : sum / static_cast<double>(idx.size());
}

// Sum of squared deviations from the subset mean.
double subset_sse(const std::vector<WeightedExample>& ex, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return 0.0;
  double mean = subset_mean(ex, idx);
  double sse = 0.0;
  for (std::size_t i : idx) {
    double d = ex[i].value - mean;
    sse += d * d;
  }
  return sse;
}

struct Fitter {
  const std::vector<WeightedExample>& examples;
  const Database& db;
  const Background& bg;
  std::vector<Substitution> seeds;

  struct SplitEval {
    double gain = 0.0;
    std::vector<std::size_t> true_idx;
    std::vector<std::size_t> false_idx;
  };

  SplitEval score(const std::vector<Atom>& body, const std::vector<Atom>& test,
                  const std::vector<std::size_t>& idx, double parent_sse) const {
    SplitEval ev;
    std::vector<Atom> full = body;
    full.insert(full.end(), test.begin(), test.end());
    for (std::size_t i : idx) {
      if (satisfies_body(db, full, seeds[i])) {
        ev.true_idx.push_back(i);
      } else {
        ev.false_idx.push_back(i);
      }
    }
    ev.gain = parent_sse - subset_sse(examples, ev.true_idx) - subset_sse(examples, ev.false_idx);
    return ev;
  }

  std::unique_ptr<TreeNode> fit_node(const std::vector<std::size_t>& idx, VariableContext ctx,
                                     std::vector<Atom> path, std::vector<Atom> body, int depth) {
    auto leaf = [&]() {
      auto node = std::make_unique<TreeNode>();
      node->value = subset_mean(examples, idx);
      return node;
    };
    if (depth >= bg.max_tree_depth) return leaf();
    if (idx.size() < static_cast<std::size_t>(bg.min_examples_per_node)) return leaf();

    double parent_sse = subset_sse(examples, idx);

    // Best single literal first; ties go to the earliest candidate.
    std::vector<CandidateLiteral> cands = refinements(bg, ctx, db.type_map(), path);
    std::vector<Atom> best_test;
    VariableContext best_intro;
    SplitEval best_ev;
    bool have_best = false;
    for (const CandidateLiteral& cand : cands) {
      SplitEval ev = score(body, {cand.atom}, idx, parent_sse);
      if (!have_best || ev.gain > best_ev.gain) {
        best_test = {cand.atom};
        best_intro = cand.introduces;
        best_ev = std::move(ev);
        have_best = true;
      }
    }
    if (!have_best || best_ev.gain <= bg.gain_tolerance) return leaf();

    // Grow the conjunction while an extra literal strictly improves the gain.
    while (static_cast<int>(best_test.size()) < bg.node_size) {
      VariableContext ctx_ext = ctx;
      for (const auto& [v, t] : best_intro) ctx_ext.emplace(v, t);
      std::vector<Atom> path_ext = path;
      path_ext.insert(path_ext.end(), best_test.begin(), best_test.end());
      std::vector<CandidateLiteral> exts = refinements(bg, ctx_ext, db.type_map(), path_ext);

      bool improved = false;
      std::vector<Atom> ext_test;
      VariableContext ext_intro;
      SplitEval ext_ev;
      for (const CandidateLiteral& cand : exts) {
        std::vector<Atom> test = best_test;
        test.push_back(cand.atom);
        SplitEval ev = score(body, test, idx, parent_sse);
        if (ev.gain > best_ev.gain && (!improved || ev.gain > ext_ev.gain)) {
          ext_test = std::move(test);
          ext_intro = cand.introduces;
          ext_ev = std::move(ev);
          improved = true;
        }
      }
      if (!improved) break;
      best_test = std::move(ext_test);
      for (const auto& [v, t] : ext_intro) best_intro.emplace(v, t);
      best_ev = std::move(ext_ev);
    }

    auto node = std::make_unique<TreeNode>();
    node->test = best_test;

    VariableContext true_ctx = ctx;
    for (const auto& [v, t] : best_intro) true_ctx.emplace(v, t);
    std::vector<Atom> true_path = path;
    true_path.insert(true_path.end(), best_test.begin(), best_test.end());
    std::vector<Atom> true_body = body;
    true_body.insert(true_body.end(), best_test.begin(), best_test.end());

    node->on_true = fit_node(best_ev.true_idx, true_ctx, true_path, true_body, depth + 1);
    // Bindings from a failed test are meaningless below the false branch.
    node->on_false = fit_node(best_ev.false_idx, ctx, path, body, depth + 1);
    return node;
  }
};

}  // namespace

Atom head_pattern(const Mode& target_mode) {
  Atom head;
  head.predicate = target_mode.predicate;
  for (int i = 0; i < target_mode.arity(); ++i) {
    std::string name(1, static_cast<char>('A' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    head.args.push_back(Term::variable(name));
  }
  return head;
}

VariableContext head_context(const Mode& target_mode) {
  Atom head = head_pattern(target_mode);
  VariableContext ctx;
  for (int i = 0; i < target_mode.arity(); ++i) {
    ctx.emplace(head.args[i].name(), target_mode.args[i].type);
  }
  return ctx;
}

RegressionTree fit_tree(const std::vector<WeightedExample>& examples, const Database& db,
                        const Background& bg, const std::string& target) {
  const Mode* mode = find_mode(bg, target);
  if (!mode) throw NoModeError(target);
  if (examples.empty()) throw std::invalid_argument("fit_tree: examples must be nonempty");

  RegressionTree tree;
  tree.head = head_pattern(*mode);

  Fitter fitter{examples, db, bg, {}};
  fitter.seeds.reserve(examples.size());
  for (const WeightedExample& e : examples) {
    auto seed = unify(tree.head, e.atom);
    if (!seed) {
      throw std::invalid_argument("fit_tree: example " + to_string(e.atom) +
                                  " does not unify with target pattern " + to_string(tree.head));
    }
    fitter.seeds.push_back(std::move(*seed));
  }

  std::vector<std::size_t> all(examples.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  tree.root = fitter.fit_node(all, head_context(*mode), {tree.head}, {}, 0);
  return tree;
}

double evaluate_tree(const RegressionTree& tree, const Atom& example, const Database& db) {
  auto seed = unify(tree.head, example);
  if (!seed) {
    throw std::invalid_argument("evaluate_tree: " + to_string(example) +
                                " does not unify with target pattern " + to_string(tree.head));
  }
  const TreeNode* node = tree.root.get();
  std::vector<Atom> acc;
  while (!node->is_leaf()) {
    std::vector<Atom> body = acc;
    body.insert(body.end(), node->test.begin(), node->test.end());
    if (satisfies_body(db, body, *seed)) {
      acc = std::move(body);
      node = node->on_true.get();
    } else {
      node = node->on_false.get();
    }
  }
  return node->value;
}

namespace {

std::string format_test(const std::vector<Atom>& test) {
  std::string out;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(test[i]);
  }
  return out;
}

void collect_clauses(const RegressionTree& tree, const TreeNode* node,
                     std::vector<std::string>& steps, std::vector<std::string>& out) {
  if (node->is_leaf()) {
    std::string line = to_string(tree.head);
    if (!steps.empty()) {
      line += " :- ";
      for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i > 0) line += ", ";
        line += steps[i];
      }
    }
    line += ".  % value=" + format_value(node->value);
    out.push_back(std::move(line));
    return;
  }
  steps.push_back(format_test(node->test));
  collect_clauses(tree, node->on_true.get(), steps, out);
  steps.back() = "\\+(" + format_test(node->test) + ")";
  collect_clauses(tree, node->on_false.get(), steps, out);
  steps.pop_back();
}

}  // namespace

std::vector<std::string> clause_listing(const RegressionTree& tree) {
  std::vector<std::string> out;
  std::vector<std::string> steps;
  collect_clauses(tree, tree.root.get(), steps, out);
  return out;
}

std::string format_value(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace rdnboost
