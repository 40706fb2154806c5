#include "rdnboost/background.hpp"

#include <algorithm>
#include <set>

namespace rdnboost {

namespace {

// Deterministic fresh-name sequence A, B, ..., Z, A1, B1, ... skipping names
// already in use.
std::string fresh_name(std::size_t i) {
  std::string name(1, static_cast<char>('A' + i % 26));
  if (i >= 26) name += std::to_string(i / 26);
  return name;
}

std::vector<std::string> fresh_pool(const VariableContext& ctx, std::size_t count) {
  std::vector<std::string> pool;
  for (std::size_t i = 0; pool.size() < count; ++i) {
    std::string name = fresh_name(i);
    if (!ctx.count(name)) pool.push_back(std::move(name));
  }
  return pool;
}

std::vector<std::string> ctx_vars_of_type(const VariableContext& ctx, const std::string& type) {
  std::vector<std::string> out;
  for (const auto& [var, t] : ctx) {
    if (t == type) out.push_back(var);
  }
  return out;  // std::map iteration keeps this sorted
}

// Canonical key identifying a candidate up to renaming of its fresh variables.
std::string dedup_key(const Atom& atom, const VariableContext& ctx) {
  std::string key = atom.predicate;
  key += '/';
  std::map<std::string, int> fresh_index;
  for (const Term& t : atom.args) {
    key += '|';
    if (t.is_constant()) {
      key += 'c';
      key += t.name();
    } else if (ctx.count(t.name())) {
      key += 'v';
      key += t.name();
    } else {
      auto [it, inserted] = fresh_index.emplace(t.name(), static_cast<int>(fresh_index.size()));
      key += 'f';
      key += std::to_string(it->second);
    }
  }
  return key;
}

}  // namespace

std::vector<CandidateLiteral> refinements(const Background& bg, const VariableContext& ctx,
                                          const TypeMap& constants,
                                          const std::vector<Atom>& path) {
  std::vector<CandidateLiteral> out;
  std::set<std::string> seen;

  for (const Mode& mode : bg.modes) {
    // Term options per argument position; nullopt marks a fresh-variable slot.
    std::vector<std::vector<std::optional<Term>>> options(mode.args.size());
    bool feasible = true;
    for (std::size_t i = 0; i < mode.args.size(); ++i) {
      const ModeArg& arg = mode.args[i];
      switch (arg.role) {
        case ArgRole::Input:
          for (const std::string& v : ctx_vars_of_type(ctx, arg.type)) {
            options[i].push_back(Term::variable(v));
          }
          break;
        case ArgRole::Output:
          for (const std::string& v : ctx_vars_of_type(ctx, arg.type)) {
            options[i].push_back(Term::variable(v));
          }
          options[i].push_back(std::nullopt);
          break;
        case ArgRole::Constant: {
          auto it = constants.find(arg.type);
          if (it != constants.end()) {
            for (const std::string& c : it->second) options[i].push_back(Term::constant(c));
          }
          break;
        }
      }
      if (options[i].empty()) {
        feasible = false;
        break;
      }
    }
    if (!feasible || mode.args.empty()) continue;

    std::vector<std::string> pool = fresh_pool(ctx, mode.args.size());

    // Odometer over the option lists, rightmost position fastest.
    std::vector<std::size_t> at(mode.args.size(), 0);
    while (true) {
      Atom atom;
      atom.predicate = mode.predicate;
      atom.args.reserve(mode.args.size());
      VariableContext introduces;
      std::size_t fresh_used = 0;
      bool aliased = false;
      std::set<std::string> vars_in_atom;
      for (std::size_t i = 0; i < mode.args.size(); ++i) {
        const std::optional<Term>& opt = options[i][at[i]];
        Term t = opt ? *opt : Term::variable(pool[fresh_used]);
        if (!opt) {
          introduces.emplace(t.name(), mode.args[i].type);
          ++fresh_used;
        }
        if (t.is_variable() && !vars_in_atom.insert(t.name()).second) aliased = true;
        atom.args.push_back(std::move(t));
      }

      bool keep = fresh_used <= static_cast<std::size_t>(bg.max_new_vars_per_literal);
      if (keep && aliased && !bg.allow_self_aliasing) keep = false;
      if (keep && std::find(path.begin(), path.end(), atom) != path.end()) keep = false;
      if (keep && seen.insert(dedup_key(atom, ctx)).second) {
        out.push_back(CandidateLiteral{std::move(atom), std::move(introduces)});
      }

      bool wrapped = false;
      std::size_t pos = mode.args.size();
      while (true) {
        if (pos == 0) {
          wrapped = true;
          break;
        }
        --pos;
        if (++at[pos] < options[pos].size()) break;
        at[pos] = 0;
      }
      if (wrapped) break;
    }
  }
  return out;
}

BackgroundValidation validate_background(const Background& bg, const std::string& target) {
  BackgroundValidation v;
  if (bg.modes.empty()) v.errors.push_back("no modes declared");
  if (!find_mode(bg, target)) v.errors.push_back("no mode for target predicate '" + target + "'");
  if (bg.max_tree_depth < 1) v.errors.push_back("max_tree_depth must be >= 1");
  if (bg.node_size < 1) v.errors.push_back("node_size must be >= 1");
  if (bg.n_trees < 0) v.errors.push_back("n_trees must be >= 0");
  if (bg.max_new_vars_per_literal < 1) v.errors.push_back("max_new_vars_per_literal must be >= 1");
  if (bg.min_examples_per_node < 1) v.errors.push_back("min_examples_per_node must be >= 1");
  if (!v.errors.empty()) return v;

  // Types reachable through chains of bindable literals, starting from the
  // head variables.
  std::set<std::string> reachable;
  const Mode* head = find_mode(bg, target);
  for (const ModeArg& a : head->args) reachable.insert(a.type);
  bool grew = true;
  std::vector<bool> usable(bg.modes.size(), false);
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < bg.modes.size(); ++i) {
      if (usable[i]) continue;
      const Mode& m = bg.modes[i];
      bool inputs_ok = true;
      for (const ModeArg& a : m.args) {
        if (a.role == ArgRole::Input && !reachable.count(a.type)) inputs_ok = false;
      }
      if (!inputs_ok) continue;
      usable[i] = true;
      grew = true;
      for (const ModeArg& a : m.args) {
        if (a.role == ArgRole::Output) reachable.insert(a.type);
      }
    }
  }
  for (std::size_t i = 0; i < bg.modes.size(); ++i) {
    if (!usable[i]) {
      v.warnings.push_back("mode " + to_string(bg.modes[i]) +
                           " is unreachable from the target's variable types");
    }
  }
  return v;
}

const Mode* find_mode(const Background& bg, const std::string& predicate) {
  for (const Mode& m : bg.modes) {
    if (m.predicate == predicate) return &m;
  }
  return nullptr;
}

const Mode* find_mode(const Background& bg, const std::string& predicate, int arity) {
  for (const Mode& m : bg.modes) {
    if (m.predicate == predicate && m.arity() == arity) return &m;
  }
  return nullptr;
}

std::string to_string(const Mode& m) {
  std::string out = m.predicate;
  out += '(';
  for (std::size_t i = 0; i < m.args.size(); ++i) {
    if (i > 0) out += ',';
    switch (m.args[i].role) {
      case ArgRole::Input: out += '+'; break;
      case ArgRole::Output: out += '-'; break;
      case ArgRole::Constant: out += '#'; break;
    }
    out += m.args[i].type;
  }
  out += ").";
  return out;
}

}  // namespace rdnboost
