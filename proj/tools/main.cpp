// rdnboost command line: train, predict, eval, bench.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdnboost/background.hpp"
#include "rdnboost/database.hpp"
#include "rdnboost/metrics.hpp"
#include "rdnboost/model.hpp"
#include "rdnboost/parser.hpp"
#include "rdnboost/toy.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitIo = 2;

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitBadInput, "cannot read file: " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw CliError{kExitIo, "read failure: " + path};
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitIo, "cannot write file: " + path};
  out << content;
  out.flush();
  if (!out) throw CliError{kExitIo, "write failure: " + path};
}

struct DatasetPaths {
  std::string pos, neg, facts, modes;
  bool toy = false;
};

struct Hyper {
  int trees = 10;
  int depth = 3;
  int node_size = 2;
  double learning_rate = 1.0;
  double psi0 = 0.0;
  bool psi0_prior = false;
  long seed = 0;  // reserved; the pipeline is deterministic
};

void add_dataset_flags(CLI::App* cmd, DatasetPaths& ds, bool with_toy = true) {
  cmd->add_option("--pos", ds.pos, "positive examples file");
  cmd->add_option("--neg", ds.neg, "negative examples file");
  cmd->add_option("--facts", ds.facts, "ground facts file");
  cmd->add_option("--modes", ds.modes, "mode declarations file");
  if (with_toy) {
    cmd->add_flag("--toy", ds.toy, "use the built-in smokes-friends-cancer dataset");
  }
}

void add_hyper_flags(CLI::App* cmd, Hyper& hp) {
  cmd->add_option("--trees", hp.trees, "number of boosted trees")->check(CLI::NonNegativeNumber);
  cmd->add_option("--depth", hp.depth, "maximum tree depth")->check(CLI::PositiveNumber);
  cmd->add_option("--node-size", hp.node_size, "maximum literals per node test")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--learning-rate", hp.learning_rate, "shrinkage in (0,1]");
  cmd->add_option("--psi0", hp.psi0, "initial potential");
  cmd->add_flag("--psi0-prior", hp.psi0_prior, "set psi0 = ln(|pos|/|neg|) from the training data");
  cmd->add_option("--seed", hp.seed, "random seed (reserved; training is deterministic)");
}

struct LoadedData {
  std::vector<rdnboost::Atom> pos, neg, facts;
  std::vector<rdnboost::Mode> modes;
};

LoadedData load_dataset(const DatasetPaths& ds, bool facts_required, bool modes_required) {
  LoadedData data;
  if (ds.toy) {
    data.pos = rdnboost::parse_ground_atoms(rdnboost::toy::kPosText).items;
    data.neg = rdnboost::parse_ground_atoms(rdnboost::toy::kNegText).items;
    data.facts = rdnboost::parse_ground_atoms(rdnboost::toy::kFactsText).items;
    data.modes = rdnboost::toy::modes();
    return data;
  }
  std::vector<std::string> missing;
  if (ds.pos.empty()) missing.push_back("--pos");
  if (ds.neg.empty()) missing.push_back("--neg");
  if (facts_required && ds.facts.empty()) missing.push_back("--facts");
  if (modes_required && ds.modes.empty()) missing.push_back("--modes");
  if (!missing.empty()) {
    std::string msg = "missing required option(s):";
    for (const auto& m : missing) msg += " " + m;
    msg += " (or use --toy)";
    throw CliError{kExitBadInput, msg};
  }

  std::vector<std::string> errors;
  auto load_atoms = [&errors](const std::string& path) {
    auto parsed = rdnboost::parse_ground_atoms(read_file(path));
    for (const auto& e : parsed.errors) errors.push_back(rdnboost::format_error(path, e));
    return std::move(parsed.items);
  };
  data.pos = load_atoms(ds.pos);
  data.neg = load_atoms(ds.neg);
  if (!ds.facts.empty()) data.facts = load_atoms(ds.facts);
  if (!ds.modes.empty()) {
    auto parsed = rdnboost::parse_modes(read_file(ds.modes));
    for (const auto& e : parsed.errors) errors.push_back(rdnboost::format_error(ds.modes, e));
    data.modes = std::move(parsed.items);
  }
  if (!errors.empty()) {
    std::string msg;
    for (std::size_t i = 0; i < errors.size(); ++i) {
      if (i > 0) msg += '\n';
      msg += errors[i];
    }
    throw CliError{kExitBadInput, msg};
  }
  return data;
}

std::string infer_target(const LoadedData& data, const std::string& explicit_target) {
  std::string target = explicit_target;
  for (const auto* atoms : {&data.pos, &data.neg}) {
    for (const auto& a : *atoms) {
      if (target.empty()) {
        target = a.predicate;
      } else if (a.predicate != target) {
        throw CliError{kExitBadInput, "examples mix predicates '" + target + "' and '" +
                                          a.predicate + "'; use --target to pick one"};
      }
    }
  }
  if (target.empty()) throw CliError{kExitBadInput, "cannot infer target: no examples given"};
  return target;
}

rdnboost::Background make_background(const LoadedData& data, const Hyper& hp) {
  rdnboost::Background bg;
  bg.modes = data.modes;
  bg.n_trees = hp.trees;
  bg.max_tree_depth = hp.depth;
  bg.node_size = hp.node_size;
  return bg;
}

rdnboost::BoostedRDN make_model(const LoadedData& data, const Hyper& hp, const std::string& target) {
  rdnboost::BoostedRDN model(make_background(data, hp), target);
  model.set_psi0(hp.psi0);
  model.set_psi0_from_prior(hp.psi0_prior);
  model.set_learning_rate(hp.learning_rate);
  return model;
}

// All target-typed constants that are not positive examples. Unary targets
// enumerate one type; wider targets enumerate the cross product.
std::vector<rdnboost::Atom> closed_world_negatives(const rdnboost::Database& db,
                                                   const rdnboost::Mode& target_mode) {
  std::vector<std::vector<std::string>> pools;
  for (const auto& arg : target_mode.args) {
    auto it = db.type_map().find(arg.type);
    pools.push_back(it == db.type_map().end() ? std::vector<std::string>{} : it->second);
  }
  std::set<rdnboost::Atom> pos_set(db.pos().begin(), db.pos().end());
  std::vector<rdnboost::Atom> out;
  std::vector<std::size_t> at(pools.size(), 0);
  for (const auto& pool : pools) {
    if (pool.empty()) return out;
  }
  while (true) {
    rdnboost::Atom a;
    a.predicate = target_mode.predicate;
    for (std::size_t i = 0; i < pools.size(); ++i) {
      a.args.push_back(rdnboost::Term::constant(pools[i][at[i]]));
    }
    if (!pos_set.count(a)) out.push_back(std::move(a));
    bool wrapped = false;
    std::size_t pos = pools.size();
    while (true) {
      if (pos == 0) {
        wrapped = true;
        break;
      }
      --pos;
      if (++at[pos] < pools[pos].size()) break;
      at[pos] = 0;
    }
    if (wrapped) break;
  }
  return out;
}

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", p);
  return buf;
}

double fit_seconds(rdnboost::BoostedRDN& model, const rdnboost::Database& db) {
  auto start = std::chrono::steady_clock::now();
  model.fit(db);
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

int cmd_train(const DatasetPaths& ds, const Hyper& hp, const std::string& explicit_target,
              const std::string& out_path, bool cw_negatives) {
  LoadedData data = load_dataset(ds, /*facts_required=*/true, /*modes_required=*/true);
  std::string target = infer_target(data, explicit_target);
  rdnboost::Database db =
      rdnboost::build_database(data.pos, data.neg, data.facts, data.modes);
  if (cw_negatives && data.neg.empty()) {
    rdnboost::Background bg = make_background(data, hp);
    const rdnboost::Mode* m = rdnboost::find_mode(bg, target);
    if (!m) throw rdnboost::NoModeError(target);
    data.neg = closed_world_negatives(db, *m);
    db = rdnboost::build_database(data.pos, data.neg, data.facts, data.modes);
  }

  rdnboost::BoostedRDN model = make_model(data, hp, target);
  auto validation = rdnboost::validate_background(model.background(), target);
  for (const auto& w : validation.warnings) std::cerr << "warning: " << w << "\n";

  double seconds = fit_seconds(model, db);
  write_file(out_path, model.serialize());

  for (std::size_t i = 0; i < model.trees().size(); ++i) {
    std::cout << "% tree " << i << "\n";
    for (const auto& line : rdnboost::clause_listing(model.trees()[i])) {
      std::cout << line << "\n";
    }
  }
  std::printf("trained %zu trees in %.3f s on %zu pos / %zu neg examples\n",
              model.trees().size(), seconds, db.pos().size(), db.neg().size());
  return kExitOk;
}

int cmd_predict(const DatasetPaths& ds, const std::string& model_path,
                const std::string& out_path) {
  rdnboost::BoostedRDN model = rdnboost::BoostedRDN::deserialize(read_file(model_path));
  LoadedData data = load_dataset(ds, /*facts_required=*/true, /*modes_required=*/false);
  if (data.modes.empty()) data.modes = model.background().modes;
  rdnboost::Database db = rdnboost::build_database(data.pos, data.neg, data.facts, data.modes);

  std::string out;
  for (const auto& [atom, p] : model.predict_proba(db)) {
    out += rdnboost::to_string(atom);
    out += ' ';
    out += format_probability(p);
    out += '\n';
  }
  write_file(out_path, out);
  return kExitOk;
}

int cmd_eval(const DatasetPaths& ds, const std::string& pred_path) {
  std::string text = read_file(pred_path);
  std::vector<std::pair<rdnboost::Atom, double>> predictions;
  {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto space = line.find_last_of(' ');
      if (space == std::string::npos) {
        throw CliError{kExitBadInput, pred_path + ":" + std::to_string(line_no) +
                                          ": expected '<atom> <probability>'"};
      }
      auto atom = rdnboost::parse_ground_atom(line.substr(0, space) + ".");
      if (!atom.ok()) {
        throw CliError{kExitBadInput, pred_path + ":" + std::to_string(line_no) + ": " +
                                          atom.error->message};
      }
      try {
        predictions.emplace_back(std::move(*atom.value), std::stod(line.substr(space + 1)));
      } catch (const std::exception&) {
        throw CliError{kExitBadInput, pred_path + ":" + std::to_string(line_no) +
                                          ": bad probability '" + line.substr(space + 1) + "'"};
      }
    }
  }

  LoadedData data = load_dataset(ds, /*facts_required=*/false, /*modes_required=*/false);
  std::set<rdnboost::Atom> pos_set(data.pos.begin(), data.pos.end());
  std::set<rdnboost::Atom> neg_set(data.neg.begin(), data.neg.end());
  std::vector<std::pair<bool, double>> scored;
  for (const auto& [atom, p] : predictions) {
    if (pos_set.count(atom)) {
      scored.emplace_back(true, p);
    } else if (neg_set.count(atom)) {
      scored.emplace_back(false, p);
    } else {
      throw CliError{kExitBadInput,
                     "predicted atom " + rdnboost::to_string(atom) + " is not labeled"};
    }
  }
  std::cout << rdnboost::format_report(rdnboost::evaluate(scored));
  return kExitOk;
}

int cmd_bench(const DatasetPaths& ds, const Hyper& hp, const std::string& explicit_target,
              int repeat, std::string name) {
  if (repeat < 2) {
    throw CliError{kExitBadInput, "--repeat must be >= 2 (sample standard deviation is undefined)"};
  }
  LoadedData data = load_dataset(ds, /*facts_required=*/true, /*modes_required=*/true);
  std::string target = infer_target(data, explicit_target);
  rdnboost::Database db = rdnboost::build_database(data.pos, data.neg, data.facts, data.modes);

  if (name.empty()) {
    name = ds.toy ? "toy" : std::filesystem::path(ds.facts).stem().string();
  }

  std::vector<double> seconds;
  seconds.reserve(repeat);
  for (int i = 0; i < repeat; ++i) {
    rdnboost::BoostedRDN model = make_model(data, hp, target);
    seconds.push_back(fit_seconds(model, db));
  }
  double mean = 0.0;
  for (double s : seconds) mean += s;
  mean /= seconds.size();
  double var = 0.0;
  for (double s : seconds) var += (s - mean) * (s - mean);
  var /= (seconds.size() - 1);

  std::printf("# seconds per fit: mean (std) over %d runs\n", repeat);
  std::printf("%s %.4f (%.4f)\n", name.c_str(), mean, std::sqrt(var));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-boosted relational dependency networks"};
  app.require_subcommand(1);

  DatasetPaths train_ds, predict_ds, eval_ds, bench_ds;
  Hyper train_hp, bench_hp;
  std::string train_target, bench_target, train_out, predict_model, predict_out, eval_pred;
  std::string bench_name;
  bool train_cw_neg = false;
  int bench_repeat = 10;

  CLI::App* train = app.add_subcommand("train", "learn a boosted RDN and write the model file");
  add_dataset_flags(train, train_ds);
  add_hyper_flags(train, train_hp);
  train->add_option("--target", train_target, "target predicate (default: inferred from examples)");
  train->add_option("--out", train_out, "output model file")->required();
  train->add_flag("--closed-world-negatives", train_cw_neg,
                  "when no negatives are given, generate all target-typed atoms not in pos");

  CLI::App* predict = app.add_subcommand("predict", "score query atoms with a trained model");
  add_dataset_flags(predict, predict_ds);
  predict->add_option("--model", predict_model, "model file")->required();
  predict->add_option("--out", predict_out, "output predictions file")->required();

  CLI::App* eval = app.add_subcommand("eval", "evaluate predictions against labels");
  add_dataset_flags(eval, eval_ds);
  eval->add_option("--pred", eval_pred, "predictions file from 'predict'")->required();

  CLI::App* bench = app.add_subcommand("bench", "time repeated fits, report mean (std) seconds");
  add_dataset_flags(bench, bench_ds);
  add_hyper_flags(bench, bench_hp);
  bench->add_option("--target", bench_target, "target predicate (default: inferred from examples)");
  bench->add_option("--repeat", bench_repeat, "number of timed fits (>= 2)");
  bench->add_option("--name", bench_name, "row label (default: dataset name)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    if (train->parsed()) return cmd_train(train_ds, train_hp, train_target, train_out, train_cw_neg);
    if (predict->parsed()) return cmd_predict(predict_ds, predict_model, predict_out);
    if (eval->parsed()) return cmd_eval(eval_ds, eval_pred);
    if (bench->parsed()) {
      return cmd_bench(bench_ds, bench_hp, bench_target, bench_repeat, bench_name);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const rdnboost::VersionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
