#ifndef RDNBOOST_MODEL_HPP
#define RDNBOOST_MODEL_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rdnboost/background.hpp"
#include "rdnboost/database.hpp"
#include "rdnboost/tree.hpp"

namespace rdnboost {

class NotFittedError : public std::runtime_error {
 public:
  NotFittedError() : std::runtime_error("model is not fitted; call fit first") {}
};

class EmptyDatabaseError : public std::runtime_error {
 public:
  EmptyDatabaseError() : std::runtime_error("training database has no positive or negative examples") {}
};

class VersionError : public std::runtime_error {
 public:
  explicit VersionError(const std::string& found)
      : std::runtime_error("unknown model format version: '" + found + "'") {}
};

class ModelFormatError : public std::runtime_error {
 public:
  ModelFormatError(int line, const std::string& message)
      : std::runtime_error("model file line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

double sigmoid(double x);

// Gradient-boosted relational dependency network for a single target
// predicate. The potential of an atom is psi0 plus the learning-rate-scaled
// sum of tree outputs; its probability is the logistic sigmoid of the
// potential. Fitting is deterministic; a fitted model is immutable and safe
// for concurrent prediction.
class BoostedRDN {
 public:
  BoostedRDN(Background background, std::string target);

  // Functional gradient boosting: each round fits a regression tree to the
  // pseudo-residuals y - p of the Bernoulli log-likelihood and adds it to
  // the ensemble. Refitting an already-fitted model replaces its trees.
  void fit(const Database& db);

  // Probability per query atom, db.pos order then db.neg order.
  std::vector<std::pair<Atom, double>> predict_proba(const Database& db) const;

  // Positive iff probability > 0.5; ties are negative.
  std::vector<std::pair<Atom, bool>> predict(const Database& db) const;

  double potential(const Atom& example, const Database& db) const;

  // Canonical versioned text form; byte-stable under a
  // deserialize/serialize round trip.
  std::string serialize() const;
  static BoostedRDN deserialize(const std::string& text);

  const Background& background() const { return background_; }
  const std::string& target() const { return target_; }
  const std::vector<RegressionTree>& trees() const { return trees_; }
  const Atom& head() const { return head_; }
  bool fitted() const { return fitted_; }
  double psi0() const { return psi0_; }
  double learning_rate() const { return learning_rate_; }

  void set_psi0(double v) { psi0_ = v; }
  // When enabled, fit sets psi0 = ln(|pos| / |neg|).
  void set_psi0_from_prior(bool enabled) { psi0_from_prior_ = enabled; }
  void set_learning_rate(double v);

 private:
  void require_no_target_facts(const Database& db) const;

  Background background_;
  std::string target_;
  Atom head_;
  std::vector<RegressionTree> trees_;
  double psi0_ = 0.0;
  double learning_rate_ = 1.0;
  bool psi0_from_prior_ = false;
  bool fitted_ = false;
};

}  // namespace rdnboost

#endif  // RDNBOOST_MODEL_HPP
