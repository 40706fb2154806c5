#ifndef RDNBOOST_METRICS_HPP
#define RDNBOOST_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

namespace rdnboost {

// Ranking and likelihood metrics for probabilistic predictions. AUCs are
// absent when either class is missing; the mean conditional log-likelihood
// is always reported.
struct EvalReport {
  std::optional<double> auc_roc;
  std::optional<double> auc_pr;
  double mean_cll = 0.0;
  int n_pos = 0;
  int n_neg = 0;

  bool degenerate() const { return n_pos == 0 || n_neg == 0; }
};

// scored: (label, probability) pairs. AUC-ROC uses the midrank convention
// (ties count 1/2), AUC-PR uses precision-recall step interpolation, and the
// CLL clamps probabilities to [1e-9, 1-1e-9] before taking logs.
EvalReport evaluate(const std::vector<std::pair<bool, double>>& scored);

// Aligned human-readable block followed by machine-readable key-value lines.
std::string format_report(const EvalReport& report);

}  // namespace rdnboost

#endif  // RDNBOOST_METRICS_HPP
