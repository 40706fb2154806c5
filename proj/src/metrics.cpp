#include "rdnboost/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rdnboost {

namespace {

constexpr double kCllClamp = 1e-9;

double auc_roc_midrank(const std::vector<std::pair<bool, double>>& scored, int n_pos, int n_neg) {
  // Wilcoxon rank-sum form of the pairwise statistic: ties get the midrank.
  std::vector<std::pair<double, bool>> by_score;
  by_score.reserve(scored.size());
  for (const auto& [label, p] : scored) by_score.emplace_back(p, label);
  std::sort(by_score.begin(), by_score.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < by_score.size()) {
    std::size_t j = i;
    while (j < by_score.size() && by_score[j].first == by_score[i].first) ++j;
    double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (by_score[k].second) rank_sum_pos += midrank;
    }
    i = j;
  }
  double np = n_pos, nn = n_neg;
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

double auc_pr_steps(const std::vector<std::pair<bool, double>>& scored, int n_pos) {
  // Thresholds descend through distinct scores; equal scores enter together.
  std::vector<std::pair<double, bool>> by_score;
  by_score.reserve(scored.size());
  for (const auto& [label, p] : scored) by_score.emplace_back(p, label);
  std::sort(by_score.begin(), by_score.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  double area = 0.0;
  double tp = 0.0, fp = 0.0;
  double prev_recall = 0.0;
  std::size_t i = 0;
  while (i < by_score.size()) {
    std::size_t j = i;
    while (j < by_score.size() && by_score[j].first == by_score[i].first) ++j;
    for (std::size_t k = i; k < j; ++k) {
      if (by_score[k].second) {
        tp += 1.0;
      } else {
        fp += 1.0;
      }
    }
    double recall = tp / static_cast<double>(n_pos);
    double precision = tp / (tp + fp);
    area += (recall - prev_recall) * precision;
    prev_recall = recall;
    i = j;
  }
  return area;
}

}  // namespace

EvalReport evaluate(const std::vector<std::pair<bool, double>>& scored) {
  EvalReport report;
  double cll_sum = 0.0;
  for (const auto& [label, p] : scored) {
    double q = std::clamp(p, kCllClamp, 1.0 - kCllClamp);
    if (label) {
      ++report.n_pos;
      cll_sum += std::log(q);
    } else {
      ++report.n_neg;
      cll_sum += std::log(1.0 - q);
    }
  }
  if (!scored.empty()) report.mean_cll = cll_sum / static_cast<double>(scored.size());
  if (report.n_pos > 0 && report.n_neg > 0) {
    report.auc_roc = auc_roc_midrank(scored, report.n_pos, report.n_neg);
    report.auc_pr = auc_pr_steps(scored, report.n_pos);
  }
  return report;
}

std::string format_report(const EvalReport& report) {
  char buf[64];
  auto fmt = [&buf](const std::optional<double>& v) -> std::string {
    if (!v) return "absent";
    std::snprintf(buf, sizeof(buf), "%.6f", *v);
    return buf;
  };
  std::string out;
  out += "AUC-ROC   " + fmt(report.auc_roc) + "\n";
  out += "AUC-PR    " + fmt(report.auc_pr) + "\n";
  out += "Mean CLL  " + fmt(report.mean_cll) + "\n";
  out += "Positives " + std::to_string(report.n_pos) + "\n";
  out += "Negatives " + std::to_string(report.n_neg) + "\n";
  out += "auc_roc " + fmt(report.auc_roc) + "\n";
  out += "auc_pr " + fmt(report.auc_pr) + "\n";
  out += "mean_cll " + fmt(report.mean_cll) + "\n";
  out += "n_pos " + std::to_string(report.n_pos) + "\n";
  out += "n_neg " + std::to_string(report.n_neg) + "\n";
  return out;
}

}  // namespace rdnboost
