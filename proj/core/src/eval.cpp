#include "swiftnorm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "swiftnorm/error.hpp"

namespace swiftnorm {

Contingency contingency(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& machine) {
  if (gold.size() != machine.size()) throw LengthMismatch(gold.size(), machine.size());
  if (gold.empty()) throw Error("cannot evaluate an empty labeling");

  std::unordered_map<std::size_t, std::size_t> gold_id;
  std::unordered_map<std::size_t, std::size_t> machine_id;
  Contingency c;
  c.n_total = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto [g, g_new] = gold_id.try_emplace(gold[i], gold_id.size());
    const auto [m, m_new] = machine_id.try_emplace(machine[i], machine_id.size());
    if (g_new) c.gold_sizes.push_back(0);
    if (m_new) c.machine_sizes.push_back(0);
    ++c.gold_sizes[g->second];
    ++c.machine_sizes[m->second];
    ++c.counts[{g->second, m->second}];
  }
  return c;
}

double entropy(const std::vector<std::size_t>& sizes, std::size_t n_total) {
  const double n = static_cast<double>(n_total);
  double h = 0.0;
  for (const auto s : sizes) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / n;
    h -= p * std::log(p);
  }
  return h;
}

double mutual_information(const Contingency& c) {
  const double n = static_cast<double>(c.n_total);
  double mi = 0.0;
  for (const auto& [key, count] : c.counts) {
    const double nij = static_cast<double>(count);
    const double a = static_cast<double>(c.gold_sizes[key.first]);
    const double b = static_cast<double>(c.machine_sizes[key.second]);
    mi += nij / n * std::log(n * nij / (a * b));
  }
  return mi;
}

// EMI only depends on the two size multisets, so distinct sizes are paired
// and weighted by their multiplicities.
double expected_mutual_information(const Contingency& c) {
  const std::size_t n_total = c.n_total;
  const double n = static_cast<double>(n_total);
  std::vector<double> log_fact(n_total + 1, 0.0);
  for (std::size_t k = 2; k <= n_total; ++k) log_fact[k] = log_fact[k - 1] + std::log(static_cast<double>(k));

  auto histogram = [](const std::vector<std::size_t>& sizes) {
    std::map<std::size_t, std::size_t> h;
    for (const auto s : sizes) ++h[s];
    return h;
  };
  const auto gold_hist = histogram(c.gold_sizes);
  const auto machine_hist = histogram(c.machine_sizes);

  double emi = 0.0;
  for (const auto& [a, count_a] : gold_hist) {
    for (const auto& [b, count_b] : machine_hist) {
      const std::size_t lo = std::max<std::size_t>(1, a + b > n_total ? a + b - n_total : 0);
      const std::size_t hi = std::min(a, b);
      const double fixed = log_fact[a] + log_fact[b] + log_fact[n_total - a] + log_fact[n_total - b] -
                           log_fact[n_total];
      double term = 0.0;
      for (std::size_t nij = lo; nij <= hi; ++nij) {
        const double log_p = fixed - log_fact[nij] - log_fact[a - nij] - log_fact[b - nij] -
                             log_fact[n_total - a - b + nij];
        const double x = static_cast<double>(nij);
        term += x / n * std::log(n * x / (static_cast<double>(a) * static_cast<double>(b))) * std::exp(log_p);
      }
      emi += term * static_cast<double>(count_a) * static_cast<double>(count_b);
    }
  }
  return emi;
}

double ami(const Contingency& c) {
  const double mi = mutual_information(c);
  const double emi = expected_mutual_information(c);
  const double mean_h = 0.5 * (entropy(c.gold_sizes, c.n_total) + entropy(c.machine_sizes, c.n_total));
  const double denom = mean_h - emi;
  const double scale = std::max(1.0, mean_h);
  if (std::abs(denom) <= 1e-12 * scale) {
    return std::abs(mi - emi) <= 1e-12 * scale ? 1.0 : 0.0;
  }
  return (mi - emi) / denom;
}

JaccardScores jaccard_pr(const Contingency& c) {
  double inv_precision = 0.0;
  double inv_recall = 0.0;
  for (const auto& [key, count] : c.counts) {
    const double s = static_cast<double>(count);
    inv_precision += static_cast<double>(c.machine_sizes[key.second]) / s;
    inv_recall += static_cast<double>(c.gold_sizes[key.first]) / s;
  }
  const double pairs = static_cast<double>(c.counts.size());
  return JaccardScores{pairs / inv_precision, pairs / inv_recall};
}

JaccardScores jaccard_pr(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& machine) {
  return jaccard_pr(contingency(gold, machine));
}

EvalReport evaluate(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& machine,
                    ExperimentSettings settings) {
  const Contingency c = contingency(gold, machine);
  const JaccardScores pr = jaccard_pr(c);
  EvalReport report;
  report.ami = ami(c);
  report.recall_hm = pr.recall_hm;
  report.precision_hm = pr.precision_hm;
  report.n_clusters_machine = c.machine_sizes.size();
  report.n_clusters_gold = c.gold_sizes.size();
  report.settings = std::move(settings);
  return report;
}

}  // namespace swiftnorm
