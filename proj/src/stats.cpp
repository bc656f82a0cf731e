#include "swarmcongest/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "swarmcongest/error.hpp"

namespace swarmcongest {

const AnovaRow& AnovaResult::row(const std::string& effect) const {
  for (const auto& r : rows) {
    if (r.effect == effect) return r;
  }
  throw PreconditionError("no ANOVA effect '" + effect + "'");
}

AnovaResult anova_between_groups(const std::vector<Observation>& observations,
                                 const std::vector<std::string>& factors) {
  const std::size_t k = factors.size();
  if (k < 2 || k > 3) throw PreconditionError("ANOVA supports 2 or 3 factors");
  if (observations.empty()) throw PreconditionError("ANOVA needs observations");

  std::vector<std::set<std::string>> levels(k);
  for (const auto& o : observations) {
    if (o.levels.size() != k) throw PreconditionError("observation level count mismatch");
    for (std::size_t f = 0; f < k; ++f) levels[f].insert(o.levels[f]);
  }
  std::size_t n_cells = 1;
  for (std::size_t f = 0; f < k; ++f) {
    if (levels[f].size() < 2) {
      throw PreconditionError("factor '" + factors[f] + "' needs at least two levels");
    }
    n_cells *= levels[f].size();
  }

  std::map<std::vector<std::string>, std::vector<double>> cells;
  double grand_sum = 0.0;
  for (const auto& o : observations) {
    cells[o.levels].push_back(o.value);
    grand_sum += o.value;
  }
  if (cells.size() != n_cells) throw PreconditionError("design has empty cells");
  const std::size_t per_cell = cells.begin()->second.size();
  for (const auto& [_, values] : cells) {
    if (values.size() != per_cell) throw PreconditionError("design is unbalanced");
  }
  if (per_cell < 2) throw PreconditionError("each cell needs at least two observations");

  const double n = static_cast<double>(observations.size());
  const double grand = grand_sum / n;

  AnovaResult result;
  for (const auto& o : observations) result.ss_total += (o.value - grand) * (o.value - grand);
  for (const auto& [_, values] : cells) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    result.ss_between += values.size() * (mean - grand) * (mean - grand);
    for (double v : values) result.ss_within += (v - mean) * (v - mean);
  }
  result.df_within = n - static_cast<double>(n_cells);
  const double ms_within = result.ss_within / result.df_within;

  for (std::size_t f = 0; f < k; ++f) {
    std::map<std::string, std::pair<double, std::size_t>> by_level;
    for (const auto& o : observations) {
      auto& acc = by_level[o.levels[f]];
      acc.first += o.value;
      ++acc.second;
    }
    AnovaRow row;
    row.effect = factors[f];
    for (const auto& [_, acc] : by_level) {
      const double mean = acc.first / static_cast<double>(acc.second);
      row.sum_of_squares += acc.second * (mean - grand) * (mean - grand);
    }
    row.df_effect = static_cast<double>(levels[f].size() - 1);
    row.df_error = result.df_within;
    // Exact zero between-level spread reports F = 0 even when the error is zero too.
    const double ms_effect = row.sum_of_squares / row.df_effect;
    if (row.sum_of_squares <= 1e-12 * std::max(1.0, result.ss_total)) {
      row.f = 0.0;
      row.p = 1.0;
    } else if (ms_within <= 0.0) {
      row.f = std::numeric_limits<double>::infinity();
      row.p = 0.0;
    } else {
      row.f = ms_effect / ms_within;
      row.p = f_upper_tail(row.f, row.df_effect, row.df_error);
    }
    result.rows.push_back(row);
  }
  return result;
}

const TukeyRow& TukeyResult::pair(const std::string& a, const std::string& b) const {
  for (const auto& r : rows) {
    if ((r.group_a == a && r.group_b == b) || (r.group_a == b && r.group_b == a)) return r;
  }
  throw PreconditionError("no Tukey pair " + a + " / " + b);
}

TukeyResult tukey_hsd(const std::vector<NamedGroup>& groups, double alpha) {
  if (groups.size() < 2) throw PreconditionError("Tukey HSD needs at least two groups");
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("alpha must lie in (0, 1)");
  std::vector<double> means;
  double ss_within = 0.0;
  double n_total = 0.0;
  for (const auto& [name, values] : groups) {
    if (values.size() < 2) {
      throw PreconditionError("group '" + name + "' needs at least two values");
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    for (double v : values) ss_within += (v - mean) * (v - mean);
    means.push_back(mean);
    n_total += static_cast<double>(values.size());
  }
  const double k = static_cast<double>(groups.size());
  TukeyResult result;
  result.alpha = alpha;
  result.df_error = n_total - k;
  result.mse = ss_within / result.df_error;
  result.q_critical = qtukey(1.0 - alpha, k, result.df_error);

  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      TukeyRow row;
      row.group_a = groups[i].first;
      row.group_b = groups[j].first;
      row.mean_difference = means[j] - means[i];
      const double se = std::sqrt(result.mse / 2.0 *
                                  (1.0 / groups[i].second.size() + 1.0 / groups[j].second.size()));
      const double diff = std::abs(row.mean_difference);
      if (se > 0.0) {
        row.q = diff / se;
      } else {
        row.q = diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      }
      row.p = std::isinf(row.q) ? 0.0 : 1.0 - ptukey(row.q, k, result.df_error);
      row.significant = row.q > result.q_critical;
      result.rows.push_back(row);
    }
  }
  return result;
}

PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw PreconditionError("pearson: length mismatch");
  if (x.size() < 3) throw PreconditionError("pearson: need at least 3 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) throw PreconditionError("pearson: zero variance");
  PearsonResult r;
  r.n = x.size();
  r.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = n - 2.0;
  if (std::abs(r.r) >= 1.0) {
    r.p = 0.0;
  } else {
    r.p = t_two_sided_p(r.r * std::sqrt(df / (1.0 - r.r * r.r)), df);
  }
  return r;
}

double median(std::vector<double> values) {
  if (values.empty()) throw PreconditionError("median of empty list");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

}  // namespace swarmcongest
