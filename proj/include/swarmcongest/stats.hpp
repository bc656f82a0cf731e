#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace swarmcongest {

// ---- distributions ----

// P(Q <= q) for the studentized range of `groups` means with `df` error degrees
// of freedom. df may be +inf.
double ptukey(double q, double groups, double df);

// Inverse of ptukey in q.
double qtukey(double probability, double groups, double df);

// Upper tail P(F >= f) of the F(df1, df2) distribution.
double f_upper_tail(double f, double df1, double df2);

// Two-sided p for a Student t statistic.
double t_two_sided_p(double t, double df);

// ---- ANOVA ----

struct Observation {
  std::vector<std::string> levels;  // one level per factor, in factor order
  double value = 0.0;
};

struct AnovaRow {
  std::string effect;
  double sum_of_squares = 0.0;
  double f = 0.0;
  double df_effect = 0.0;
  double df_error = 0.0;
  double p = 1.0;
};

struct AnovaResult {
  std::vector<AnovaRow> rows;  // main effects, factor order
  double ss_total = 0.0;
  double ss_between = 0.0;  // all cell means (main effects + interactions)
  double ss_within = 0.0;
  double df_within = 0.0;

  const AnovaRow& row(const std::string& effect) const;
};

// Balanced fixed-effects factorial ANOVA over 2 or 3 factors. The model holds
// every interaction; only main effects are reported, each tested against the
// within-cell error. Throws PreconditionError on unbalanced designs, empty
// cells, a factor with one level, or cells with fewer than two observations.
AnovaResult anova_between_groups(const std::vector<Observation>& observations,
                                 const std::vector<std::string>& factors);

// ---- Tukey HSD ----

struct TukeyRow {
  std::string group_a;
  std::string group_b;
  double mean_difference = 0.0;  // mean(b) - mean(a)
  double q = 0.0;
  double p = 1.0;
  bool significant = false;
};

struct TukeyResult {
  double alpha = 0.05;
  double q_critical = 0.0;
  double df_error = 0.0;
  double mse = 0.0;
  std::vector<TukeyRow> rows;  // each unordered pair once, input order

  const TukeyRow& pair(const std::string& a, const std::string& b) const;
};

using NamedGroup = std::pair<std::string, std::vector<double>>;

// Tukey-Kramer comparisons with pooled within-group variance.
TukeyResult tukey_hsd(const std::vector<NamedGroup>& groups, double alpha = 0.05);

// ---- Pearson ----

struct PearsonResult {
  double r = 0.0;
  std::size_t n = 0;
  double p = 1.0;  // two-sided, t with n - 2 df
};

PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> values);

}  // namespace swarmcongest
