#pragma once

#include <optional>
#include <vector>

namespace thermokc {

double mean(const std::vector<double>& v);

// Sample Pearson correlation. Undefined (nullopt) for fewer than 3 points
// or when either argument has zero variance.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

// 1-based ranks; tied values share the average of the ranks they span.
std::vector<double> fractional_ranks(const std::vector<double>& v);

// Spearman rank correlation: Pearson applied to fractional ranks.
std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y);

// sum (O_i - E_i)^2 / E_i; expected counts must be positive.
double chi_square_stat(const std::vector<long long>& observed,
                       const std::vector<double>& expected);

// Upper-tail p-value of the chi-square distribution: Q(dof/2, stat/2)
// with Q the regularized upper incomplete gamma function.
double chi_square_pvalue(double stat, int dof);

}  // namespace thermokc
