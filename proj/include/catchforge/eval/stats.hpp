#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace catchforge::eval {

class DegenerateVariance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CorrelationResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Sample Pearson r; two-sided p from t = r*sqrt((n-2)/(1-r^2)) against
/// Student t with n-2 degrees of freedom.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

/// Pearson over average ranks (ties get the mean of their rank span);
/// p via the same t-approximation.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

/// Kendall tau-b with tie corrections in both variables; two-sided p from
/// the normal approximation with the tie-corrected null variance.
CorrelationResult kendall_tau_b(std::span<const double> x, std::span<const double> y);

/// Average ranks, 1-based; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> v);

enum class CorrelationMethod { Pearson, Spearman, KendallTauB };

/// Exact two-sided permutation p-value over all n! orderings of y.
/// Only sensible for small n (guarded at n <= 10).
double permutation_p_value(std::span<const double> x, std::span<const double> y,
                           CorrelationMethod method);

}  // namespace catchforge::eval
