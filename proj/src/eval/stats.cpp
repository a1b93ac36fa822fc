#include "catchforge/eval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace catchforge::eval {

namespace {

void check_inputs(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    if (x.size() < 3) throw std::invalid_argument("need n >= 3");
}

bool constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

double two_sided_t_pvalue(double t, double df) {
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(dist, -std::fabs(t));
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double pearson_statistic(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateVariance("zero variance column");
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

double kendall_statistic(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    long long concordant = 0, discordant = 0, tx_pairs = 0, ty_pairs = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx == 0.0) ++tx_pairs;
            if (dy == 0.0) ++ty_pairs;
            if (dx == 0.0 || dy == 0.0) continue;
            if ((dx > 0.0) == (dy > 0.0))
                ++concordant;
            else
                ++discordant;
        }
    }
    const double n0 = static_cast<double>(n) * (static_cast<double>(n) - 1) / 2.0;
    double denom = std::sqrt((n0 - static_cast<double>(tx_pairs)) *
                             (n0 - static_cast<double>(ty_pairs)));
    if (denom == 0.0) throw DegenerateVariance("all values tied in a column");
    return static_cast<double>(concordant - discordant) / denom;
}

double statistic_for(CorrelationMethod m, std::span<const double> x,
                     std::span<const double> y) {
    switch (m) {
        case CorrelationMethod::Pearson: return pearson_statistic(x, y);
        case CorrelationMethod::Spearman: {
            auto rx = average_ranks(x);
            auto ry = average_ranks(y);
            return pearson_statistic(rx, ry);
        }
        case CorrelationMethod::KendallTauB: return kendall_statistic(x, y);
    }
    throw std::logic_error("unknown method");
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> v) {
    const size_t n = v.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    check_inputs(x, y);
    double r = pearson_statistic(x, y);
    const double df = static_cast<double>(x.size()) - 2.0;
    double p;
    if (std::fabs(r) >= 1.0) {
        p = 0.0;
    } else {
        double t = r * std::sqrt(df / (1.0 - r * r));
        p = two_sided_t_pvalue(t, df);
    }
    return {r, p};
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
    check_inputs(x, y);
    if (constant(x) || constant(y)) throw DegenerateVariance("all values tied in a column");
    auto rx = average_ranks(x);
    auto ry = average_ranks(y);
    return pearson(rx, ry);
}

CorrelationResult kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    check_inputs(x, y);
    if (constant(x) || constant(y)) throw DegenerateVariance("all values tied in a column");
    const size_t n = x.size();
    double tau = kendall_statistic(x, y);

    // Null variance of C - D with tie corrections.
    auto tie_groups = [](std::span<const double> v) {
        std::vector<double> sorted(v.begin(), v.end());
        std::sort(sorted.begin(), sorted.end());
        std::vector<long long> sizes;
        size_t i = 0;
        while (i < sorted.size()) {
            size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            if (j > i) sizes.push_back(static_cast<long long>(j - i + 1));
            i = j + 1;
        }
        return sizes;
    };
    auto sum_f = [](const std::vector<long long>& gs, auto f) {
        double s = 0.0;
        for (long long g : gs) s += f(static_cast<double>(g));
        return s;
    };
    auto gx = tie_groups(x);
    auto gy = tie_groups(y);
    const double dn = static_cast<double>(n);
    double v0 = dn * (dn - 1) * (2 * dn + 5);
    double vt = sum_f(gx, [](double t) { return t * (t - 1) * (2 * t + 5); });
    double vu = sum_f(gy, [](double u) { return u * (u - 1) * (2 * u + 5); });
    double t1 = sum_f(gx, [](double t) { return t * (t - 1); });
    double u1 = sum_f(gy, [](double u) { return u * (u - 1); });
    double t2 = sum_f(gx, [](double t) { return t * (t - 1) * (t - 2); });
    double u2 = sum_f(gy, [](double u) { return u * (u - 1) * (u - 2); });
    double var = (v0 - vt - vu) / 18.0 + t1 * u1 / (2.0 * dn * (dn - 1)) +
                 t2 * u2 / (9.0 * dn * (dn - 1) * (dn - 2));
    if (var <= 0.0) throw DegenerateVariance("zero null variance");

    // Recover C - D from tau and its denominator for the z statistic.
    long long concordant_minus_discordant = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx == 0.0 || dy == 0.0) continue;
            concordant_minus_discordant += ((dx > 0.0) == (dy > 0.0)) ? 1 : -1;
        }
    }
    double z = static_cast<double>(concordant_minus_discordant) / std::sqrt(var);
    double p = 2.0 * normal_sf(std::fabs(z));
    return {tau, std::min(p, 1.0)};
}

double permutation_p_value(std::span<const double> x, std::span<const double> y,
                           CorrelationMethod method) {
    check_inputs(x, y);
    if (x.size() > 10) throw std::invalid_argument("exact permutation p limited to n <= 10");
    const double observed = std::fabs(statistic_for(method, x, y));
    std::vector<double> perm(y.begin(), y.end());
    std::sort(perm.begin(), perm.end());
    long long total = 0, at_least = 0;
    do {
        ++total;
        double s = std::fabs(statistic_for(method, x, perm));
        if (s >= observed - 1e-12) ++at_least;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(at_least) / static_cast<double>(total);
}

}  // namespace catchforge::eval
