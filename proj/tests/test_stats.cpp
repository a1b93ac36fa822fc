#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "catchforge/eval/stats.hpp"

using namespace catchforge::eval;

namespace {

// ---- independent brute-force oracles ---------------------------------------

double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    long double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const long double mx = sx / n, my = sy / n;
    long double num = 0, dx = 0, dy = 0;
    for (size_t i = 0; i < n; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        dx += (x[i] - mx) * (x[i] - mx);
        dy += (y[i] - my) * (y[i] - my);
    }
    return static_cast<double>(num / std::sqrt(dx * dy));
}

std::vector<double> oracle_ranks(const std::vector<double>& v) {
    // Rank by sorting index pairs; ties share the mean of their positions.
    const size_t n = v.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

double oracle_spearman(const std::vector<double>& x, const std::vector<double>& y) {
    return oracle_pearson(oracle_ranks(x), oracle_ranks(y));
}

double oracle_kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
    // Direct O(n^2) enumeration of concordant/discordant/tied pairs.
    const size_t n = x.size();
    long long concordant = 0, discordant = 0, tied_x = 0, tied_y = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const double a = x[i] - x[j], b = y[i] - y[j];
            if (a == 0 && b == 0) continue;  // tied in both: excluded everywhere
            if (a == 0) {
                ++tied_x;
            } else if (b == 0) {
                ++tied_y;
            } else if (a * b > 0) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    const double n0 = static_cast<double>(n) * (n - 1) / 2.0;
    long long both = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (x[i] == x[j] && y[i] == y[j]) ++both;
    const double n1 = static_cast<double>(tied_x + both);
    const double n2 = static_cast<double>(tied_y + both);
    // n1/n2 above must count ALL pairs tied in x (resp. y), including pairs
    // tied in both.
    return (static_cast<double>(concordant) - static_cast<double>(discordant)) /
           std::sqrt((n0 - n1) * (n0 - n2));
}

std::vector<double> random_vector(std::mt19937& rng, size_t n, bool with_ties) {
    std::vector<double> v(n);
    if (with_ties) {
        std::uniform_int_distribution<int> d(0, 4);
        for (auto& e : v) e = d(rng);
    } else {
        std::uniform_real_distribution<double> d(-10, 10);
        for (auto& e : v) e = d(rng);
    }
    return v;
}

bool constant(const std::vector<double>& v) {
    for (const auto& e : v)
        if (e != v[0]) return false;
    return true;
}

}  // namespace

TEST_CASE("statistics agree with brute-force oracles on 1000 random instances") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<size_t> size(3, 10);
    std::bernoulli_distribution ties(0.5);
    int checked = 0;
    while (checked < 1000) {
        const size_t n = size(rng);
        auto x = random_vector(rng, n, ties(rng));
        auto y = random_vector(rng, n, ties(rng));
        if (constant(x) || constant(y)) continue;
        CAPTURE(checked);
        CHECK(std::fabs(pearson(x, y).statistic - oracle_pearson(x, y)) <= 1e-10);
        CHECK(std::fabs(spearman(x, y).statistic - oracle_spearman(x, y)) <= 1e-10);
        CHECK(std::fabs(kendall_tau_b(x, y).statistic - oracle_kendall_tau_b(x, y)) <=
              1e-10);
        ++checked;
    }
}

TEST_CASE("textbook values") {
    std::vector<double> inc = {1, 2, 3, 4, 5};
    std::vector<double> dec = {5, 4, 3, 2, 1};
    CHECK(pearson(inc, inc).statistic == doctest::Approx(1.0));
    CHECK(pearson(inc, dec).statistic == doctest::Approx(-1.0));
    CHECK(spearman(inc, dec).statistic == doctest::Approx(-1.0));
    CHECK(kendall_tau_b(inc, dec).statistic == doctest::Approx(-1.0));

    std::vector<double> x = {1, 2, 3, 4}, y = {1, 3, 2, 4};
    CHECK(kendall_tau_b(x, y).statistic == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("average ranks handle ties by mean position") {
    std::vector<double> v = {10, 20, 20, 30};
    auto r = average_ranks(v);
    CHECK(r == std::vector<double>{1.0, 2.5, 2.5, 4.0});
    std::vector<double> all_tied = {7, 7, 7};
    CHECK(average_ranks(all_tied) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("p-values match frozen external reference values") {
    // Reference statistics and two-sided p-values computed with an
    // independent scientific library on the same data.
    struct Case {
        std::vector<double> x, y;
        double r, rp, rho, rhop, tau, taup;
    };
    const std::vector<Case> cases = {
        {{1, 2, 3, 4, 5, 6, 7, 8},
         {2, 1, 4, 3, 6, 5, 8, 7},
         0.90476190476190466, 0.0020082755054294755,
         0.90476190476190477, 0.0020082755054294677,
         0.71428571428571419, 0.013347575926843162},
        {{1, 2, 2, 3, 3, 3, 4, 5},
         {1, 1, 2, 2, 3, 4, 4, 5},
         0.90501834944329684, 0.001992492625812262,
         0.9125712974177751, 0.0015630783086770972,
         0.85732140997411244, 0.0058660935218539656},
        {{3.2, 1.5, 4.8, 4.8, 2.2, 5.9, 0.7, 3.3, 3.3, 6.1, 2.9, 4.4},
         {2.1, 0.9, 5.2, 4.1, 2.0, 6.3, 1.2, 2.9, 3.8, 5.5, 2.4, 4.0},
         0.94977141474124349, 2.3136459721470971e-06,
         0.97544460109328035, 6.7472710452359869e-08,
         0.8924133096001623, 6.4410217512151968e-05},
        {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20},
         {2, 1, 3, 5, 4, 7, 6, 8, 10, 9, 12, 11, 13, 15, 14, 17, 16, 18, 20, 19},
         0.98796992481203005, 4.7984842737263533e-16,
         0.98796992481202994, 4.798484273727158e-16,
         0.9157894736842106, 1.6488823107344968e-08},
    };
    for (size_t i = 0; i < cases.size(); ++i) {
        CAPTURE(i);
        const auto& c = cases[i];
        auto pr = pearson(c.x, c.y);
        CHECK(pr.statistic == doctest::Approx(c.r).epsilon(1e-12));
        CHECK(pr.p_value == doctest::Approx(c.rp).epsilon(1e-9));
        auto sp = spearman(c.x, c.y);
        CHECK(sp.statistic == doctest::Approx(c.rho).epsilon(1e-12));
        CHECK(sp.p_value == doctest::Approx(c.rhop).epsilon(1e-9));
        auto kt = kendall_tau_b(c.x, c.y);
        CHECK(kt.statistic == doctest::Approx(c.tau).epsilon(1e-12));
        CHECK(kt.p_value == doctest::Approx(c.taup).epsilon(1e-9));
    }
}

TEST_CASE("invariance properties") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_vector(rng, 8, false);
        auto y = random_vector(rng, 8, false);
        if (constant(x) || constant(y)) continue;

        // Rank statistics are invariant under strictly monotone maps.
        std::vector<double> cubed(x.size());
        for (size_t i = 0; i < x.size(); ++i) cubed[i] = x[i] * x[i] * x[i];
        CHECK(spearman(cubed, y).statistic ==
              doctest::Approx(spearman(x, y).statistic).epsilon(1e-12));
        CHECK(kendall_tau_b(cubed, y).statistic ==
              doctest::Approx(kendall_tau_b(x, y).statistic).epsilon(1e-12));
        // Pearson is invariant under positive affine maps.
        std::vector<double> affine(x.size());
        for (size_t i = 0; i < x.size(); ++i) affine[i] = 2.5 * x[i] + 7.0;
        CHECK(pearson(affine, y).statistic ==
              doctest::Approx(pearson(x, y).statistic).epsilon(1e-10));
        // Symmetry in the arguments.
        CHECK(pearson(x, y).statistic == doctest::Approx(pearson(y, x).statistic));
        CHECK(kendall_tau_b(x, y).statistic ==
              doctest::Approx(kendall_tau_b(y, x).statistic));
    }
}

TEST_CASE("degenerate inputs") {
    std::vector<double> c = {3, 3, 3, 3}, v = {1, 2, 3, 4};
    CHECK_THROWS_AS(pearson(c, v), DegenerateVariance);
    CHECK_THROWS_AS(spearman(v, c), DegenerateVariance);
    CHECK_THROWS_AS(kendall_tau_b(c, c), DegenerateVariance);

    std::vector<double> tiny = {1, 2};
    CHECK_THROWS(pearson(tiny, tiny));

    std::vector<double> uneven = {1, 2, 3};
    std::vector<double> four = {1, 2, 3, 4};
    CHECK_THROWS(pearson(uneven, four));
}

TEST_CASE("exact permutation p-values") {
    std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> y = {2, 1, 4, 3, 6, 5, 8, 7};
    // Frozen exact references from the same external library.
    CHECK(permutation_p_value(x, y, CorrelationMethod::KendallTauB) ==
          doctest::Approx(0.014136904761904762).epsilon(1e-12));

    SUBCASE("perfect order is the 2-in-n! extreme under both signs") {
        std::vector<double> a = {1, 2, 3, 4, 5};
        double p = permutation_p_value(a, a, CorrelationMethod::Pearson);
        CHECK(p == doctest::Approx(2.0 / 120.0));
    }
    SUBCASE("guarded for large n") {
        std::vector<double> big(11);
        for (size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(i);
        CHECK_THROWS(permutation_p_value(big, big, CorrelationMethod::Pearson));
    }
}
