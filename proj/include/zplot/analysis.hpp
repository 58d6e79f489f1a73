#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zplot/affine.hpp"
#include "zplot/links.hpp"
#include "zplot/plot.hpp"

namespace zplot {

struct VerifyReport {
    bool congruence_pass = true;
    int fail_k = -1;             // set when a point violates the congruence
    std::int64_t fail_x = -1;
    std::vector<std::pair<int, mpq_class>> max_distance;  // per k, exact
    unsigned long empirical_knots = 0;
    unsigned long predicted_knots = 0;
};

// Exact check that every exhaustive layer-k point satisfies
// beta*Y = alpha*X + gamma (mod p^k), plus the exact vertical circle distance
// from each point to the predicted link, for kmin <= k <= kmax.
VerifyReport verify_affine(const Transducer& t, const AffineParams& params, int kmin, int kmax,
                           unsigned jobs = 1);

struct ClusterReport {
    unsigned long count = 0;
    // centers on the circle R/(1/b)Z where slope = a/b reduced; values in [0, 1/b)
    std::vector<mpq_class> centers;
    std::vector<std::size_t> populations;
    mpq_class circumference;  // 1/b
};

// Residuals (y - slope*x) folded modulo 1/den(slope): points of one cable land
// on a single position there, so cluster count equals cable count.  Sorted on
// the circle, gaps below tol merge.
ClusterReport intercept_clusters(const PlotSet& points, const mpq_class& slope,
                                 const mpq_class& tol);

struct LineCandidate {
    mpq_class slope;
    std::vector<mpq_class> intercepts;
    mpq_class support;   // fraction of points within tol of a cluster center
    mpq_class residual;  // max deviation among supported points
};

// Enumerates slopes a/b with |a| <= max_num, 1 <= b <= max_den, gcd(a,b)=1,
// gcd(b,p)=1, scores each by a windowed mode search over the folded
// residuals, and returns candidates with support >= min_support ranked by
// (support, -residual).  max_modes bounds the cables a single candidate may
// report.
std::vector<LineCandidate> detect_lines(const PlotSet& points, long max_num, long max_den,
                                        const mpq_class& tol, const mpq_class& min_support,
                                        unsigned jobs = 1, std::size_t max_modes = 8);

struct ShiftTestReport {
    bool pass = true;
    int fail_k = -1;
    std::int64_t fail_x = -1;
};

// Layer-k points project onto layer k-1 by dropping the top digit.
ShiftTestReport shift_test(const Transducer& t, int k_max);

struct GrowthTable {
    std::vector<std::pair<int, std::size_t>> counts;  // (j, |{b_m : m < p^j}|)
    bool strictly_increasing = true;
};

// Distinct normalized van der Put coefficients of x -> x^2 below M; the count
// grows without bound, which is the finite-automaton obstruction.
GrowthTable squaring_growth(std::uint64_t M, int p = 2);

struct FillTrend {
    std::vector<std::pair<int, mpq_class>> ratios;
    mpq_class trend;       // ratio at res_max over ratio at res_min
    bool density_ok = true;  // p^k >= res^2 for every resolution
};

FillTrend fill_trend(const Transducer& t, const std::vector<int>& resolutions, int k,
                     unsigned jobs = 1);

}  // namespace zplot
