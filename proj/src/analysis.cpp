#include "zplot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "zplot/parallel.hpp"
#include "zplot/vanderput.hpp"

namespace zplot {

namespace {

bool fits_long(const mpz_class& v) { return v.fits_slong_p(); }

// Meridian crossings of the predicted link: (e + j/b) mod 1 for e in C(q),
// 0 <= j < b, as numerators over beta * p^k.
std::vector<std::int64_t> link_positions(const LinkPrediction& pred, std::int64_t beta,
                                         std::int64_t pk) {
    std::set<std::int64_t> pos;
    const std::int64_t b = mpz_get_si(pred.slope.get_den().get_mpz_t());
    const std::int64_t step = beta / b * pk;  // b divides beta
    const std::int64_t beta_pk = beta * pk;
    for (const mpq_class& e : pred.full_offsets) {
        mpq_class base = e * beta;  // integer: den(e) divides beta
        if (base.get_den() != 1) throw std::logic_error("link_positions: offset denominator");
        std::int64_t e_units = mpz_get_si(base.get_num().get_mpz_t()) * pk;
        for (std::int64_t j = 0; j < b; ++j) {
            std::int64_t u = (e_units + j * step) % beta_pk;
            if (u < 0) u += beta_pk;
            pos.insert(u);
        }
    }
    return {pos.begin(), pos.end()};
}

std::int64_t circle_dist_units(std::int64_t a, std::int64_t b, std::int64_t circ) {
    std::int64_t d = a - b;
    if (d < 0) d = -d;
    return std::min(d, circ - d);
}

struct ResidualGrid;

// Upper bound check: a tol-ball spans at most six bins of width W/2, so if
// the top 6*max_modes bins fall short of the wanted support, no placement of
// max_modes centers can reach it.
bool mode_coverage_reaches(const ResidualGrid& grid, const mpq_class& tol,
                           const mpq_class& want, std::size_t max_modes);

}  // namespace

VerifyReport verify_affine(const Transducer& t, const AffineParams& prm, int kmin, int kmax,
                           unsigned jobs) {
    if (t.in_arity != 1 || t.out_arity != 1)
        throw std::invalid_argument("verify_affine: machine is not single input/output");
    if (kmin < 1 || kmax < kmin) throw std::invalid_argument("verify_affine: bad k range");
    if (!fits_long(prm.alpha) || !fits_long(prm.gamma) || !fits_long(prm.beta))
        throw std::domain_error("verify_affine: parameters exceed the fast integer range");
    const long alpha = mpz_get_si(prm.alpha.get_mpz_t());
    const long gamma = mpz_get_si(prm.gamma.get_mpz_t());
    const long beta = mpz_get_si(prm.beta.get_mpz_t());

    PadicRational a(mpq_class(prm.alpha, prm.beta), prm.p);
    PadicRational q(mpq_class(prm.gamma, prm.beta), prm.p);
    LinkPrediction pred = predict_affine(a, q);

    VerifyReport rep;
    rep.predicted_knots = pred.knot_count;
    for (int k = kmin; k <= kmax; ++k) {
        if (!fits_u64(t.p, k + 7)) throw std::domain_error("verify_affine: p^k too large");
        const std::int64_t pk = static_cast<std::int64_t>(pow_u64(static_cast<unsigned>(t.p), k));
        const std::int64_t beta_pk = beta * pk;
        std::vector<std::int64_t> positions = link_positions(pred, beta, pk);

        unsigned workers = jobs == 0 ? 1 : jobs;
        std::vector<std::set<std::int64_t>> residues(workers);
        std::vector<std::int64_t> first_bad(workers, -1);
        parallel_for(0, static_cast<std::uint64_t>(pk), workers,
                     [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
                         for (std::uint64_t x = lo; x < hi; ++x) {
                             std::int64_t y = static_cast<std::int64_t>(run_nm_u64(t, x, k));
                             std::int64_t lhs =
                                 (beta * y - alpha * static_cast<std::int64_t>(x) - gamma) % pk;
                             if (lhs != 0) {
                                 if (first_bad[w] < 0) first_bad[w] = static_cast<std::int64_t>(x);
                                 continue;
                             }
                             std::int64_t res = (beta * y - alpha * static_cast<std::int64_t>(x)) % beta_pk;
                             if (res < 0) res += beta_pk;
                             residues[w].insert(res);
                         }
                     });
        for (unsigned w = 0; w < workers; ++w) {
            if (first_bad[w] >= 0 && rep.congruence_pass) {
                rep.congruence_pass = false;
                rep.fail_k = k;
                rep.fail_x = first_bad[w];
            }
        }
        if (!rep.congruence_pass) break;

        std::set<std::int64_t> distinct;
        for (auto& r : residues) distinct.insert(r.begin(), r.end());
        std::int64_t worst = 0;
        for (std::int64_t res : distinct) {
            auto it = std::lower_bound(positions.begin(), positions.end(), res);
            std::int64_t best = beta_pk;
            if (it != positions.end()) best = std::min(best, circle_dist_units(res, *it, beta_pk));
            if (it != positions.begin()) best = std::min(best, circle_dist_units(res, *(it - 1), beta_pk));
            best = std::min(best, circle_dist_units(res, positions.front(), beta_pk));
            best = std::min(best, circle_dist_units(res, positions.back(), beta_pk));
            worst = std::max(worst, best);
        }
        rep.max_distance.emplace_back(k, mpq_class(worst, beta_pk));
        rep.max_distance.back().second.canonicalize();
    }

    if (rep.congruence_pass) {
        // one layer per cable phase: the top knot_count layers together
        int k_top = std::min(kmax, 16);
        int k_lo = std::max(1, k_top - static_cast<int>(pred.knot_count) + 1);
        PlotSet ps = layer(t, k_top, true, jobs);
        for (int k = k_lo; k < k_top; ++k) {
            PlotSet extra = layer(t, k, true, jobs);
            ps.points.insert(ps.points.end(), extra.points.begin(), extra.points.end());
        }
        rep.empirical_knots = intercept_clusters(ps, pred.slope, mpq_class(1, 256)).count;
    }
    return rep;
}

namespace {

// Residuals (y - slope*x) of a possibly mixed-k point set, folded modulo
// 1/b and scaled to the common denominator b * p^K with K the largest k.
// Positions are integers in [0, p^K); small grids use a dense count array.
struct ResidualGrid {
    std::int64_t a = 0, b = 1;
    int K = 0;
    std::int64_t pK = 1;  // p^K
    std::int64_t pow_cache[64] = {0};
    std::vector<std::pair<std::int64_t, std::size_t>> positions;  // sorted, deduplicated

    ResidualGrid(const PlotSet& ps, const mpq_class& slope) {
        mpq_class s = slope;
        s.canonicalize();
        if (!fits_long(s.get_num()) || !fits_long(s.get_den()))
            throw std::domain_error("residuals: slope out of range");
        a = mpz_get_si(s.get_num().get_mpz_t());
        b = mpz_get_si(s.get_den().get_mpz_t());
        for (const ExactPoint& pt : ps.points) K = std::max(K, pt.k);
        if (K >= 60 || !fits_u64(ps.p, K + 8)) throw std::domain_error("residuals: p^k too large");
        pK = static_cast<std::int64_t>(pow_u64(static_cast<unsigned>(ps.p), K));
        pow_cache[0] = 1;
        for (int j = 1; j <= K; ++j) pow_cache[j] = pow_cache[j - 1] * ps.p;
        if (pK <= (std::int64_t(1) << 22)) {
            std::vector<std::uint32_t> counts(static_cast<std::size_t>(pK), 0);
            for (const ExactPoint& pt : ps.points) ++counts[static_cast<std::size_t>(position(pt))];
            positions.reserve(std::min<std::size_t>(ps.points.size(), static_cast<std::size_t>(pK)));
            for (std::int64_t u = 0; u < pK; ++u)
                if (counts[static_cast<std::size_t>(u)]) positions.emplace_back(u, counts[static_cast<std::size_t>(u)]);
        } else {
            std::map<std::int64_t, std::size_t> acc;
            for (const ExactPoint& pt : ps.points) ++acc[position(pt)];
            positions.assign(acc.begin(), acc.end());
        }
    }

    std::int64_t position(const ExactPoint& pt) const {
        std::int64_t pk = pow_cache[pt.k];
        std::int64_t r = (b * pt.y - a * pt.x) % pk;
        if (r < 0) r += pk;
        return r * (pK / pk);
    }
};

// A tol-ball [c-W, c+W] spans at most floor(2W/binw) + 2 bins, so the mass
// reachable by max_modes centers is bounded by the top keep bins.
bool top_bins_reach(std::vector<std::size_t>& bins, std::size_t total, const mpq_class& want,
                    std::size_t max_modes, std::int64_t W, std::int64_t binw) {
    std::size_t span = static_cast<std::size_t>(2 * W / binw) + 2;
    std::size_t keep = std::min<std::size_t>(max_modes * span, bins.size());
    std::partial_sort(bins.begin(), bins.begin() + static_cast<long>(keep), bins.end(),
                      std::greater<>());
    std::size_t top = 0;
    for (std::size_t j = 0; j < keep; ++j) top += bins[j];
    return mpq_class(static_cast<unsigned long>(top)) >=
           want * static_cast<unsigned long>(total);
}

bool mode_coverage_reaches(const ResidualGrid& grid, const mpq_class& tol,
                           const mpq_class& want, std::size_t max_modes) {
    if (want <= 0) return true;
    mpq_class w_exact = tol * grid.b * grid.pK;
    std::int64_t W = mpz_get_si(mpz_class(floor_q(w_exact)).get_mpz_t());
    if (W < 1) W = 1;
    std::int64_t binw = std::max<std::int64_t>(1, W / 8);
    std::int64_t nbins = (grid.pK + binw - 1) / binw;
    std::vector<std::size_t> bins(static_cast<std::size_t>(nbins), 0);
    std::size_t total = 0;
    for (const auto& [u, c] : grid.positions) {
        bins[static_cast<std::size_t>(u / binw)] += c;
        total += c;
    }
    return top_bins_reach(bins, total, want, max_modes, W, binw);
}

// Bin pass straight off the points, skipping the dense grid; used by the
// cheap first-stage slope filter.
bool coverage_probe(const PlotSet& ps, std::int64_t a, std::int64_t b, const mpq_class& tol,
                    const mpq_class& want, std::size_t max_modes) {
    if (want <= 0) return true;
    int K = 0;
    for (const ExactPoint& pt : ps.points) K = std::max(K, pt.k);
    std::int64_t pK = static_cast<std::int64_t>(pow_u64(static_cast<unsigned>(ps.p), K));
    std::int64_t pow_cache[64];
    pow_cache[0] = 1;
    for (int j = 1; j <= K; ++j) pow_cache[j] = pow_cache[j - 1] * ps.p;
    mpq_class w_exact = tol * b * pK;
    std::int64_t W = mpz_get_si(mpz_class(floor_q(w_exact)).get_mpz_t());
    if (W < 1) W = 1;
    std::int64_t binw = std::max<std::int64_t>(1, W / 8);
    std::int64_t nbins = (pK + binw - 1) / binw;
    std::vector<std::size_t> bins(static_cast<std::size_t>(nbins), 0);
    for (const ExactPoint& pt : ps.points) {
        std::int64_t pk = pow_cache[pt.k];
        std::int64_t r = (b * pt.y - a * pt.x) % pk;
        if (r < 0) r += pk;
        bins[static_cast<std::size_t>(r * (pK / pk) / binw)] += 1;
    }
    return top_bins_reach(bins, ps.points.size(), want, max_modes, W, binw);
}

}  // namespace

ClusterReport intercept_clusters(const PlotSet& ps, const mpq_class& slope, const mpq_class& tol) {
    if (!(tol > 0 && tol < mpq_class(1, 2)))
        throw std::invalid_argument("intercept_clusters: tol must be in (0, 1/2)");
    if (ps.points.empty()) throw std::invalid_argument("intercept_clusters: no points");
    ResidualGrid grid(ps, slope);
    const std::int64_t b = grid.b;
    const std::int64_t pk = grid.pK;

    ClusterReport rep;
    rep.circumference = mpq_class(1, b);
    const mpq_class unit_den = mpq_class(b) * pk;  // one unit = 1/(b p^K)

    const std::vector<std::pair<std::int64_t, std::size_t>>& pos = grid.positions;
    const std::size_t n = pos.size();
    if (n == 1) {
        rep.count = 1;
        rep.centers.push_back(mpq_class(pos[0].first) / unit_den);
        rep.populations.push_back(pos[0].second);
        return rep;
    }

    // gap after entry i (circular), in units
    auto gap_after = [&](std::size_t i) {
        std::int64_t cur = pos[i].first;
        std::int64_t nxt = i + 1 < n ? pos[i + 1].first : pos[0].first + pk;
        return nxt - cur;
    };
    // gap/unit_den >= tol, with both sides cleared to integers
    mpq_class tol_units = tol * unit_den;
    tol_units.canonicalize();
    if (!fits_long(tol_units.get_num()) || !fits_long(tol_units.get_den()))
        throw std::domain_error("intercept_clusters: tolerance out of range");
    const std::int64_t tn = mpz_get_si(tol_units.get_num_mpz_t());
    const std::int64_t td = mpz_get_si(tol_units.get_den_mpz_t());
    std::vector<std::size_t> breaks;  // i such that a cluster ends at entry i
    for (std::size_t i = 0; i < n; ++i)
        if (gap_after(i) * td >= tn) breaks.push_back(i);

    if (breaks.empty()) {
        rep.count = 1;
        rep.centers.push_back(mpq_class(pos[0].first) / unit_den);  // arbitrary anchor
        std::size_t total = 0;
        for (auto& [u, c] : pos) total += c;
        rep.populations.push_back(total);
        return rep;
    }

    rep.count = breaks.size();
    for (std::size_t bi = 0; bi < breaks.size(); ++bi) {
        std::size_t start = (breaks[(bi + breaks.size() - 1) % breaks.size()] + 1) % n;
        std::size_t end = breaks[bi];
        std::int64_t first = pos[start].first;
        std::int64_t last = pos[end].first;
        if (last < first) last += pk;  // wrapped cluster
        std::size_t population = 0;
        for (std::size_t i = start;; i = (i + 1) % n) {
            population += pos[i].second;
            if (i == end) break;
        }
        mpq_class center = mpq_class(first + last, 2) / unit_den;
        center.canonicalize();
        center = mod1(center * b) / b;  // fold into [0, 1/b)
        rep.centers.push_back(center);
        rep.populations.push_back(population);
    }
    // deterministic order on the circle
    std::vector<std::size_t> order(rep.count);
    for (std::size_t i = 0; i < rep.count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return rep.centers[i] < rep.centers[j]; });
    ClusterReport sorted;
    sorted.count = rep.count;
    sorted.circumference = rep.circumference;
    for (std::size_t i : order) {
        sorted.centers.push_back(rep.centers[i]);
        sorted.populations.push_back(rep.populations[i]);
    }
    return sorted;
}

std::vector<LineCandidate> detect_lines(const PlotSet& ps, long max_num, long max_den,
                                        const mpq_class& tol, const mpq_class& min_support,
                                        unsigned jobs, std::size_t max_modes) {
    if (max_den < 1) throw std::invalid_argument("detect_lines: max_den must be >= 1");
    std::vector<mpq_class> slopes;
    for (long b = 1; b <= max_den; ++b) {
        if (b % ps.p == 0) continue;
        for (long a = -max_num; a <= max_num; ++a) {
            if (std::gcd(std::abs(a), b) != 1) continue;
            slopes.emplace_back(a, b);
        }
    }

    // Stage-1 subsample shared by all slopes: every 17th point.  The odd
    // stride keeps spread residuals spread (it is invertible mod p^k), and a
    // slope matching the data keeps subsample coverage at 1, so the margin
    // below can only ever spare extra work, not skip a real candidate.
    PlotSet sub;
    sub.p = ps.p;
    for (std::size_t j = 0; j < ps.points.size(); j += 17) sub.points.push_back(ps.points[j]);
    const bool use_stage1 = sub.points.size() >= 2048;
    mpq_class stage1_support = min_support - mpq_class(1, 8);
    if (stage1_support < 0) stage1_support = 0;

    std::vector<std::optional<LineCandidate>> results(slopes.size());
    parallel_for(0, slopes.size(), jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            const mpq_class& slope = slopes[i];
            if (use_stage1 &&
                !coverage_probe(sub, mpz_get_si(slope.get_num_mpz_t()),
                                mpz_get_si(slope.get_den_mpz_t()), tol, stage1_support, max_modes)) {
                LineCandidate skip;
                skip.slope = slope;
                skip.support = 0;
                results[i] = std::move(skip);
                continue;
            }
            // Windowed mode search on the residual circle.  A plain
            // gap-merge collapses once another line's residuals spread
            // densely, so modes are kept only when they rise well above the
            // sampled background level.
            ResidualGrid grid(ps, slope);
            const std::int64_t b = grid.b;
            const std::int64_t pk = grid.pK;
            const auto& pos = grid.positions;
            const std::size_t n = pos.size();
            mpq_class w_exact = tol * b * pk;
            std::int64_t W = mpz_get_si(mpz_class(floor_q(w_exact)).get_mpz_t());
            if (W < 1) W = 1;

            std::size_t total = 0;
            for (const auto& [u, c] : pos) total += c;

            // Same coverage bound again, now exact on the full point set.
            if (!mode_coverage_reaches(grid, tol, min_support, max_modes)) {
                LineCandidate skip;
                skip.slope = slope;
                skip.support = 0;
                results[i] = std::move(skip);
                continue;
            }

            // circular window mass around every occupied position
            std::vector<std::size_t> mass(n, 0);
            if (n > 0) {
                std::size_t hi_idx = 0, lo_idx = 0;
                std::size_t in_window = 0;
                auto unwrapped = [&](std::size_t j) {
                    return pos[j % n].first + static_cast<std::int64_t>(j / n) * pk;
                };
                for (std::size_t j = 0; j < n; ++j) {
                    std::int64_t center = pos[j].first;
                    while (hi_idx < j + n && unwrapped(hi_idx) <= center + W)
                        in_window += pos[hi_idx++ % n].second;
                    while (unwrapped(lo_idx) < center - W) in_window -= pos[lo_idx++ % n].second;
                    mass[j] = in_window;
                }
            }

            // background level: median window mass over evenly spaced probes,
            // computed from prefix sums over the sorted positions
            std::vector<std::size_t> prefix(n + 1, 0);
            for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + pos[j].second;
            auto count_upto = [&](std::int64_t u) {  // mass of positions in [0, u]
                if (u < 0) return std::size_t(0);
                if (u >= pk) return prefix[n];
                auto it = std::upper_bound(pos.begin(), pos.end(),
                                           std::make_pair(u, SIZE_MAX));
                return prefix[static_cast<std::size_t>(it - pos.begin())];
            };
            auto window_mass = [&](std::int64_t center) {  // circular [center-W, center+W]
                std::int64_t lo_u = center - W, hi_u = center + W;
                std::size_t m = count_upto(std::min(hi_u, pk - 1)) - count_upto(lo_u - 1);
                if (lo_u < 0) m += prefix[n] - count_upto(lo_u - 1 + pk);
                if (hi_u >= pk) m += count_upto(hi_u - pk);
                return m;
            };
            std::vector<std::size_t> probes;
            const int num_probes = 512;
            for (int s = 0; s < num_probes; ++s) probes.push_back(window_mass(pk / num_probes * s));
            std::sort(probes.begin(), probes.end());
            std::size_t median = probes[probes.size() / 2];
            std::size_t threshold = std::max<std::size_t>(total / 200 + 1, 3 * median + 1);

            // greedy mode acceptance, strongest first, windows kept disjoint;
            // only positions above the threshold compete
            std::vector<std::size_t> order;
            for (std::size_t j = 0; j < n; ++j)
                if (mass[j] >= threshold) order.push_back(j);
            std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                if (mass[x] != mass[y]) return mass[x] > mass[y];
                return pos[x].first < pos[y].first;
            });
            std::vector<std::int64_t> centers;
            for (std::size_t j : order) {
                bool clear = true;
                for (std::int64_t c : centers)
                    if (circle_dist_units(pos[j].first, c, pk) <= 2 * W) clear = false;
                if (!clear) continue;
                centers.push_back(pos[j].first);
                if (centers.size() >= max_modes) break;
            }
            std::sort(centers.begin(), centers.end());

            std::size_t supported = 0;
            std::int64_t worst = 0;
            for (const auto& [r, count] : pos) {
                if (centers.empty()) break;
                auto it = std::lower_bound(centers.begin(), centers.end(), r);
                std::int64_t best = pk;
                if (it != centers.end()) best = std::min(best, circle_dist_units(r, *it, pk));
                if (it != centers.begin()) best = std::min(best, circle_dist_units(r, *(it - 1), pk));
                best = std::min(best, circle_dist_units(r, centers.front(), pk));
                best = std::min(best, circle_dist_units(r, centers.back(), pk));
                if (mpq_class(best) <= w_exact) {
                    supported += count;
                    worst = std::max(worst, best);
                }
            }
            LineCandidate cand;
            cand.slope = slope;
            for (std::int64_t c : centers) {
                mpq_class center(c, static_cast<unsigned long>(b) * static_cast<unsigned long>(pk));
                center.canonicalize();
                cand.intercepts.push_back(center);
            }
            cand.support = mpq_class(static_cast<unsigned long>(supported),
                                     static_cast<unsigned long>(total));
            cand.support.canonicalize();
            cand.residual = mpq_class(worst) / (mpq_class(b) * pk);
            cand.residual.canonicalize();
            results[i] = std::move(cand);
        }
    });

    std::vector<LineCandidate> picked;
    for (auto& r : results)
        if (r && r->support >= min_support) picked.push_back(std::move(*r));
    std::sort(picked.begin(), picked.end(), [](const LineCandidate& x, const LineCandidate& y) {
        if (x.support != y.support) return x.support > y.support;
        if (x.residual != y.residual) return x.residual < y.residual;
        return x.slope < y.slope;
    });
    return picked;
}

ShiftTestReport shift_test(const Transducer& t, int k_max) {
    ShiftTestReport rep;
    for (int k = 2; k <= k_max; ++k) {
        std::uint64_t pk1 = pow_u64(static_cast<unsigned>(t.p), k - 1);
        std::uint64_t pk = pk1 * static_cast<unsigned>(t.p);
        for (std::uint64_t x = 0; x < pk; ++x) {
            std::uint64_t y = run_nm_u64(t, x, k);
            if (y % pk1 != run_nm_u64(t, x % pk1, k - 1)) {
                rep.pass = false;
                rep.fail_k = k;
                rep.fail_x = static_cast<std::int64_t>(x);
                return rep;
            }
        }
    }
    return rep;
}

GrowthTable squaring_growth(std::uint64_t M, int p) {
    // b_m of x -> x^2 in exact integer arithmetic:
    // B_m = m^2 - (m - lead*p^lg)^2, b_m = B_m / p^lg.
    auto b_of = [p](std::uint64_t m) -> std::int64_t {
        if (m < static_cast<unsigned>(p)) return static_cast<std::int64_t>(m * m);
        int lg = floor_log(p, m);
        std::uint64_t plg = pow_u64(static_cast<unsigned>(p), lg);
        std::uint64_t lead = m / plg;
        std::uint64_t trunc = m - lead * plg;
        return static_cast<std::int64_t>((m * m - trunc * trunc) / plg);
    };
    GrowthTable table;
    std::set<std::int64_t> seen;
    std::uint64_t bound = 1;
    std::uint64_t m = 0;
    for (int j = 0;; ++j) {
        if (bound > M) bound = M;
        for (; m < bound; ++m) seen.insert(b_of(m));
        if (!table.counts.empty() && seen.size() <= table.counts.back().second)
            table.strictly_increasing = false;
        table.counts.emplace_back(j, seen.size());
        if (bound == M) break;
        bound *= static_cast<unsigned>(p);
    }
    return table;
}

FillTrend fill_trend(const Transducer& t, const std::vector<int>& resolutions, int k,
                     unsigned jobs) {
    if (resolutions.empty()) throw std::invalid_argument("fill_trend: no resolutions");
    for (std::size_t i = 1; i < resolutions.size(); ++i)
        if (resolutions[i] <= resolutions[i - 1])
            throw std::invalid_argument("fill_trend: resolutions must ascend");
    FillTrend trend;
    PlotSet ps = plot_union(t, k, true, jobs);
    double pk = std::pow(static_cast<double>(t.p), k);
    for (int res : resolutions) {
        if (static_cast<double>(res) * res > pk) trend.density_ok = false;
        trend.ratios.emplace_back(res, raster(ps, res).fill_ratio());
    }
    trend.trend = trend.ratios.back().second / trend.ratios.front().second;
    trend.trend.canonicalize();
    return trend;
}

}  // namespace zplot
