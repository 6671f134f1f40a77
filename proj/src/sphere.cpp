#include "sharpgrad/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

// Product cubature over S^{n-1}.  The sphere is parameterized by n-2 polar
// angles and one azimuthal angle,
//   xi_1 = cos t_1,  xi_2 = sin t_1 cos t_2,  ...,
//   xi_{n-1} = sin t_1 ... sin t_{n-2} cos phi,
//   xi_n     = sin t_1 ... sin t_{n-2} sin phi,
// with level weight sin^{n-1-j} t_j.  Each polar level is a (composite)
// Gauss-Legendre rule with the sine power folded into the weights and the
// weights normalized to sum 1, so the cubature is exact on constants by
// construction.  The azimuthal level is a shifted uniform (trapezoid) rule,
// or a composite Gauss-Legendre rule over circle segments when it has to
// respect kink angles.
//
// The first two levels carry the resolution; deeper polar levels get a small
// fixed count.  That suits integrands that depend on the leading coordinates
// only (the kernel integrands here depend on xi_1 and xi_2): the normalized
// rule is exact in every angle the integrand does not see.
//
// |smooth| factors kink along a curve in the (t_1, second-angle) plane.  A
// fixed split in t_1 handles curves aligned with a t_1 grid line; the
// per-slice `second` callback of SphereSplits handles transversal curves by
// aligning the second-level panels with the kink position of each slice,
// restoring spectral accuracy of the composite rule.

namespace sharpgrad::quadrature {

std::vector<int> sphere_level_counts(int n, int refinement)
{
    if (n < 2)
        throw std::domain_error("sphere_integral: require n >= 2");
    if (refinement < 1)
        throw std::domain_error("sphere_integral: require refinement >= 1");
    std::vector<int> counts;
    if (n == 2)
        return {256 * refinement};
    counts.push_back(128 * refinement);
    if (n >= 4)
        counts.push_back(64 * refinement);
    for (int j = 3; j <= n - 2; ++j)
        counts.push_back(8);
    counts.push_back(n == 3 ? 256 * refinement : 16);
    return counts;
}

namespace {

const QuadratureRule& cached_rule(int order)
{
    thread_local std::map<int, QuadratureRule> cache;
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, gauss_legendre_rule(order)).first;
    return it->second;
}

struct Level {
    std::vector<double> cos_t;
    std::vector<double> sin_t;
    std::vector<double> weight;
};

// Composite Gauss-Legendre panels covering [seg_lo, seg_hi] with about
// `seg_count` nodes, appended to `lev` with `weightfn(t)` folded in.
template <class WeightFn>
void append_segment(Level& lev, double seg_lo, double seg_hi, int seg_count,
                    const WeightFn& weightfn)
{
    const int panels = (seg_count + 255) / 256;
    const int order = (seg_count + panels - 1) / panels;
    const QuadratureRule& rule = cached_rule(order);
    for (int p = 0; p < panels; ++p) {
        const double lo = seg_lo + (seg_hi - seg_lo) * p / panels;
        const double hi = seg_lo + (seg_hi - seg_lo) * (p + 1) / panels;
        const double mid = 0.5 * (lo + hi), halflen = 0.5 * (hi - lo);
        for (int i = 0; i < order; ++i) {
            const double t = mid + halflen * rule.nodes[i];
            lev.cos_t.push_back(std::cos(t));
            lev.sin_t.push_back(std::sin(t));
            lev.weight.push_back(rule.weights[i] * halflen * weightfn(t));
        }
    }
}

void normalize(Level& lev)
{
    double wsum = 0.0;
    for (double w : lev.weight)
        wsum += w;
    for (double& w : lev.weight)
        w /= wsum;
}

// Polar level with weight sin^power: `count` nodes spread over the segments
// of [0, pi] delimited by the interior split angles.
Level polar_level(int count, int power, std::span<const double> splits)
{
    std::vector<double> edges{0.0};
    for (double s : splits)
        if (s > 0.0 && s < M_PI)
            edges.push_back(s);
    edges.push_back(M_PI);
    std::sort(edges.begin(), edges.end());

    Level lev;
    // short segments keep a floor that still scales with the refinement, so
    // a kink or fold sitting near a pole does not starve its segment
    const int floor_count = std::max(std::min(count, 16), count / 16);
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double len = edges[e + 1] - edges[e];
        if (len <= 1e-12)
            continue;
        const int seg_count =
            std::max(floor_count, static_cast<int>(std::lround(count * len / M_PI)));
        append_segment(lev, edges[e], edges[e + 1], seg_count,
                       [power](double t) { return std::pow(std::sin(t), power); });
    }
    normalize(lev);
    return lev;
}

// Azimuthal level over [0, 2 pi): uniform midpoint rule when there are no
// splits (spectrally accurate for smooth periodic integrands), otherwise
// composite Gauss-Legendre over the circle segments between the splits.
Level azimuthal_level(int count, std::span<const double> splits)
{
    Level lev;
    std::vector<double> edges;
    for (double s : splits) {
        double r = std::fmod(s, 2.0 * M_PI);
        if (r < 0.0)
            r += 2.0 * M_PI;
        edges.push_back(r);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    if (edges.empty()) {
        lev.cos_t.resize(count);
        lev.sin_t.resize(count);
        lev.weight.assign(count, 1.0 / count);
        for (int m = 0; m < count; ++m) {
            const double phi = 2.0 * M_PI * (m + 0.5) / count;
            lev.cos_t[m] = std::cos(phi);
            lev.sin_t[m] = std::sin(phi);
        }
        return lev;
    }
    const std::size_t m = edges.size();
    const int floor_count = std::max(std::min(count, 16), count / 16);
    for (std::size_t e = 0; e < m; ++e) {
        const double lo = edges[e];
        const double hi = (e + 1 < m) ? edges[e + 1] : edges[0] + 2.0 * M_PI;
        if (hi - lo <= 1e-12)
            continue;
        const int seg_count = std::max(
            floor_count, static_cast<int>(std::lround(count * (hi - lo) / (2.0 * M_PI))));
        append_segment(lev, lo, hi, seg_count, [](double) { return 1.0; });
    }
    normalize(lev);
    return lev;
}

// Product sum over a chain of levels; chain[k] fills coord[base + k] except
// the last level, which is azimuthal and fills coord[n-2], coord[n-1].
double product_sum(std::span<const Level* const> chain, int base,
                   const std::function<double(std::span<const double>)>& g, int n,
                   std::vector<double>& coord, double scale, long& evaluations)
{
    const int depth = static_cast<int>(chain.size());
    auto rec = [&](auto&& self, int level, double sc) -> double {
        const Level& lev = *chain[level];
        double sum = 0.0;
        if (level == depth - 1) {
            for (std::size_t i = 0; i < lev.weight.size(); ++i) {
                coord[n - 2] = sc * lev.cos_t[i];
                coord[n - 1] = sc * lev.sin_t[i];
                sum += lev.weight[i] * g(coord);
                ++evaluations;
            }
            return sum;
        }
        for (std::size_t i = 0; i < lev.weight.size(); ++i) {
            coord[base + level] = sc * lev.cos_t[i];
            sum += lev.weight[i] * self(self, level + 1, sc * lev.sin_t[i]);
        }
        return sum;
    };
    return rec(rec, 0, scale);
}

double evaluate_at(const std::function<double(std::span<const double>)>& g, int n,
                   int refinement, const SphereSplits& splits, long& evaluations)
{
    const std::vector<int> counts = sphere_level_counts(n, refinement);
    std::vector<double> coord(n);

    if (n == 2) {
        const Level az = azimuthal_level(counts[0], {});
        const Level* chain[] = {&az};
        return product_sum(chain, 0, g, n, coord, 1.0, evaluations);
    }

    const bool dynamic = static_cast<bool>(splits.second);
    const Level lev0 = polar_level(counts[0], n - 2, splits.first);
    std::vector<Level> tail; // levels after the second angle (and the second
                             // angle itself when it is not rebuilt per slice)
    for (std::size_t j = 1; j < counts.size(); ++j) {
        if (dynamic && j == 1)
            continue;
        const bool azimuthal = (j + 1 == counts.size());
        tail.push_back(azimuthal ? azimuthal_level(counts[j], {})
                                 : polar_level(counts[j], n - 2 - static_cast<int>(j), {}));
    }

    if (!dynamic) {
        std::vector<const Level*> chain{&lev0};
        for (const Level& lev : tail)
            chain.push_back(&lev);
        return product_sum(chain, 0, g, n, coord, 1.0, evaluations);
    }

    double sum = 0.0;
    for (std::size_t i = 0; i < lev0.weight.size(); ++i) {
        coord[0] = lev0.cos_t[i];
        const std::vector<double> s2 = splits.second(lev0.cos_t[i], lev0.sin_t[i]);
        const Level lev1 = (n == 3) ? azimuthal_level(counts[1], s2)
                                    : polar_level(counts[1], n - 3, s2);
        std::vector<const Level*> chain{&lev1};
        for (const Level& lev : tail)
            chain.push_back(&lev);
        sum += lev0.weight[i] *
               product_sum(chain, 1, g, n, coord, lev0.sin_t[i], evaluations);
    }
    return sum;
}

} // namespace

QuadratureResult sphere_integral(const std::function<double(std::span<const double>)>& g,
                                 int n, int refinement, const SphereSplits& splits)
{
    QuadratureResult out;
    const double coarse = evaluate_at(g, n, refinement, splits, out.evaluations);
    const double fine = evaluate_at(g, n, 2 * refinement, splits, out.evaluations);
    out.value = fine;
    out.error_estimate = std::abs(fine - coarse);
    out.converged = std::isfinite(fine);
    return out;
}

} // namespace sharpgrad::quadrature
