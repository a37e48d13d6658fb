#pragma once

// One-dimensional adaptive integration, tensor Gauss–Legendre cube rules and
// seeded Monte Carlo over balls/annuli.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "hardy/function_model.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// Counter-based random numbers: every draw is a pure function of
// (seed, sample index, lane), so serial and parallel runs agree bit for bit.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed ^ mix64(salt + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t hash_string(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(mix64(seed)) {}

    /// Uniform in the open interval (0,1).
    double uniform(std::uint64_t index, std::uint64_t lane) const {
        const std::uint64_t bits = mix64(key_ ^ mix64(index * 0xd1342543de82ef95ULL + lane));
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box–Muller on lanes (2k, 2k+1) of the given base.
    double normal(std::uint64_t index, std::uint64_t lane) const {
        const std::uint64_t pair = lane / 2;
        const double u1 = uniform(index, 1000 + 2 * pair);
        const double u2 = uniform(index, 1001 + 2 * pair);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return lane % 2 == 0 ? r * std::cos(a) : r * std::sin(a);
    }

private:
    std::uint64_t key_;
};

// ---------------------------------------------------------------------------

/// Singularity exponents at the interval endpoints: the integrand behaves like
/// (t-a)^left near a and (b-t)^right near b. Both must exceed -1.
struct EndpointHints {
    double left = 0.0;
    double right = 0.0;
};

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 10000;
    std::optional<EndpointHints> singular_exponent_hints;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
        if (max_subdivisions < 1) throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
        if (singular_exponent_hints &&
            (!(singular_exponent_hints->left > -1.0) || !(singular_exponent_hints->right > -1.0)))
            throw std::invalid_argument("QuadratureConfig: singularity hints must exceed -1");
    }

    QuadratureConfig with_hints(double left, double right) const {
        QuadratureConfig c = *this;
        c.singular_exponent_hints = EndpointHints{left, right};
        return c;
    }
};

/// A numeric value with a nonnegative error attached. For Monte Carlo this is one
/// standard error, for deterministic rules a conservative bound.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
    bool diverging = false;

    Estimate& operator+=(const Estimate& o) {
        value += o.value;
        error += o.error;
        evaluations += o.evaluations;
        converged = converged && o.converged;
        diverging = diverging || o.diverging;
        return *this;
    }
    Estimate scaled(double s) const {
        Estimate e = *this;
        e.value *= s;
        e.error *= std::abs(s);
        return e;
    }
};

namespace detail {

struct GkResult {
    double value;
    double error;
};

/// Single Gauss–Kronrod 21/10 panel on [a,b].
template <class F>
GkResult gk21(const F& g, double a, double b) {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& kx = gauss_kronrod<double, 21>::abscissa();
    const auto& kw = gauss_kronrod<double, 21>::weights();
    const auto& gw = gauss<double, 10>::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = g(c);
    double k = kw[0] * f0;
    double gsum = 0.0;
    for (std::size_t i = 1; i < kx.size(); ++i) {
        const double fl = g(c - h * kx[i]);
        const double fr = g(c + h * kx[i]);
        k += kw[i] * (fl + fr);
        if (i % 2 == 1) gsum += gw[i / 2] * (fl + fr);
    }
    return {k * h, std::abs((k - gsum) * h)};
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

/// Global adaptive bisection on the panel with the largest error. Tracks the
/// running total at doubling subdivision counts so that a budget exhaustion
/// with growing increments can be flagged as divergence.
template <class F>
Estimate adaptive(const F& g, double a, double b, double rel_tol, double abs_tol, int& budget) {
    Estimate out;
    std::priority_queue<Panel> heap;
    auto first = gk21(g, a, b);
    out.evaluations += 21;
    heap.push({a, b, first.value, first.error});
    double total = first.value;
    double err = first.error;
    std::vector<double> checkpoints{total};
    int used = 0;
    int next_checkpoint = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (budget <= 0) {
            out.converged = false;
            break;
        }
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {  // interval exhausted at machine precision
            heap.push(p);
            out.converged = false;
            break;
        }
        auto l = gk21(g, p.a, m);
        auto r = gk21(g, m, p.b);
        out.evaluations += 42;
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        heap.push({p.a, m, l.value, l.error});
        heap.push({m, p.b, r.value, r.error});
        --budget;
        if (++used == next_checkpoint) {
            checkpoints.push_back(total);
            next_checkpoint *= 2;
        }
    }
    // Re-sum from the panels so the result does not depend on the update order.
    double v = 0.0, e = 0.0;
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const auto& p : panels) {
        v += p.value;
        e += p.error;
    }
    out.value = v;
    out.error = e;
    if (!out.converged && checkpoints.size() >= 4) {
        const std::size_t k = checkpoints.size();
        const double d1 = checkpoints[k - 3] - checkpoints[k - 4];
        const double d2 = checkpoints[k - 2] - checkpoints[k - 3];
        const double d3 = checkpoints[k - 1] - checkpoints[k - 2];
        const bool same_sign = (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0);
        if (same_sign && std::abs(d2) >= 0.9 * std::abs(d1) && std::abs(d3) >= 0.9 * std::abs(d2))
            out.diverging = true;
    }
    if (!std::isfinite(out.value)) out.diverging = true;
    return out;
}

inline bool needs_substitution(double s) {
    return s != 0.0 && !(s > 0.0 && s == std::floor(s));
}

}  // namespace detail

/// Integrates g over [a,b]. Endpoint singularities named in the config hints are
/// removed by the substitution t = a + (b-a) u^{1/(1+s)} (mirrored at b).
template <class F>
Estimate integrate_1d(const F& g, double a, double b, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    if (!(a < b)) throw std::invalid_argument("integrate_1d: requires a < b");
    const EndpointHints hints = cfg.singular_exponent_hints.value_or(EndpointHints{});
    const bool left = detail::needs_substitution(hints.left);
    const bool right = detail::needs_substitution(hints.right);
    int budget = cfg.max_subdivisions;

    auto left_piece = [&](double lo, double hi, double s) {
        const double gamma = 1.0 / (1.0 + s);
        const double len = hi - lo;
        auto h = [&, gamma, len, lo](double u) {
            const double w = std::pow(u, gamma);
            double t = lo + len * w;
            if (t <= lo) t = std::nextafter(lo, hi);
            return g(t) * len * gamma * w / u;
        };
        return detail::adaptive(h, 0.0, 1.0, cfg.rel_tol, cfg.abs_tol, budget);
    };
    auto right_piece = [&](double lo, double hi, double s) {
        const double gamma = 1.0 / (1.0 + s);
        const double len = hi - lo;
        auto h = [&, gamma, len, hi](double u) {
            const double w = std::pow(u, gamma);
            double t = hi - len * w;
            if (t >= hi) t = std::nextafter(hi, lo);
            return g(t) * len * gamma * w / u;
        };
        return detail::adaptive(h, 0.0, 1.0, cfg.rel_tol, cfg.abs_tol, budget);
    };

    if (left && right) {
        const double m = 0.5 * (a + b);
        Estimate e = left_piece(a, m, hints.left);
        e += right_piece(m, b, hints.right);
        return e;
    }
    if (left) return left_piece(a, b, hints.left);
    if (right) return right_piece(a, b, hints.right);
    return detail::adaptive(g, a, b, cfg.rel_tol, cfg.abs_tol, budget);
}

/// Integrates over [a,b] split at the given interior knots. The config hints
/// apply only at the outer endpoints a and b.
template <class F>
Estimate integrate_pieces(const F& g, double a, double b, std::vector<double> knots, const QuadratureConfig& cfg) {
    std::vector<double> pts{a};
    std::sort(knots.begin(), knots.end());
    for (double k : knots)
        if (k > a && k < b && k > pts.back()) pts.push_back(k);
    pts.push_back(b);
    const EndpointHints hints = cfg.singular_exponent_hints.value_or(EndpointHints{});
    Estimate total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        QuadratureConfig c = cfg;
        c.singular_exponent_hints = EndpointHints{i == 0 ? hints.left : 0.0, i + 2 == pts.size() ? hints.right : 0.0};
        total += integrate_1d(g, pts[i], pts[i + 1], c);
    }
    return total;
}

/// ∫_lo^hi g over a long positive range. Sub-ranges spanning more than a decade
/// are integrated in the variable s = log ρ.
template <class F>
Estimate integrate_radial_range(const F& g, double lo, double hi, const QuadratureConfig& cfg) {
    if (lo > 0.0 && hi / lo > 10.0) {
        auto h = [&g](double s) {
            const double rho = std::exp(s);
            return g(rho) * rho;
        };
        QuadratureConfig c = cfg;
        c.singular_exponent_hints.reset();
        return integrate_1d(h, std::log(lo), std::log(hi), c);
    }
    return integrate_1d(g, lo, hi, cfg);
}

// ---------------------------------------------------------------------------
// Cubes and Gauss–Legendre rules

/// Axis-parallel cube with the given center and side length.
struct Cube {
    Point center;
    double side = 1.0;

    int dim() const { return static_cast<int>(center.size()); }
    double volume() const { return std::pow(side, dim()); }
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1,1], ascending
    std::vector<double> weights;
};

/// Gauss–Legendre rule of the given order; rules are built once and cached.
inline const GaussLegendreRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    GaussLegendreRule rule;
    const auto zeros = boost::math::legendre_p_zeros<double>(order);  // nonnegative zeros
    for (double z : zeros) {
        const double d = boost::math::legendre_p_prime(order, z);
        const double w = 2.0 / ((1.0 - z * z) * d * d);
        rule.nodes.push_back(z);
        rule.weights.push_back(w);
        if (z != 0.0) {
            rule.nodes.push_back(-z);
            rule.weights.push_back(w);
        }
    }
    std::vector<std::size_t> idx(rule.nodes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return rule.nodes[x] < rule.nodes[y]; });
    GaussLegendreRule sorted;
    for (auto i : idx) {
        sorted.nodes.push_back(rule.nodes[i]);
        sorted.weights.push_back(rule.weights[i]);
    }
    return cache.emplace(order, std::move(sorted)).first->second;
}

/// Flattened quadrature nodes (dim coordinates per node) with weights.
struct NodeSet {
    int dim = 1;
    std::vector<double> coords;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    std::span<const double> node(std::size_t i) const { return {coords.data() + i * dim, static_cast<std::size_t>(dim)}; }
};

namespace detail {

inline void append_box(NodeSet& out, std::span<const double> lo, std::span<const double> hi, int order) {
    const auto& rule = gauss_legendre(order);
    const int n = static_cast<int>(lo.size());
    const std::size_t k = rule.nodes.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> x(n);
    while (true) {
        double w = 1.0;
        for (int d = 0; d < n; ++d) {
            const double h = 0.5 * (hi[d] - lo[d]);
            x[d] = lo[d] + h * (1.0 + rule.nodes[idx[d]]);
            w *= h * rule.weights[idx[d]];
        }
        out.coords.insert(out.coords.end(), x.begin(), x.end());
        out.weights.push_back(w);
        int d = 0;
        while (d < n && ++idx[d] == k) idx[d++] = 0;
        if (d == n) break;
    }
}

/// Box with `corner` at one of its vertices: bisect towards the corner `depth` times.
inline void append_graded(NodeSet& out, std::vector<double> lo, std::vector<double> hi,
                          std::span<const double> corner, int order, int depth) {
    const int n = static_cast<int>(lo.size());
    for (int level = 0; level < depth; ++level) {
        std::vector<double> mid(n);
        for (int d = 0; d < n; ++d) mid[d] = 0.5 * (lo[d] + hi[d]);
        // The 2^n children; the one touching the corner is refined further.
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<double> clo(n), chi(n);
            bool touches = true;
            for (int d = 0; d < n; ++d) {
                const bool upper = (mask >> d) & 1;
                clo[d] = upper ? mid[d] : lo[d];
                chi[d] = upper ? hi[d] : mid[d];
                const bool corner_low = corner[d] == lo[d];
                if (upper == corner_low) touches = false;
            }
            if (!touches) append_box(out, clo, chi, order);
        }
        for (int d = 0; d < n; ++d) {
            if (corner[d] == lo[d]) hi[d] = mid[d];
            else lo[d] = mid[d];
        }
    }
    append_box(out, lo, hi, order);
}

}  // namespace detail

/// Refinement towards a distinguished point (typically the origin, where
/// radial and homogeneous functions are singular or non-smooth). The cube is
/// split along the point's coordinates and every piece is graded towards it.
struct CubeRefinement {
    std::optional<Point> focus;
    int grading_depth = 0;
};

inline NodeSet cube_nodes(const Cube& q, int order, const CubeRefinement& refine = {}) {
    const int n = q.dim();
    NodeSet out;
    out.dim = n;
    std::vector<double> lo(n), hi(n);
    for (int d = 0; d < n; ++d) {
        lo[d] = q.center[d] - 0.5 * q.side;
        hi[d] = q.center[d] + 0.5 * q.side;
    }
    if (!refine.focus) {
        detail::append_box(out, lo, hi, order);
        return out;
    }
    // Closest point of the cube to the focus; only refine when it is near.
    std::vector<double> p(n);
    double dist2 = 0.0;
    for (int d = 0; d < n; ++d) {
        p[d] = std::clamp((*refine.focus)[d], lo[d], hi[d]);
        dist2 += (p[d] - (*refine.focus)[d]) * (p[d] - (*refine.focus)[d]);
    }
    if (std::sqrt(dist2) >= q.side) {
        detail::append_box(out, lo, hi, order);
        return out;
    }
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<double> blo(n), bhi(n);
        bool empty = false;
        for (int d = 0; d < n; ++d) {
            const bool upper = (mask >> d) & 1;
            blo[d] = upper ? p[d] : lo[d];
            bhi[d] = upper ? hi[d] : p[d];
            if (!(bhi[d] > blo[d])) empty = true;
        }
        if (empty) continue;
        detail::append_graded(out, blo, bhi, p, order, refine.grading_depth);
    }
    return out;
}

/// Tensor Gauss–Legendre integral over a cube (n <= 3). The value uses order 2k,
/// the error is the difference to order k. By default the cube is split along the
/// coordinate hyperplanes through the origin, where builtin functions have kinks.
template <class F>
Estimate integrate_cube(const F& g, const Cube& q, int order, const CubeRefinement& refine = {Point{}, 0}) {
    if (q.dim() > 3)
        throw std::invalid_argument("integrate_cube: dimension > 3 unsupported; use integrate_ball_mc");
    if (order < 2) throw std::invalid_argument("integrate_cube: order must be >= 2");
    if (!(q.side > 0.0)) throw std::invalid_argument("integrate_cube: side must be positive");
    auto run = [&](int k) {
        CubeRefinement r = refine;
        if (r.focus && r.focus->empty()) r.focus = Point(q.dim(), 0.0);
        const NodeSet ns = cube_nodes(q, k, r);
        double s = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i) s += ns.weights[i] * g(ns.node(i));
        return std::pair{s, static_cast<long>(ns.size())};
    };
    auto [lo, n1] = run(order);
    auto [hi, n2] = run(2 * order);
    Estimate e;
    e.value = hi;
    e.error = std::abs(hi - lo);
    e.evaluations = n1 + n2;
    return e;
}

// ---------------------------------------------------------------------------
// Monte Carlo over balls and annuli

/// i-th uniform sample of the annulus r_inner < |y| < r_outer in R^n.
inline void annulus_sample(const CounterRng& rng, std::uint64_t i, int n, double r_inner, double r_outer,
                           std::span<double> y) {
    double norm2 = 0.0;
    if (n == 1) {
        y[0] = rng.uniform(i, 1) < 0.5 ? -1.0 : 1.0;
        norm2 = 1.0;
    } else {
        for (int d = 0; d < n; ++d) {
            y[d] = rng.normal(i, d);
            norm2 += y[d] * y[d];
        }
    }
    const double a = std::pow(r_inner, n), b = std::pow(r_outer, n);
    const double rho = std::pow(a + rng.uniform(i, 0) * (b - a), 1.0 / n);
    const double s = rho / std::sqrt(norm2);
    for (int d = 0; d < n; ++d) y[d] *= s;
}

/// Monte Carlo integral of g over the annulus r_inner < |y| < r_outer. The error
/// is one standard error; results are a pure function of the seed.
template <class F>
Estimate integrate_ball_mc(const F& g, int n, double r_inner, double r_outer, long samples, std::uint64_t seed) {
    require_dim(n, "integrate_ball_mc");
    if (!(r_inner >= 0.0 && r_outer > r_inner))
        throw std::invalid_argument("integrate_ball_mc: requires 0 <= r_inner < r_outer");
    if (samples < 1000) throw std::invalid_argument("integrate_ball_mc: requires at least 1000 samples");
    const CounterRng rng(seed);
    const double volume = geometry(n).ball_volume * (std::pow(r_outer, n) - std::pow(r_inner, n));
    std::vector<double> y(n);
    double mean = 0.0, m2 = 0.0;
    for (long i = 0; i < samples; ++i) {
        annulus_sample(rng, static_cast<std::uint64_t>(i), n, r_inner, r_outer, y);
        const double v = g(std::span<const double>(y));
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
    Estimate e;
    e.value = volume * mean;
    e.error = volume * std::sqrt(var / static_cast<double>(samples));
    e.evaluations = samples;
    return e;
}

}  // namespace hardy
