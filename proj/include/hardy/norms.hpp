#pragma once

// Norms and seminorms: L^p, weak L^p, and the sup-over-cubes seminorms
// (BMO, BLO, Campanato and its star variant, Lipschitz).
//
// Every sup over cubes is approximated from below by a finite search, so
// seminorm values are lower bounds on the true quantity.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hardy/function_model.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// Space descriptors

namespace space {
struct Lp { double p; };
struct WeakLp { double p; };
struct BMO {};
struct BLO {};
struct Lip { double beta; };
struct Campanato { double alpha; double p; };
struct CampanatoStar { double alpha; double p; };
}  // namespace space

struct SpaceSpec {
    std::variant<space::Lp, space::WeakLp, space::BMO, space::BLO, space::Lip, space::Campanato, space::CampanatoStar> tag;
    int n = 1;

    static SpaceSpec lp(double p, int n) {
        require_dim(n, "SpaceSpec::lp");
        if (!(p >= 1.0)) throw std::invalid_argument("SpaceSpec: Lp requires p in [1, inf]");
        return {space::Lp{p}, n};
    }
    static SpaceSpec weak_lp(double p, int n) {
        require_dim(n, "SpaceSpec::weak_lp");
        if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("SpaceSpec: weak Lp requires p in [1, inf)");
        return {space::WeakLp{p}, n};
    }
    static SpaceSpec bmo(int n) {
        require_dim(n, "SpaceSpec::bmo");
        return {space::BMO{}, n};
    }
    static SpaceSpec blo(int n) {
        require_dim(n, "SpaceSpec::blo");
        return {space::BLO{}, n};
    }
    static SpaceSpec lip(double beta, int n) {
        require_dim(n, "SpaceSpec::lip");
        if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("SpaceSpec: Lip requires beta in (0, 1]");
        return {space::Lip{beta}, n};
    }
    static void check_campanato(double alpha, double p, int n) {
        require_dim(n, "SpaceSpec::campanato");
        if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("SpaceSpec: Campanato requires p in [1, inf)");
        if (!(alpha > -n / p && alpha <= 1.0))
            throw std::invalid_argument("SpaceSpec: Campanato requires alpha in (-n/p, 1]");
    }
    static SpaceSpec campanato(double alpha, double p, int n) {
        check_campanato(alpha, p, n);
        return {space::Campanato{alpha, p}, n};
    }
    static SpaceSpec campanato_star(double alpha, double p, int n) {
        check_campanato(alpha, p, n);
        return {space::CampanatoStar{alpha, p}, n};
    }

    bool is_cube_seminorm() const {
        return std::holds_alternative<space::BMO>(tag) || std::holds_alternative<space::BLO>(tag) ||
               std::holds_alternative<space::Campanato>(tag) || std::holds_alternative<space::CampanatoStar>(tag);
    }
    bool is_star() const {
        return std::holds_alternative<space::BLO>(tag) || std::holds_alternative<space::CampanatoStar>(tag);
    }
    /// Campanato parameters (α, p); BMO and BLO are (0, 1).
    std::pair<double, double> campanato_params() const {
        if (auto* c = std::get_if<space::Campanato>(&tag)) return {c->alpha, c->p};
        if (auto* c = std::get_if<space::CampanatoStar>(&tag)) return {c->alpha, c->p};
        if (is_cube_seminorm()) return {0.0, 1.0};
        throw std::invalid_argument("SpaceSpec: not a cube seminorm");
    }

    std::string label() const {
        const std::string dim = " n=" + std::to_string(n);
        if (auto* s = std::get_if<space::Lp>(&tag)) return "Lp p=" + std::to_string(s->p) + dim;
        if (auto* s = std::get_if<space::WeakLp>(&tag)) return "weakLp p=" + std::to_string(s->p) + dim;
        if (std::holds_alternative<space::BMO>(tag)) return "BMO" + dim;
        if (std::holds_alternative<space::BLO>(tag)) return "BLO" + dim;
        if (auto* s = std::get_if<space::Lip>(&tag)) return "Lip beta=" + std::to_string(s->beta) + dim;
        const auto [a, p] = campanato_params();
        return std::string(is_star() ? "campanato_star" : "campanato") + " a=" + std::to_string(a) +
               " p=" + std::to_string(p) + dim;
    }
};

struct SeminormResult {
    double value = 0.0;
    std::optional<Cube> argmax_cube;
    std::vector<std::pair<double, double>> per_scale_profile;  // (side, best value at that side)
    std::map<std::string, double> diagnostics;
};

// ---------------------------------------------------------------------------
// L^p norms

struct LpConfig {
    QuadratureConfig quad;
    long mc_samples = 200000;
    std::uint64_t seed = 0;
    /// Radial tail: beyond the truncation radius |f(ρ)| is taken to decay like
    /// ρ^{-tail_decay}, and the remaining mass is added in closed form. With
    /// R = inf and no support radius the truncation defaults to 1e9.
    std::optional<double> tail_decay;
    double sup_scan_points = 4096;
};

namespace detail {

/// ∫_0^R |h(ρ)|^p w(ρ) dρ along a ray, split at breaks; `e` is the origin exponent
/// of h and `m` the power of the measure ρ^m.
template <class H>
Estimate ray_power_integral(const H& h, double p, double e, int m, double R, const std::vector<double>& breaks,
                            const QuadratureConfig& cfg) {
    std::vector<double> pts{0.0};
    std::vector<double> b = breaks;
    std::sort(b.begin(), b.end());
    for (double x : b)
        if (x > pts.back() && x < R) pts.push_back(x);
    pts.push_back(R);
    auto g = [&](double rho) {
        const double v = std::abs(h(rho));
        return (v == 0.0 ? 0.0 : std::pow(v, p)) * (m == 0 ? 1.0 : std::pow(rho, m));
    };
    const double left = std::min(0.0, p * e) + m;
    if (!(left > -1.0)) {
        Estimate inf;
        inf.value = kInf;
        inf.converged = false;
        inf.diverging = true;
        return inf;
    }
    Estimate total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], c = pts[i + 1];
        if (i == 0) {
            // Keep the singular start on its own piece, then go logarithmic.
            const double first = std::min(c, 1.0);
            total += integrate_1d(g, 0.0, first, cfg.with_hints(left, 0.0));
            if (first < c) total += integrate_radial_range(g, first, c, cfg);
        } else {
            total += integrate_radial_range(g, a, c, cfg);
        }
    }
    return total;
}

inline double ray_sup(const std::function<double(double)>& h, double R, const std::vector<double>& breaks, int points) {
    double best = 0.0;
    const double lo = std::min(1e-9, R * 1e-9);
    for (int i = 0; i < points; ++i) {
        const double rho = lo * std::pow(R / lo, static_cast<double>(i) / (points - 1));
        best = std::max(best, std::abs(h(rho)));
    }
    for (double b : breaks)
        for (double s : {1.0 - 1e-12, 1.0, 1.0 + 1e-12})
            if (b * s <= R) best = std::max(best, std::abs(h(b * s)));
    return best;
}

}  // namespace detail

/// ‖f‖_p over the ball of radius R. R = inf is allowed when f has a support radius
/// or when a tail decay exponent is configured.
inline Estimate lp_norm(const TestFunction& f, double p, double R = kInf, const LpConfig& cfg = {}) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: requires p >= 1");
    const int n = f.dim;
    if (std::isinf(R)) {
        if (f.support_radius) R = *f.support_radius;
        else if (cfg.tail_decay) R = 1e9;
        else throw std::invalid_argument("lp_norm: unbounded support requires a finite truncation radius");
    }
    const bool add_tail = cfg.tail_decay && !(f.support_radius && *f.support_radius <= R);
    if (!(R > 0.0)) throw std::invalid_argument("lp_norm: truncation radius must be positive");

    const bool ray_path = f.is_radial() || n == 1;
    std::vector<std::function<double(double)>> rays;
    if (f.is_radial()) rays.push_back(f.radial_profile);
    else if (n == 1) {
        rays.push_back([&f](double r) { return f.eval(std::span<const double>(&r, 1)); });
        rays.push_back([&f](double r) {
            const double y = -r;
            return f.eval(std::span<const double>(&y, 1));
        });
    }

    if (std::isinf(p)) {
        Estimate e;
        if (ray_path) {
            for (auto& h : rays) e.value = std::max(e.value, detail::ray_sup(h, R, f.breaks, static_cast<int>(cfg.sup_scan_points)));
            if (f.origin_exponent < 0.0) e.value = kInf;
            return e;
        }
        const CounterRng rng(cfg.seed);
        std::vector<double> y(n);
        for (long i = 0; i < cfg.mc_samples; ++i) {
            annulus_sample(rng, static_cast<std::uint64_t>(i), n, 0.0, R, y);
            e.value = std::max(e.value, std::abs(f.eval(y)));
        }
        e.evaluations = cfg.mc_samples;
        return e;
    }

    Estimate pp;
    if (ray_path) {
        const double measure = f.is_radial() ? geometry(n).sphere_area : 1.0;
        for (auto& h : rays) {
            Estimate r = detail::ray_power_integral(h, p, f.origin_exponent, n - 1, R, f.breaks, cfg.quad);
            if (add_tail && std::isfinite(r.value)) {
                const double k = *cfg.tail_decay;
                if (!(k * p > n)) {
                    r.value = kInf;
                    r.diverging = true;
                } else {
                    r.value += std::pow(std::abs(h(R)), p) * std::pow(R, n) / (k * p - n);
                }
            }
            pp += r.scaled(measure);
        }
    } else {
        auto g = [&](std::span<const double> y) { return std::pow(std::abs(f.eval(y)), p); };
        pp = integrate_ball_mc(g, n, 0.0, R, cfg.mc_samples, cfg.seed);
    }
    Estimate e = pp;
    if (!std::isfinite(pp.value)) return e;
    e.value = std::pow(pp.value, 1.0 / p);
    // d(x^{1/p}) = x^{1/p-1}/p dx
    e.error = pp.value > 0 ? e.value / (p * pp.value) * pp.error : 0.0;
    return e;
}

// ---------------------------------------------------------------------------
// Distribution function and weak L^p

struct DistributionConfig {
    double rho_min = 1e-9;
    double rho_max = 1e9;
    int scan_points = 512;
    /// Bounding ball for the Monte Carlo path (required for non-radial n >= 2).
    std::optional<double> bounding_radius;
    long mc_samples = 200000;
    std::uint64_t seed = 0;
};

/// Superlevel-set structure of |g| along rays from the origin, sampled once and
/// refined by bisection per level λ.
class RayScan {
public:
    RayScan(std::function<double(double)> h, const std::vector<double>& breaks, const DistributionConfig& cfg)
        : h_(std::move(h)) {
        for (int i = 0; i < cfg.scan_points; ++i)
            rho_.push_back(cfg.rho_min * std::pow(cfg.rho_max / cfg.rho_min, static_cast<double>(i) / (cfg.scan_points - 1)));
        for (double b : breaks)
            if (b > cfg.rho_min && b < cfg.rho_max)
                for (double s : {1.0 - 1e-9, 1.0, 1.0 + 1e-9}) rho_.push_back(b * s);
        std::sort(rho_.begin(), rho_.end());
        rho_.erase(std::unique(rho_.begin(), rho_.end()), rho_.end());
        for (double r : rho_) val_.push_back(std::abs(h_(r)));
    }

    double max_value() const {
        double m = 0.0;
        for (double v : val_)
            if (std::isfinite(v)) m = std::max(m, v);
        return m;
    }

    /// Intervals (a, b) of radii where |h| > λ; b may be +inf.
    std::vector<std::pair<double, double>> superlevel(double lambda) const {
        std::vector<std::pair<double, double>> out;
        const std::size_t m = rho_.size();
        bool inside = val_[0] > lambda;
        double start = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const bool next = val_[i + 1] > lambda;
            if (next != inside) {
                const double c = crossing(rho_[i], rho_[i + 1], lambda, inside);
                if (inside) out.emplace_back(start, c);
                else start = c;
                inside = next;
            }
        }
        if (inside) out.emplace_back(start, outer_end(lambda));
        return out;
    }

private:
    // Bisection for the level crossing of |h| on [a, b]; `above_left` says which side exceeds λ.
    double crossing(double a, double b, double lambda, bool above_left) const {
        for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
            const double m = 0.5 * (a + b);
            if ((std::abs(h_(m)) > lambda) == above_left) a = m;
            else b = m;
        }
        return 0.5 * (a + b);
    }
    double outer_end(double lambda) const {
        double a = rho_.back(), b = 2.0 * a;
        for (int i = 0; i < 100; ++i, a = b, b *= 2.0)
            if (!(std::abs(h_(b)) > lambda)) return crossing(a, b, lambda, true);
        return kInf;
    }

    std::function<double(double)> h_;
    std::vector<double> rho_, val_;
};

namespace detail {

inline std::vector<RayScan> make_scans(const TestFunction& g, const DistributionConfig& cfg) {
    std::vector<RayScan> scans;
    if (g.is_radial()) {
        scans.emplace_back(g.radial_profile, g.breaks, cfg);
    } else if (g.dim == 1) {
        auto plus = [g](double r) { return g.eval(std::span<const double>(&r, 1)); };
        auto minus = [g](double r) {
            const double y = -r;
            return g.eval(std::span<const double>(&y, 1));
        };
        scans.emplace_back(plus, g.breaks, cfg);
        scans.emplace_back(minus, g.breaks, cfg);
    }
    return scans;
}

inline double scan_measure(const std::vector<RayScan>& scans, bool radial, int n, double lambda) {
    double total = 0.0;
    const double omega = geometry(n).ball_volume;
    for (const auto& s : scans)
        for (auto [a, b] : s.superlevel(lambda)) {
            if (std::isinf(b)) return kInf;
            total += radial ? omega * (std::pow(b, n) - std::pow(a, n)) : (b - a);
        }
    return total;
}

inline std::vector<double> mc_abs_values(const TestFunction& g, const DistributionConfig& cfg) {
    if (!cfg.bounding_radius)
        throw std::invalid_argument("distribution_function: non-radial functions need a bounding radius");
    const CounterRng rng(cfg.seed);
    std::vector<double> y(g.dim), vals;
    vals.reserve(cfg.mc_samples);
    for (long i = 0; i < cfg.mc_samples; ++i) {
        annulus_sample(rng, static_cast<std::uint64_t>(i), g.dim, 0.0, *cfg.bounding_radius, y);
        vals.push_back(std::abs(g.eval(y)));
    }
    return vals;
}

}  // namespace detail

/// |{x : |g(x)| > λ}|. Radial and one-dimensional g use a ray scan with root
/// refinement; other g use Monte Carlo over the configured bounding ball.
inline Estimate distribution_function(const TestFunction& g, double lambda, const DistributionConfig& cfg = {}) {
    if (!(lambda > 0.0)) throw std::invalid_argument("distribution_function: requires lambda > 0");
    Estimate e;
    if (g.is_radial() || g.dim == 1) {
        const auto scans = detail::make_scans(g, cfg);
        e.value = detail::scan_measure(scans, g.is_radial(), g.dim, lambda);
        return e;
    }
    const auto vals = detail::mc_abs_values(g, cfg);
    const double vol = geometry(g.dim).ball_volume * std::pow(*cfg.bounding_radius, g.dim);
    const double n = static_cast<double>(vals.size());
    const double k = static_cast<double>(std::count_if(vals.begin(), vals.end(), [&](double v) { return v > lambda; }));
    const double q = k / n;
    e.value = vol * q;
    e.error = vol * std::sqrt(q * (1.0 - q) / n);
    e.evaluations = static_cast<long>(n);
    return e;
}

struct WeakConfig {
    DistributionConfig dist;
    int lambda_points = 1000;
    double lambda_span = 1e6;  // grid covers scale/span .. scale*span
    int golden_iterations = 80;
};

/// sup_λ λ·d_g(λ)^{1/p}: log grid over λ, then golden-section refinement around
/// the best grid point. The result is a lower bound on the true sup.
inline SeminormResult weak_lp_quasinorm(const TestFunction& g, double p, const WeakConfig& cfg = {}) {
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("weak_lp_quasinorm: requires p in [1, inf)");
    SeminormResult res;
    if (g.is_radial() || g.dim == 1) {
        const auto scans = detail::make_scans(g, cfg.dist);
        double scale = 0.0;
        for (const auto& s : scans) scale = std::max(scale, s.max_value());
        if (!(scale > 0.0)) return res;
        auto F = [&](double lambda) {
            const double d = detail::scan_measure(scans, g.is_radial(), g.dim, lambda);
            return std::isinf(d) ? kInf : lambda * std::pow(d, 1.0 / p);
        };
        const double lo = scale / cfg.lambda_span, hi = scale * cfg.lambda_span;
        std::vector<double> lam(cfg.lambda_points), val(cfg.lambda_points);
        int best = 0;
        for (int i = 0; i < cfg.lambda_points; ++i) {
            lam[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (cfg.lambda_points - 1));
            val[i] = F(lam[i]);
            if (val[i] > val[best]) best = i;
        }
        double best_lambda = lam[best], best_val = val[best];
        if (std::isfinite(best_val)) {
            // Golden-section search on the bracket around the best grid point.
            double a = lam[std::max(0, best - 1)], b = lam[std::min(cfg.lambda_points - 1, best + 1)];
            const double r = (std::sqrt(5.0) - 1.0) / 2.0;
            double c = b - r * (b - a), d = a + r * (b - a);
            double fc = F(c), fd = F(d);
            for (int it = 0; it < cfg.golden_iterations; ++it) {
                if (fc > best_val) best_val = fc, best_lambda = c;
                if (fd > best_val) best_val = fd, best_lambda = d;
                if (fc >= fd) {
                    b = d, d = c, fd = fc;
                    c = b - r * (b - a), fc = F(c);
                } else {
                    a = c, c = d, fc = fd;
                    d = a + r * (b - a), fd = F(d);
                }
            }
        }
        res.value = best_val;
        res.diagnostics["lambda_at_max"] = best_lambda;
        res.diagnostics["grid_ratio"] = std::pow(hi / lo, 1.0 / (cfg.lambda_points - 1));
        return res;
    }
    // Monte Carlo: exact sup over the empirical distribution of the sample.
    auto vals = detail::mc_abs_values(g, cfg.dist);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    const double vol = geometry(g.dim).ball_volume * std::pow(*cfg.dist.bounding_radius, g.dim);
    const double n = static_cast<double>(vals.size());
    for (std::size_t k = 0; k < vals.size(); ++k) {
        const double v = vals[k] * std::pow(vol * static_cast<double>(k + 1) / n, 1.0 / p);
        if (v > res.value) {
            res.value = v;
            res.diagnostics["lambda_at_max"] = vals[k];
        }
    }
    res.diagnostics["mc_samples"] = n;
    return res;
}

// ---------------------------------------------------------------------------
// Cube seminorms

struct CubeSearchConfig {
    double center_box_halfwidth = 8.0;
    std::vector<double> scales = default_scales();
    int coarse_grid_points_per_axis = 17;
    int refinement_rounds = 12;
    int inner_quadrature_order = 16;
    int top_candidates = 4;
    /// Extra centers at multiples of the side around the origin and the breaks,
    /// in units of the side (per axis, symmetric).
    int relative_grid_points = 17;
    double relative_grid_halfwidth = 2.0;
    /// -1 picks the grading depth towards the origin from the function metadata.
    int grading_depth = -1;
    bool use_dilation_reduction = true;
    /// Radial functions: grid centers restricted to c_1 >= c_2 >= ... >= c_n >= 0.
    bool use_radial_symmetry = true;
    /// Lipschitz search sizes.
    int lip_base_points = 1000;
    int lip_steps = 64;

    static std::vector<double> default_scales() {
        std::vector<double> s;
        for (int k = -8; k <= 8; ++k) s.push_back(std::ldexp(1.0, k));
        return s;
    }

    void validate() const {
        if (!(center_box_halfwidth > 0.0)) throw std::invalid_argument("CubeSearchConfig: halfwidth must be positive");
        if (scales.empty()) throw std::invalid_argument("CubeSearchConfig: scales must be non-empty");
        for (std::size_t i = 0; i < scales.size(); ++i) {
            if (!(scales[i] > 0.0)) throw std::invalid_argument("CubeSearchConfig: scales must be positive");
            if (i && !(scales[i] > scales[i - 1])) throw std::invalid_argument("CubeSearchConfig: scales must ascend");
        }
        if (coarse_grid_points_per_axis < 1 || refinement_rounds < 0 || inner_quadrature_order < 2 ||
            top_candidates < 1 || relative_grid_points < 1 || lip_base_points < 1 || lip_steps < 2)
            throw std::invalid_argument("CubeSearchConfig: grid sizes must be positive");
    }
};

namespace detail {

inline int auto_grading_depth(const TestFunction& f, double p) {
    const double e = std::min(0.0, p * f.origin_exponent);
    if (e < 0.0) return std::min(120, static_cast<int>(std::ceil(20.0 / (f.dim + e))));
    if (f.is_radial() || f.homogeneity_degree) return 3;
    return 0;
}

inline double lower_cube_corner_distance(const Cube& q) {
    double s = 0.0;
    for (double c : q.center) {
        const double d = std::max(0.0, std::abs(c) - 0.5 * q.side);
        s += d * d;
    }
    return std::sqrt(s);
}

inline double farthest_corner_distance(const Cube& q) {
    double s = 0.0;
    for (double c : q.center) {
        const double d = std::abs(c) + 0.5 * q.side;
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace detail

/// side^{-α} ((1/|Q|) ∫_Q |f - c_Q|^p)^{1/p} with c_Q the mean (plain) or inf_Q f (star).
class CubeObjective {
public:
    CubeObjective(const TestFunction& f, double alpha, double p, bool star, int order, int grading_depth)
        : f_(f), alpha_(alpha), p_(p), star_(star), order_(order), depth_(grading_depth) {
        if (depth_ < 0) depth_ = detail::auto_grading_depth(f, p);
    }

    double operator()(const Cube& q) const { return evaluate(q, order_); }

    /// Value at order 2k with the order-k difference as error.
    Estimate estimate(const Cube& q) const {
        const double lo = evaluate(q, order_), hi = evaluate(q, 2 * order_);
        Estimate e;
        e.value = hi;
        e.error = std::abs(hi - lo);
        return e;
    }

    /// Mean of f over Q, the quantity subtracted in the plain seminorm.
    double mean(const Cube& q) const {
        const NodeSet ns = nodes(q, order_);
        double s = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i) s += ns.weights[i] * f_.eval(ns.node(i));
        return s / q.volume();
    }

    /// inf_Q f: exact for monotone radial profiles, otherwise the minimum over the
    /// quadrature nodes, corners and center followed by a compass descent.
    double infimum(const Cube& q) const { return infimum(q, nodes(q, order_), nullptr); }

    int grading_depth() const { return depth_; }

private:
    NodeSet nodes(const Cube& q, int order) const {
        return cube_nodes(q, order, CubeRefinement{Point(f_.dim, 0.0), depth_});
    }

    double infimum(const Cube& q, const NodeSet& ns, const std::vector<double>* values) const {
        if (f_.is_radial() && f_.monotonicity == Monotonicity::Nondecreasing)
            return f_.radial_profile(detail::lower_cube_corner_distance(q));
        if (f_.is_radial() && f_.monotonicity == Monotonicity::Nonincreasing)
            return f_.radial_profile(detail::farthest_corner_distance(q));
        const int n = f_.dim;
        double best = kInf;
        Point arg(n);
        auto consider = [&](std::span<const double> x, double v) {
            if (v < best) {
                best = v;
                std::copy(x.begin(), x.end(), arg.begin());
            }
        };
        for (std::size_t i = 0; i < ns.size(); ++i) consider(ns.node(i), values ? (*values)[i] : f_.eval(ns.node(i)));
        Point x(n);
        for (int mask = 0; mask < (1 << n); ++mask) {
            for (int d = 0; d < n; ++d) x[d] = q.center[d] + (((mask >> d) & 1) ? 0.5 : -0.5) * q.side;
            consider(x, f_.eval(x));
        }
        consider(q.center, f_.eval(q.center));
        // Compass search from the best point, staying inside the closed cube.
        double step = q.side / 16.0;
        for (int it = 0; it < 60 && step > q.side * 1e-12; ++it) {
            bool moved = false;
            for (int d = 0; d < n && !moved; ++d)
                for (double s : {-1.0, 1.0}) {
                    x = arg;
                    x[d] = std::clamp(x[d] + s * step, q.center[d] - 0.5 * q.side, q.center[d] + 0.5 * q.side);
                    const double v = f_.eval(x);
                    if (v < best) {
                        best = v;
                        arg = x;
                        moved = true;
                        break;
                    }
                }
            if (!moved) step *= 0.5;
        }
        return best;
    }

    double evaluate(const Cube& q, int order) const {
        const NodeSet ns = nodes(q, order);
        std::vector<double> v(ns.size());
        for (std::size_t i = 0; i < ns.size(); ++i) v[i] = f_.eval(ns.node(i));
        // Shift by one sample so that constants give an exact zero.
        const double ref = v.empty() ? 0.0 : v[0];
        double mean = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i) mean += ns.weights[i] * (v[i] - ref);
        const double vol = q.volume();
        mean = ref + mean / vol;
        const double c = star_ ? infimum(q, ns, &v) : mean;
        double s = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const double d = std::abs(v[i] - c);
            s += ns.weights[i] * (p_ == 1.0 ? d : std::pow(d, p_));
        }
        const double osc = p_ == 1.0 ? s / vol : std::pow(s / vol, 1.0 / p_);
        return (alpha_ == 0.0 ? 1.0 : std::pow(q.side, -alpha_)) * osc;
    }

    const TestFunction& f_;
    double alpha_, p_;
    bool star_;
    int order_, depth_;
};

/// ((1/|Q|) ∫_Q |f - f_Q|^p)^{1/p}; Monte Carlo over the cube for n > 3.
inline Estimate mean_oscillation(const TestFunction& f, const Cube& q, double p, int order = 16, int grading_depth = -1,
                                 long mc_samples = 200000, std::uint64_t seed = 0) {
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("mean_oscillation: requires p in [1, inf)");
    if (static_cast<int>(q.center.size()) != f.dim) throw std::invalid_argument("mean_oscillation: dimension mismatch");
    if (f.dim <= 3) return CubeObjective(f, 0.0, p, false, order, grading_depth).estimate(q);
    // Two passes over the same counter-based sample: mean, then oscillation.
    const CounterRng rng(seed);
    const int n = f.dim;
    Point x(n);
    auto sample = [&](long i) {
        for (int d = 0; d < n; ++d) x[d] = q.center[d] + (rng.uniform(static_cast<std::uint64_t>(i), d) - 0.5) * q.side;
        return f.eval(x);
    };
    double mean = 0.0;
    for (long i = 0; i < mc_samples; ++i) mean += sample(i);
    mean /= static_cast<double>(mc_samples);
    double m = 0.0, m2 = 0.0;
    for (long i = 0; i < mc_samples; ++i) {
        const double v = std::pow(std::abs(sample(i) - mean), p);
        const double delta = v - m;
        m += delta / static_cast<double>(i + 1);
        m2 += delta * (v - m);
    }
    const double se = std::sqrt(m2 / static_cast<double>(mc_samples - 1) / static_cast<double>(mc_samples));
    Estimate e;
    e.value = std::pow(m, 1.0 / p);
    e.error = m > 0 ? e.value / (p * m) * se : 0.0;
    e.evaluations = 2 * mc_samples;
    return e;
}

namespace detail {

struct Candidate {
    Cube cube;
    double value;
};

// Deterministic ordering: larger value first, then lexicographically smaller
// center, then smaller side.
inline bool better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.cube.center != b.cube.center) return a.cube.center < b.cube.center;
    return a.cube.side < b.cube.side;
}

inline void grid_1d(std::vector<double>& out, double halfwidth, int points) {
    out.clear();
    if (points == 1) {
        out.push_back(0.0);
        return;
    }
    for (int i = 0; i < points; ++i) out.push_back(-halfwidth + 2.0 * halfwidth * i / (points - 1));
}

inline void for_each_center(int n, const std::vector<double>& axis, const Point& offset, double scale,
                            const std::function<void(const Point&)>& visit) {
    const std::size_t m = axis.size();
    std::vector<std::size_t> idx(n, 0);
    Point c(n);
    while (true) {
        for (int d = 0; d < n; ++d) c[d] = offset[d] + scale * axis[idx[d]];
        visit(c);
        int d = 0;
        while (d < n && ++idx[d] == m) idx[d++] = 0;
        if (d == n) break;
    }
}

/// Points where the objective tends to peak: the origin and break radii along the axes.
inline std::vector<Point> anchor_points(const TestFunction& f) {
    std::vector<Point> a{Point(f.dim, 0.0)};
    for (double b : f.breaks)
        for (double s : {1.0, -1.0}) {
            Point p(f.dim, 0.0);
            p[0] = s * b;
            a.push_back(p);
            if (f.is_radial()) break;
        }
    return a;
}

}  // namespace detail

/// Sup over cubes of the Campanato-type objective (BMO/BLO/Campanato/star), or
/// the Lipschitz seminorm. Always a lower bound on the true seminorm.
inline SeminormResult lip_seminorm(const TestFunction& f, double beta, const CubeSearchConfig& search);

inline SeminormResult seminorm(const TestFunction& f, const SpaceSpec& space, const CubeSearchConfig& search = {}) {
    search.validate();
    if (space.n != f.dim) throw std::invalid_argument("seminorm: space and function dimensions differ");
    if (auto* l = std::get_if<space::Lip>(&space.tag)) return lip_seminorm(f, l->beta, search);
    if (!space.is_cube_seminorm()) throw std::invalid_argument("seminorm: use lp_norm / weak_lp_quasinorm for Lebesgue spaces");
    const auto [alpha, p] = space.campanato_params();
    const int n = f.dim;
    if (n > 3) throw std::invalid_argument("seminorm: cube search supports n <= 3");
    const CubeObjective obj(f, alpha, p, space.is_star(), search.inner_quadrature_order, search.grading_depth);

    SeminormResult res;
    res.diagnostics["grading_depth"] = obj.grading_depth();
    std::vector<detail::Candidate> pool;
    std::map<double, double> profile;
    long evaluated = 0;
    const bool symmetric = search.use_radial_symmetry && f.is_radial();
    auto visit = [&](const Cube& q) {
        if (symmetric) {
            for (int d = 0; d < n; ++d)
                if (q.center[d] < 0.0 || (d > 0 && q.center[d] > q.center[d - 1])) return;
        }
        const double v = obj(q);
        ++evaluated;
        if (!std::isfinite(v)) return;
        auto& slot = profile[q.side];
        slot = std::max(slot, v);
        pool.push_back({q, v});
    };

    std::vector<double> axis, rel_axis;
    detail::grid_1d(axis, search.center_box_halfwidth, search.coarse_grid_points_per_axis);
    detail::grid_1d(rel_axis, search.relative_grid_halfwidth, search.relative_grid_points);

    const bool reduced = search.use_dilation_reduction &&
                         ((f.homogeneity_degree && std::abs(*f.homogeneity_degree - alpha) < 1e-12) ||
                          (f.log_homogeneous && alpha == 0.0));
    res.diagnostics["dilation_reduced"] = reduced ? 1.0 : 0.0;
    if (reduced) {
        // Objective is invariant under Q -> sQ: search normalized centers at side 1.
        const Point zero(n, 0.0);
        detail::for_each_center(n, axis, zero, 1.0, [&](const Point& c) { visit(Cube{c, 1.0}); });
        detail::for_each_center(n, rel_axis, zero, 1.0, [&](const Point& c) { visit(Cube{c, 1.0}); });
    } else {
        const auto anchors = detail::anchor_points(f);
        for (double s : search.scales) {
            detail::for_each_center(n, axis, Point(n, 0.0), 1.0, [&](const Point& c) { visit(Cube{c, s}); });
            for (const auto& a : anchors)
                detail::for_each_center(n, rel_axis, a, s, [&](const Point& c) { visit(Cube{c, s}); });
        }
    }
    if (pool.empty()) {
        res.diagnostics["cubes_evaluated"] = static_cast<double>(evaluated);
        return res;
    }
    std::sort(pool.begin(), pool.end(), detail::better);

    // Pattern search in (center, log side) from the top candidates.
    const std::size_t top = std::min<std::size_t>(search.top_candidates, pool.size());
    std::vector<detail::Candidate> seeds(pool.begin(), pool.begin() + top);
    // Also refine the best cube of every scale, so an asymptotic regime at large or
    // small sides is not crowded out by a sharp local feature.
    std::map<double, detail::Candidate> per_scale;
    for (const auto& c : pool) {
        auto it = per_scale.find(c.cube.side);
        if (it == per_scale.end()) per_scale.emplace(c.cube.side, c);
        else if (detail::better(c, it->second)) it->second = c;
    }
    for (const auto& [side, c] : per_scale) {
        bool dup = false;
        for (const auto& s : seeds) dup = dup || (s.cube.side == c.cube.side && s.cube.center == c.cube.center);
        if (!dup && c.value > 0.0) seeds.push_back(c);
    }
    detail::Candidate best = pool.front();
    const double grid_step = search.coarse_grid_points_per_axis > 1
                                 ? 2.0 * search.center_box_halfwidth / (search.coarse_grid_points_per_axis - 1)
                                 : search.center_box_halfwidth;
    // Sides stay within a factor 4 of the scale grid; objectives that keep growing
    // toward an asymptote would otherwise drift without bound.
    const double side_lo = search.scales.front() / 4.0, side_hi = search.scales.back() * 4.0;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        auto cand = seeds[k];
        // Per-scale seeds stay on their scale and get a shorter polish.
        const bool primary = k < top;
        double dc = 0.5 * std::min(grid_step, cand.cube.side);
        double ds = reduced || !primary ? 0.0 : std::log(2.0) / 2.0;
        const int rounds = primary ? search.refinement_rounds : std::min(search.refinement_rounds, 4);
        const int max_moves = primary ? 64 : 8;
        for (int round = 0; round < rounds; ++round) {
            bool improved = true;
            for (int moves = 0; improved && moves < max_moves; ++moves) {
                improved = false;
                std::vector<Cube> trial;
                for (int d = 0; d < n; ++d)
                    for (double s : {-1.0, 1.0}) {
                        Cube q = cand.cube;
                        q.center[d] += s * dc;
                        trial.push_back(q);
                    }
                if (ds > 0.0)
                    for (double s : {-1.0, 1.0}) {
                        Cube q = cand.cube;
                        q.side *= std::exp(s * ds);
                        trial.push_back(q);
                    }
                for (const auto& q : trial) {
                    if (q.side < side_lo || q.side > side_hi) continue;
                    const double v = obj(q);
                    ++evaluated;
                    if (std::isfinite(v) && v > cand.value * (1.0 + 1e-12)) {
                        cand = {q, v};
                        improved = true;
                    }
                }
            }
            dc *= 0.5;
            ds *= 0.5;
        }
        if (detail::better(cand, best)) best = cand;
    }
    auto& slot = profile[best.cube.side];
    slot = std::max(slot, best.value);

    if (reduced) {
        // Validate the dilation reduction on two further scales.
        double worst = 0.0;
        for (double s : {0.5, 2.0}) {
            Cube q{best.cube.center, best.cube.side * s};
            for (auto& c : q.center) c *= s;
            const double v = obj(q);
            worst = std::max(worst, std::abs(v - best.value) / std::max(best.value, 1e-300));
            auto& sl = profile[q.side];
            sl = std::max(sl, v);
        }
        res.diagnostics["dilation_check_rel_diff"] = worst;
    }

    res.argmax_cube = best.cube;
    for (auto [side, v] : profile) res.per_scale_profile.emplace_back(side, v);
    res.value = 0.0;
    for (auto [side, v] : res.per_scale_profile) res.value = std::max(res.value, v);
    res.diagnostics["cubes_evaluated"] = static_cast<double>(evaluated);
    return res;
}

/// sup over sampled (x, h) of |f(x+h) - f(x)| / |h|^β. Base points are the box
/// center plus a Halton sequence over the center box; |h| is log-spaced.
inline SeminormResult lip_seminorm(const TestFunction& f, double beta, const CubeSearchConfig& search) {
    const int n = f.dim;
    if (n > 3) throw std::invalid_argument("lip_seminorm: supports n <= 3");
    static constexpr std::array<int, 3> primes{2, 3, 5};
    auto halton = [](int i, int base) {
        double r = 0.0, fct = 1.0 / base;
        for (int k = i; k > 0; k /= base, fct /= base) r += fct * (k % base);
        return r;
    };
    std::vector<Point> dirs;
    if (n == 1) dirs = {{1.0}, {-1.0}};
    else if (n == 2)
        for (int k = 0; k < 8; ++k) dirs.push_back({std::cos(k * std::numbers::pi / 4), std::sin(k * std::numbers::pi / 4)});
    else
        for (int mask = 0; mask < 8; ++mask) {
            Point d(3);
            for (int j = 0; j < 3; ++j) d[j] = ((mask >> j) & 1 ? 1.0 : -1.0) / std::sqrt(3.0);
            dirs.push_back(d);
        }
    const double hmin = search.scales.front(), hmax = search.scales.back();
    SeminormResult res;
    Point x(n), y(n);
    for (int i = 0; i < search.lip_base_points; ++i) {
        for (int d = 0; d < n; ++d)
            x[d] = i == 0 ? 0.0 : search.center_box_halfwidth * (2.0 * halton(i, primes[d]) - 1.0);
        const double fx = f.eval(x);
        for (int k = 0; k < search.lip_steps; ++k) {
            const double h = hmin * std::pow(hmax / hmin, static_cast<double>(k) / (search.lip_steps - 1));
            for (const auto& dir : dirs) {
                for (int d = 0; d < n; ++d) y[d] = x[d] + h * dir[d];
                const double v = std::abs(f.eval(y) - fx) / std::pow(h, beta);
                if (v > res.value) {
                    res.value = v;
                    res.diagnostics["argmax_h"] = h;
                    res.diagnostics["argmax_x0"] = x[0];
                }
            }
        }
    }
    res.per_scale_profile.emplace_back(hmin, res.value);
    return res;
}

}  // namespace hardy
