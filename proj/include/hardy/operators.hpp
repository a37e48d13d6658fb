#pragma once

// The Hardy operator family as numerical maps (function, point) -> Estimate:
//   H f(x)      = (1/x) ∫_0^x f
//   𝓗 f(x)      = ball average of f over {|y| < |x|}
//   U_φ f(x)    = ∫_0^1 f(tx) φ(t) dt
//   R_β f(x)    = U_φ f(x) with φ(t) = β(1-t)^{β-1}

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hardy/function_model.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

namespace op {
struct Hardy1d {};
struct HardyNd { int n; };
struct UPhi {
    WeightFunction weight;
    int n;
};
struct RiemannLiouville { double beta; };
}  // namespace op

struct OperatorSpec {
    std::variant<op::Hardy1d, op::HardyNd, op::UPhi, op::RiemannLiouville> tag;

    static OperatorSpec hardy_1d() { return {op::Hardy1d{}}; }
    static OperatorSpec hardy_nd(int n) {
        require_dim(n, "OperatorSpec::hardy_nd");
        return {op::HardyNd{n}};
    }
    static OperatorSpec u_phi(WeightFunction w, int n) {
        require_dim(n, "OperatorSpec::u_phi");
        return {op::UPhi{std::move(w), n}};
    }
    static OperatorSpec riemann_liouville(double beta) {
        if (!(beta > 0.0)) throw std::invalid_argument("OperatorSpec: Riemann-Liouville requires beta > 0");
        return {op::RiemannLiouville{beta}};
    }

    int dim() const {
        if (auto* h = std::get_if<op::HardyNd>(&tag)) return h->n;
        if (auto* u = std::get_if<op::UPhi>(&tag)) return u->n;
        return 1;
    }

    /// The weight φ with U_φ = this operator (on radial functions for 𝓗).
    WeightFunction weight() const {
        if (auto* h = std::get_if<op::HardyNd>(&tag)) return polar_weight(h->n);
        if (auto* u = std::get_if<op::UPhi>(&tag)) return u->weight;
        if (auto* r = std::get_if<op::RiemannLiouville>(&tag)) return riemann_liouville_weight(r->beta);
        return constant_weight();
    }

    std::string label() const {
        if (std::holds_alternative<op::Hardy1d>(tag)) return "hardy1d";
        if (auto* h = std::get_if<op::HardyNd>(&tag)) return "hardynd n=" + std::to_string(h->n);
        if (auto* u = std::get_if<op::UPhi>(&tag)) return "uphi weight=" + u->weight.label + " n=" + std::to_string(u->n);
        return "rl beta=" + std::to_string(std::get<op::RiemannLiouville>(tag).beta);
    }
};

struct ApplyConfig {
    QuadratureConfig quad;
    long mc_samples = 100000;
    std::uint64_t seed = 0;
};

namespace detail {

inline void reject_origin(std::span<const double> x, const char* who) {
    if (euclidean_norm(x) == 0.0)
        throw std::invalid_argument(std::string(who) + ": x = 0 is outside the operator's domain");
}

/// ∫_0^1 h(t) φ(t) dt where h(t) = f(t x) has breakpoints at `knots` and
/// behaves like t^origin_exponent near 0.
template <class H>
Estimate weighted_average(const H& h, const WeightFunction& phi, double origin_exponent,
                          const std::vector<double>& knots, const QuadratureConfig& cfg) {
    const double left = origin_exponent + phi.exponent_at_zero;
    const double right = phi.exponent_at_one;
    auto integrand = [&](double t) { return h(t) * phi(t); };
    if (!(right > -1.0))
        throw std::invalid_argument("weighted_average: weight is not integrable at t = 1");
    if (!(left > -1.0)) {
        // Non-integrable at t = 0: run unhinted so the budget exhausts, and flag it.
        QuadratureConfig c = cfg;
        c.singular_exponent_hints = EndpointHints{0.0, right};
        Estimate e = integrate_pieces(integrand, 0.0, 1.0, knots, c);
        e.diverging = true;
        e.converged = false;
        return e;
    }
    return integrate_pieces(integrand, 0.0, 1.0, knots, cfg.with_hints(left, right));
}

inline std::vector<double> ray_knots(const TestFunction& f, double rho) {
    std::vector<double> k;
    for (double b : f.breaks)
        if (b > 0.0 && b < rho) k.push_back(b / rho);
    return k;
}

}  // namespace detail

/// U_φ f(x) = ∫_0^1 f(tx) φ(t) dt.
inline Estimate u_phi(const TestFunction& f, const WeightFunction& phi, std::span<const double> x,
                      const QuadratureConfig& cfg = {}) {
    if (static_cast<int>(x.size()) != f.dim) throw std::invalid_argument("u_phi: point dimension mismatch");
    detail::reject_origin(x, "u_phi");
    const double rho = euclidean_norm(x);
    const auto knots = detail::ray_knots(f, rho);
    if (f.is_radial()) {
        auto h = [&](double t) { return f.radial_profile(t * rho); };
        return detail::weighted_average(h, phi, f.origin_exponent, knots, cfg);
    }
    std::vector<double> y(x.size());
    auto h = [&](double t) {
        for (std::size_t d = 0; d < x.size(); ++d) y[d] = t * x[d];
        return f.eval(y);
    };
    return detail::weighted_average(h, phi, f.origin_exponent, knots, cfg);
}

inline Estimate u_phi(const TestFunction& f, const WeightFunction& phi, std::initializer_list<double> x,
                      const QuadratureConfig& cfg = {}) {
    return u_phi(f, phi, std::span<const double>(x.begin(), x.size()), cfg);
}

/// H f(x) = (1/x) ∫_0^x f(t) dt for x ≠ 0 (for x < 0 this is the mean over [x,0]).
inline Estimate hardy_1d(const TestFunction& f, double x, const QuadratureConfig& cfg = {}) {
    if (f.dim != 1) throw std::invalid_argument("hardy_1d: requires a function on R");
    if (x == 0.0) throw std::invalid_argument("hardy_1d: x = 0 is outside the operator's domain");
    const double lo = std::min(0.0, x), hi = std::max(0.0, x);
    std::vector<double> knots;
    for (double b : f.breaks) knots.push_back(x > 0 ? b : -b);
    auto g = [&](double t) { return f.eval(std::span<const double>(&t, 1)); };
    const double e = f.origin_exponent;
    if (!(e > -1.0)) throw std::invalid_argument("hardy_1d: f is not integrable at 0");
    const auto c = x > 0 ? cfg.with_hints(e, 0.0) : cfg.with_hints(0.0, e);
    return integrate_pieces(g, lo, hi, knots, c).scaled(1.0 / std::abs(x));
}

/// 𝓗 f(x) for radial f through the polar reduction ∫_0^1 profile(t|x|) n t^{n-1} dt.
inline Estimate hardy_nd_radial(const TestFunction& f, double abs_x, const QuadratureConfig& cfg = {}) {
    if (!f.is_radial()) throw std::invalid_argument("hardy_nd_radial: requires a radial function");
    if (!(abs_x > 0.0)) throw std::invalid_argument("hardy_nd_radial: |x| must be positive");
    auto h = [&](double t) { return f.radial_profile(t * abs_x); };
    return detail::weighted_average(h, polar_weight(f.dim), f.origin_exponent, detail::ray_knots(f, abs_x), cfg);
}

/// 𝓗 f(x) straight from the definition: Monte Carlo ball integral over {|y| < |x|}.
inline Estimate hardy_nd_direct(const TestFunction& f, std::span<const double> x, long samples, std::uint64_t seed) {
    if (static_cast<int>(x.size()) != f.dim) throw std::invalid_argument("hardy_nd_direct: dimension mismatch");
    detail::reject_origin(x, "hardy_nd_direct");
    const double rho = euclidean_norm(x);
    const auto e = integrate_ball_mc(f.eval, f.dim, 0.0, rho, samples, seed);
    return e.scaled(1.0 / (geometry(f.dim).ball_volume * std::pow(rho, f.dim)));
}

/// R_β f(x) = (β/x^β) ∫_0^x (x-t)^{β-1} f(t) dt, computed as U_φ with the Riemann–Liouville weight.
inline Estimate riemann_liouville(const TestFunction& f, double beta, double x, const QuadratureConfig& cfg = {}) {
    if (f.dim != 1) throw std::invalid_argument("riemann_liouville: requires a function on R");
    if (!(x > 0.0)) throw std::invalid_argument("riemann_liouville: requires x > 0");
    return u_phi(f, riemann_liouville_weight(beta), {x}, cfg);
}

namespace detail {

/// Ball average of a non-radial f over {|y| < rho}.
inline Estimate ball_average(const TestFunction& f, double rho, const ApplyConfig& cfg) {
    if (f.dim == 1) {
        std::vector<double> knots;
        for (double b : f.breaks) {
            knots.push_back(-b);
            knots.push_back(b);
        }
        knots.push_back(0.0);
        auto g = [&](double t) { return f.eval(std::span<const double>(&t, 1)); };
        return integrate_pieces(g, -rho, rho, knots, cfg.quad).scaled(0.5 / rho);
    }
    const Point x = [&] {
        Point p(f.dim, 0.0);
        p[0] = rho;
        return p;
    }();
    return hardy_nd_direct(f, x, cfg.mc_samples, cfg.seed);
}

}  // namespace detail

/// Applies an operator at a point.
inline Estimate apply(const OperatorSpec& T, const TestFunction& f, std::span<const double> x, const ApplyConfig& cfg = {}) {
    if (f.dim != T.dim()) throw std::invalid_argument("apply: operator and function dimensions differ");
    if (std::holds_alternative<op::Hardy1d>(T.tag)) return hardy_1d(f, x[0], cfg.quad);
    if (std::holds_alternative<op::HardyNd>(T.tag)) {
        detail::reject_origin(x, "apply");
        if (f.is_radial()) return hardy_nd_radial(f, euclidean_norm(x), cfg.quad);
        return detail::ball_average(f, euclidean_norm(x), cfg);
    }
    return u_phi(f, T.weight(), x, cfg.quad);
}

/// T f as a TestFunction. Evaluations run the operator's quadrature; metadata is
/// propagated where the operator preserves it (radiality, homogeneity, breaks,
/// origin behaviour, profile monotonicity).
inline TestFunction image(const OperatorSpec& T, const TestFunction& f, const ApplyConfig& cfg = {}) {
    if (f.dim != T.dim()) throw std::invalid_argument("image: operator and function dimensions differ");
    const int n = f.dim;
    auto fp = std::make_shared<const TestFunction>(f);
    TestFunction g;
    g.dim = n;
    g.label = T.label() + "(" + f.label + ")";
    g.tag = tag::Custom{g.label};
    g.breaks = f.breaks;
    g.origin_exponent = std::min(f.origin_exponent, 0.0);

    if (std::holds_alternative<op::HardyNd>(T.tag)) {
        if (auto* ind = std::get_if<tag::IndicatorBall>(&f.tag)) {
            const double r = ind->r;
            g.radial_profile = [r, n](double rho) { return rho <= r ? 1.0 : std::pow(r / rho, n); };
            g.monotonicity = Monotonicity::Nonincreasing;
        } else if (f.is_radial()) {
            g.radial_profile = [fp, cfg](double rho) {
                return rho > 0.0 ? hardy_nd_radial(*fp, rho, cfg.quad).value : fp->radial_profile(0.0);
            };
            g.monotonicity = f.monotonicity;
        } else {
            g.radial_profile = [fp, cfg](double rho) { return detail::ball_average(*fp, rho, cfg).value; };
            g.breaks.clear();
        }
        if (f.homogeneity_degree && *f.homogeneity_degree > -n) g.homogeneity_degree = f.homogeneity_degree;
        g.log_homogeneous = f.log_homogeneous && f.is_radial();
        auto prof = g.radial_profile;
        g.eval = [prof](std::span<const double> x) { return prof(euclidean_norm(x)); };
        return g;
    }

    const WeightFunction phi = T.weight();
    g.log_homogeneous = f.log_homogeneous;
    if (f.homogeneity_degree) {
        const auto m = phi.analytic_moment(*f.homogeneity_degree);
        if (!m || std::isfinite(*m)) g.homogeneity_degree = f.homogeneity_degree;
    }
    // At the origin the image is the limit f(0) ∫φ.
    const double mass = phi.analytic_moment(0.0).value_or(1.0);
    auto at_origin = [fp, mass, n] { return mass * fp->eval(Point(n, 0.0)); };
    if (std::holds_alternative<op::Hardy1d>(T.tag)) {
        g.eval = [fp, cfg, at_origin](std::span<const double> x) {
            return x[0] == 0.0 ? at_origin() : hardy_1d(*fp, x[0], cfg.quad).value;
        };
        if (f.is_radial()) {
            g.radial_profile = [fp, cfg, at_origin](double rho) {
                return rho == 0.0 ? at_origin() : hardy_1d(*fp, rho, cfg.quad).value;
            };
            g.monotonicity = f.monotonicity;
        }
        return g;
    }
    auto w = std::make_shared<const WeightFunction>(phi);
    g.eval = [fp, w, cfg, at_origin](std::span<const double> x) {
        return euclidean_norm(x) == 0.0 ? at_origin() : u_phi(*fp, *w, x, cfg.quad).value;
    };
    if (f.is_radial()) {
        g.radial_profile = [fp, w, cfg, n, at_origin](double rho) {
            if (rho == 0.0) return at_origin();
            Point x(n, 0.0);
            x[0] = rho;
            return u_phi(*fp, *w, x, cfg.quad).value;
        };
        g.monotonicity = f.monotonicity;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Tabulated profiles

struct TableConfig {
    double rho_min = 1e-9;
    double rho_max = 1e9;
    int per_decade = 32;
};

/// Piecewise cubic interpolation of a profile in log ρ. Breakpoints are table
/// knots, and interpolation never crosses them; outside [rho_min, rho_max] the
/// profile is extended as a power law through the two outermost nodes. Below
/// rho_min a profile that settles to a finite limit, v0 + A ρ^e with e > 0, is
/// extended by that form fitted to the three innermost nodes.
class RadialTable {
public:
    RadialTable(const std::function<double(double)>& profile, std::vector<double> breaks, const TableConfig& cfg) {
        std::vector<double> edges{cfg.rho_min};
        std::sort(breaks.begin(), breaks.end());
        for (double b : breaks)
            if (b > edges.back() * (1 + 1e-9) && b < cfg.rho_max) edges.push_back(b);
        edges.push_back(cfg.rho_max);
        for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
            const double lo = std::log(edges[s]), hi = std::log(edges[s + 1]);
            const int count = std::max(4, static_cast<int>(std::ceil(cfg.per_decade * (hi - lo) / std::log(10.0))) + 1);
            seg_start_.push_back(logr_.size());
            for (int i = 0; i < count; ++i) {
                double s_i = lo + (hi - lo) * i / (count - 1);
                // Stay strictly inside the segment so one-sided limits are sampled.
                if (i == 0) s_i += 1e-12;
                if (i == count - 1) s_i -= 1e-12;
                logr_.push_back(s_i);
                vals_.push_back(profile(std::exp(s_i)));
            }
        }
        seg_start_.push_back(logr_.size());
        edges_log_.reserve(edges.size());
        for (double e : edges) edges_log_.push_back(std::log(e));
        fit_inner_limit();
    }

    double operator()(double rho) const {
        if (!(rho > 0.0)) return inner_fit_ ? inner_v0_ : vals_.front();
        const double s = std::log(rho);
        if (s <= logr_.front()) {
            if (inner_fit_) return inner_v0_ + (vals_[0] - inner_v0_) * std::exp(inner_e_ * (s - logr_[0]));
            return extrapolate(0, 1, s);
        }
        if (s >= logr_.back()) return extrapolate(logr_.size() - 1, logr_.size() - 2, s);
        const auto seg = static_cast<std::size_t>(
            std::upper_bound(edges_log_.begin() + 1, edges_log_.end() - 1, s) - (edges_log_.begin() + 1));
        const std::size_t b = seg_start_[seg], e = seg_start_[seg + 1];
        std::size_t i = static_cast<std::size_t>(std::upper_bound(logr_.begin() + b, logr_.begin() + e, s) - logr_.begin());
        i = std::clamp<std::size_t>(i, b + 2, e - 2);
        const std::size_t i0 = i - 2;
        // Same-signed stencils are interpolated in log |value|, which is exact for power laws.
        bool logscale = true;
        for (std::size_t j = i0; j < i0 + 4; ++j)
            if (!(vals_[j] != 0.0 && (vals_[j] > 0) == (vals_[i0] > 0))) logscale = false;
        double out = 0.0;
        for (std::size_t j = i0; j < i0 + 4; ++j) {
            double l = 1.0;
            for (std::size_t k = i0; k < i0 + 4; ++k)
                if (k != j) l *= (s - logr_[k]) / (logr_[j] - logr_[k]);
            out += l * (logscale ? std::log(std::abs(vals_[j])) : vals_[j]);
        }
        return logscale ? std::copysign(std::exp(out), vals_[i0]) : out;
    }

    std::size_t size() const { return vals_.size(); }

private:
    void fit_inner_limit() {
        if (seg_start_.size() < 2 || seg_start_[1] < 3) return;
        const double d1 = vals_[1] - vals_[0], d2 = vals_[2] - vals_[1];
        const double h = logr_[1] - logr_[0];
        if (!std::isfinite(d1) || !std::isfinite(d2) || std::abs(d1) <= 1e-12 * std::abs(vals_[0])) return;
        if (std::abs(std::abs(logr_[2] - logr_[1]) - h) > 1e-9 * h) return;
        const double q = d2 / d1;
        if (!(q > 1.0)) return;
        const double e = std::log(q) / h;
        if (!(e > 0.0 && e <= 50.0)) return;
        inner_fit_ = true;
        inner_e_ = e;
        inner_v0_ = vals_[0] - d1 / (q - 1.0);
    }

    double extrapolate(std::size_t a, std::size_t b, double s) const {
        const double va = vals_[a], vb = vals_[b];
        if (va == 0.0 || vb == 0.0 || (va > 0) != (vb > 0)) return va;
        const double k = std::log(vb / va) / (logr_[b] - logr_[a]);
        return va * std::exp(k * (s - logr_[a]));
    }

    std::vector<double> logr_, vals_, edges_log_;
    std::vector<std::size_t> seg_start_;
    bool inner_fit_ = false;
    double inner_v0_ = 0.0, inner_e_ = 0.0;
};

/// Replaces an expensive (quadrature-backed) radial or one-dimensional function by
/// a tabulated copy. One-dimensional non-radial functions get one table per ray.
inline TestFunction tabulate(const TestFunction& f, const TableConfig& cfg = {}) {
    TestFunction g = f;
    g.label = "table(" + f.label + ")";
    if (f.is_radial()) {
        auto table = std::make_shared<const RadialTable>(f.radial_profile, f.breaks, cfg);
        g.radial_profile = [table](double rho) { return (*table)(rho); };
        g.eval = [table](std::span<const double> x) { return (*table)(euclidean_norm(x)); };
        return g;
    }
    if (f.dim != 1) throw std::invalid_argument("tabulate: requires a radial or one-dimensional function");
    auto fp = std::make_shared<const TestFunction>(f);
    auto plus = std::make_shared<const RadialTable>(
        [fp](double r) { return fp->eval(std::span<const double>(&r, 1)); }, f.breaks, cfg);
    auto minus = std::make_shared<const RadialTable>(
        [fp](double r) {
            const double y = -r;
            return fp->eval(std::span<const double>(&y, 1));
        },
        f.breaks, cfg);
    g.eval = [plus, minus](std::span<const double> x) { return x[0] >= 0.0 ? (*plus)(x[0]) : (*minus)(-x[0]); };
    return g;
}

}  // namespace hardy
