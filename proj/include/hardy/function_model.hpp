#pragma once

// Test functions on R^n, weights on [0,1] and the geometric / special-function
// constants shared by the rest of the toolkit.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hardy {

using Point = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double euclidean_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Special functions

/// Beta function B(a,b) = Γ(a)Γ(b)/Γ(a+b), evaluated in log space.
inline double beta_function(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("beta_function: arguments must be positive");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

struct GeometryConstants {
    int n = 1;
    double ball_volume = 2.0;  // Ω_n
    double sphere_area = 2.0;  // ω_n = n Ω_n
};

inline GeometryConstants geometry(int n) {
    if (n < 1) throw std::invalid_argument("geometry: dimension must be >= 1");
    const double half = 0.5 * n;
    const double omega = std::exp(half * std::log(std::numbers::pi) - std::lgamma(1.0 + half));
    return {n, omega, n * omega};
}

// ---------------------------------------------------------------------------
// Test functions

enum class Monotonicity { None, Nondecreasing, Nonincreasing };

namespace tag {
struct PowerAlpha { double alpha; };
struct IndicatorBall { double r; };
struct SignSplit {};
struct TruncatedPower { double alpha; double r; };
struct Custom { std::string name; };
}  // namespace tag

using FunctionTag =
    std::variant<tag::PowerAlpha, tag::IndicatorBall, tag::SignSplit, tag::TruncatedPower, tag::Custom>;

/// A real function on R^n given by a pure evaluator plus analytic metadata.
///
/// The metadata is what lets the operators and norms take exact shortcuts:
///   - radial_profile      present iff f(x) = profile(|x|)
///   - homogeneity_degree  present iff f(tx) = t^α f(x) for t in (0,1]
///   - support_radius      f vanishes outside the closed ball of this radius
///   - breaks              radii where f is non-smooth along rays from 0
///   - origin_exponent     e with |f(y)| ≲ |y|^e as y -> 0 (0 when bounded)
///   - monotonicity        monotonicity of the radial profile, if known
///   - log_homogeneous     f(tx) = f(x) + c·log t for t > 0 (oscillations are dilation invariant)
///
/// Values are immutable once built; evaluators must be pure and thread safe.
struct TestFunction {
    int dim = 1;
    std::function<double(std::span<const double>)> eval;
    std::function<double(double)> radial_profile;
    std::optional<double> homogeneity_degree;
    std::optional<double> support_radius;
    FunctionTag tag = tag::Custom{"custom"};
    std::vector<double> breaks;
    double origin_exponent = 0.0;
    Monotonicity monotonicity = Monotonicity::None;
    bool log_homogeneous = false;
    std::string label = "custom";

    bool is_radial() const { return static_cast<bool>(radial_profile); }
    double operator()(std::span<const double> x) const { return eval(x); }
    double operator()(std::initializer_list<double> x) const {
        return eval(std::span<const double>(x.begin(), x.size()));
    }
};

inline void require_dim(int n, const char* who) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": dimension must be >= 1");
}

/// Radial function from a profile. Metadata beyond radiality is left to the caller.
inline TestFunction make_radial(int n, std::function<double(double)> profile, std::string label) {
    require_dim(n, "make_radial");
    TestFunction f;
    f.dim = n;
    f.radial_profile = profile;
    f.eval = [profile = std::move(profile)](std::span<const double> x) { return profile(euclidean_norm(x)); };
    f.tag = tag::Custom{label};
    f.label = std::move(label);
    return f;
}

inline TestFunction make_custom(int n, std::function<double(std::span<const double>)> eval, std::string label) {
    require_dim(n, "make_custom");
    TestFunction f;
    f.dim = n;
    f.eval = std::move(eval);
    f.tag = tag::Custom{label};
    f.label = std::move(label);
    return f;
}

/// |x|^α on R^n; requires α > -n so that f is locally integrable.
inline TestFunction make_power(int n, double alpha) {
    require_dim(n, "make_power");
    if (!(alpha > -n))
        throw std::invalid_argument("make_power: |x|^alpha is not locally integrable for alpha <= -n");
    auto f = make_radial(
        n, [alpha](double rho) { return alpha == 0.0 ? 1.0 : std::pow(rho, alpha); },
        "power a=" + std::to_string(alpha));
    f.tag = tag::PowerAlpha{alpha};
    f.homogeneity_degree = alpha;
    f.origin_exponent = alpha;
    f.monotonicity = alpha > 0 ? Monotonicity::Nondecreasing
                               : (alpha < 0 ? Monotonicity::Nonincreasing : Monotonicity::Nondecreasing);
    return f;
}

/// χ_r(|x|): indicator of the closed ball of radius r.
inline TestFunction make_indicator(int n, double r) {
    require_dim(n, "make_indicator");
    if (!(r > 0.0)) throw std::invalid_argument("make_indicator: radius must be positive");
    auto f = make_radial(n, [r](double rho) { return rho <= r ? 1.0 : 0.0; },
                         "indicator r=" + std::to_string(r));
    f.tag = tag::IndicatorBall{r};
    f.support_radius = r;
    f.breaks = {r};
    f.monotonicity = Monotonicity::Nonincreasing;
    return f;
}

/// +1 on {x_1 < 0}, -1 on {x_1 > 0}; the hyperplane x_1 = 0 maps to +1.
inline TestFunction make_sign_split(int n) {
    require_dim(n, "make_sign_split");
    auto f = make_custom(n, [](std::span<const double> x) { return x[0] <= 0.0 ? 1.0 : -1.0; }, "signsplit");
    f.tag = tag::SignSplit{};
    f.homogeneity_degree = 0.0;
    return f;
}

/// |x|^α χ_r(|x|), α > -n.
inline TestFunction make_truncated_power(int n, double alpha, double r) {
    require_dim(n, "make_truncated_power");
    if (!(alpha > -n)) throw std::invalid_argument("make_truncated_power: requires alpha > -n");
    if (!(r > 0.0)) throw std::invalid_argument("make_truncated_power: radius must be positive");
    auto f = make_radial(
        n, [alpha, r](double rho) { return rho <= r ? (alpha == 0.0 ? 1.0 : std::pow(rho, alpha)) : 0.0; },
        "truncpower a=" + std::to_string(alpha) + " r=" + std::to_string(r));
    f.tag = tag::TruncatedPower{alpha, r};
    f.support_radius = r;
    f.breaks = {r};
    f.origin_exponent = alpha;
    if (alpha <= 0) f.monotonicity = Monotonicity::Nonincreasing;
    return f;
}

/// |x|^α on the annulus lo <= |x| <= hi.
inline TestFunction make_annular_power(int n, double alpha, double lo, double hi) {
    require_dim(n, "make_annular_power");
    if (!(lo >= 0.0 && hi > lo)) throw std::invalid_argument("make_annular_power: need 0 <= lo < hi");
    auto f = make_radial(
        n, [alpha, lo, hi](double rho) { return (rho >= lo && rho <= hi) ? std::pow(rho, alpha) : 0.0; },
        "annularpower a=" + std::to_string(alpha) + " lo=" + std::to_string(lo) + " hi=" + std::to_string(hi));
    f.support_radius = hi;
    if (lo > 0.0) f.breaks = {lo, hi};
    else {
        f.breaks = {hi};
        f.origin_exponent = alpha;
    }
    return f;
}

/// s·log|x|, the radial BMO function (s = -1 gives the BLO one).
inline TestFunction make_log(int n, double s = 1.0) {
    auto f = make_radial(n, [s](double rho) { return s * std::log(rho); },
                         s >= 0 ? "log" : "neglog");
    f.monotonicity = s >= 0 ? Monotonicity::Nondecreasing : Monotonicity::Nonincreasing;
    f.log_homogeneous = true;
    f.origin_exponent = -1e-3;
    return f;
}

// ---------------------------------------------------------------------------
// Weights on [0,1]

namespace wtag {
struct Constant {};
struct PolarPower { int n; };
struct RiemannLiouville { double beta; };
struct Custom { std::string name; };
}  // namespace wtag

using WeightTag = std::variant<wtag::Constant, wtag::PolarPower, wtag::RiemannLiouville, wtag::Custom>;

/// Nonnegative weight φ on [0,1] with power-law endpoint behaviour
/// φ(t) ≍ t^a near 0 and φ(t) ≍ (1-t)^b near 1.
struct WeightFunction {
    std::function<double(double)> eval;
    double exponent_at_zero = 0.0;
    double exponent_at_one = 0.0;
    WeightTag tag = wtag::Constant{};
    std::string label = "constant";

    double operator()(double t) const { return eval(t); }

    /// Closed form of ∫_0^1 t^α φ(t) dt for the builtin weights (+inf when divergent);
    /// nullopt for custom weights.
    std::optional<double> analytic_moment(double alpha) const {
        if (std::holds_alternative<wtag::Constant>(tag))
            return alpha > -1.0 ? 1.0 / (1.0 + alpha) : kInf;
        if (auto* pp = std::get_if<wtag::PolarPower>(&tag))
            return alpha > -pp->n ? pp->n / (pp->n + alpha) : kInf;
        if (auto* rl = std::get_if<wtag::RiemannLiouville>(&tag))
            return alpha > -1.0 ? rl->beta * beta_function(alpha + 1.0, rl->beta) : kInf;
        return std::nullopt;
    }
};

inline WeightFunction constant_weight() {
    return {[](double) { return 1.0; }, 0.0, 0.0, wtag::Constant{}, "constant"};
}

/// n t^{n-1}: the weight that turns U_φ into the n-dimensional Hardy operator on radial functions.
inline WeightFunction polar_weight(int n) {
    require_dim(n, "polar_weight");
    return {[n](double t) { return n == 1 ? 1.0 : n * std::pow(t, n - 1); },
            static_cast<double>(n - 1), 0.0, wtag::PolarPower{n}, "polar:" + std::to_string(n)};
}

/// β(1-t)^{β-1}: the Riemann–Liouville weight.
inline WeightFunction riemann_liouville_weight(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("riemann_liouville_weight: beta must be positive");
    return {[beta](double t) { return beta == 1.0 ? 1.0 : beta * std::pow(1.0 - t, beta - 1.0); },
            0.0, beta - 1.0, wtag::RiemannLiouville{beta}, "rl:" + std::to_string(beta)};
}

inline WeightFunction custom_weight(std::function<double(double)> eval, double exponent_at_zero,
                                    double exponent_at_one, std::string name) {
    return {std::move(eval), exponent_at_zero, exponent_at_one, wtag::Custom{name}, name};
}

}  // namespace hardy
