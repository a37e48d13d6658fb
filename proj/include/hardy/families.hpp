#pragma once

// Deterministic, seeded families of test functions used to sample operator-norm
// ratios from above. Each generator only produces functions in the domain space
// it is named after.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hardy/function_model.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

struct FunctionFamily {
    std::string name;
    std::vector<TestFunction> members;
};

namespace fam {

/// Uniform parameter stream for one family member.
class Params {
public:
    Params(std::uint64_t seed, std::uint64_t member) : rng_(seed), member_(member) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(member_, lane_++); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::min(hi, lo + static_cast<int>(uniform(0.0, hi - lo + 1))); }
    double sign() { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; }

private:
    CounterRng rng_;
    std::uint64_t member_;
    std::uint64_t lane_ = 0;
};

inline TestFunction step_profile(int n, std::vector<double> radii, std::vector<double> values) {
    auto f = make_radial(
        n,
        [radii, values](double rho) {
            for (std::size_t i = 0; i < radii.size(); ++i)
                if (rho <= radii[i]) return values[i];
            return 0.0;
        },
        "steps k=" + std::to_string(radii.size()));
    f.support_radius = radii.back();
    f.breaks = radii;
    return f;
}

/// exp(-ρ²/s²), set to exactly zero beyond 40 s.
inline TestFunction gaussian(int n, double s, double amplitude = 1.0) {
    const double cut = 40.0 * s;
    auto f = make_radial(
        n, [s, cut, amplitude](double rho) { return rho <= cut ? amplitude * std::exp(-(rho * rho) / (s * s)) : 0.0; },
        "gauss s=" + std::to_string(s));
    f.support_radius = cut;
    f.breaks = {cut};
    f.monotonicity = amplitude >= 0 ? Monotonicity::Nonincreasing : Monotonicity::Nondecreasing;
    return f;
}

/// Unbounded-support gaussian (for seminorm families, where support is irrelevant).
inline TestFunction gaussian_full(int n, double s, double amplitude = 1.0) {
    auto f = make_radial(n, [s, amplitude](double rho) { return amplitude * std::exp(-(rho * rho) / (s * s)); },
                         "gaussfull s=" + std::to_string(s));
    f.monotonicity = amplitude >= 0 ? Monotonicity::Nonincreasing : Monotonicity::Nondecreasing;
    return f;
}

/// (1 - ρ²/R²)_+^k.
inline TestFunction bump(int n, double R, double k) {
    auto f = make_radial(
        n, [R, k](double rho) { return rho < R ? std::pow(1.0 - rho * rho / (R * R), k) : 0.0; },
        "bump R=" + std::to_string(R) + " k=" + std::to_string(k));
    f.support_radius = R;
    f.breaks = {R};
    f.monotonicity = Monotonicity::Nonincreasing;
    return f;
}

/// A one-dimensional function given separately on each half-line.
inline TestFunction two_sided(std::function<double(double)> right, std::function<double(double)> left,
                              std::vector<double> breaks, double origin_exponent, std::string label) {
    auto f = make_custom(
        1, [right, left](std::span<const double> x) { return x[0] >= 0.0 ? right(x[0]) : left(-x[0]); },
        std::move(label));
    f.breaks = std::move(breaks);
    f.origin_exponent = origin_exponent;
    return f;
}

/// ρ^a (1 + ε cos(ω log ρ)): log-periodic perturbation of a power, monotone for small ε.
inline TestFunction log_periodic_power(int n, double a, double eps, double omega) {
    auto f = make_radial(
        n,
        [a, eps, omega](double rho) {
            if (rho == 0.0) return a > 0.0 ? 0.0 : kInf;
            return std::pow(rho, a) * (1.0 + eps * std::cos(omega * std::log(rho)));
        },
        "logper a=" + std::to_string(a));
    f.origin_exponent = a;
    if (std::abs(a) * (1.0 - eps) > eps * omega)
        f.monotonicity = a > 0 ? Monotonicity::Nondecreasing : Monotonicity::Nonincreasing;
    return f;
}

}  // namespace fam

/// L^p(R^n) members with compact support (upper-bound sampling for strong and
/// weak type). In one dimension half the members are not even.
inline FunctionFamily lp_family(int n, double p, int count, std::uint64_t seed, bool one_sided = false) {
    FunctionFamily fam{"lp n=" + std::to_string(n) + " p=" + std::to_string(p), {}};
    const double amin = -0.9 * n / p;
    for (int i = 0; i < count; ++i) {
        fam::Params q(seed, static_cast<std::uint64_t>(i));
        const int kind = one_sided ? 10 + i % 4 : (n == 1 ? i % 8 : i % 5);
        TestFunction f;
        switch (kind) {
            case 0: {
                const int k = q.integer(1, 4);
                std::vector<double> r, v;
                double rho = q.log_uniform(0.05, 1.0);
                for (int j = 0; j < k; ++j) {
                    r.push_back(rho);
                    v.push_back(q.uniform(-1.0, 2.0));
                    rho *= q.log_uniform(1.2, 6.0);
                }
                f = fam::step_profile(n, r, v);
                break;
            }
            case 1:
                f = make_truncated_power(n, q.uniform(amin, 1.5), q.log_uniform(0.2, 5.0));
                break;
            case 2: {
                const double lo = q.log_uniform(0.05, 2.0);
                f = make_annular_power(n, q.uniform(-2.0, 1.0), lo, lo * q.log_uniform(1.5, 1e3));
                break;
            }
            case 3:
                f = fam::gaussian(n, q.log_uniform(0.1, 5.0));
                break;
            case 4:
                f = fam::bump(n, q.log_uniform(0.2, 5.0), q.uniform(0.5, 3.0));
                break;
            case 5:
            case 6:
            case 7:
            case 10:
            case 11:
            case 12:
            case 13: {
                // One-dimensional, not even: different truncated powers on each half-line.
                const double a1 = q.uniform(amin, 1.0), r1 = q.log_uniform(0.2, 5.0);
                const double a2 = q.uniform(amin, 1.0), r2 = q.log_uniform(0.2, 5.0);
                const double c2 = one_sided ? 0.0 : q.uniform(-1.5, 1.5);
                const double c1 = (kind == 11 || kind == 7) ? q.uniform(-1.0, 1.0) : 1.0;
                if (kind == 12 || kind == 13) {
                    // Step on the right half-line with an inner gap.
                    const double lo = q.log_uniform(0.05, 2.0), hi = lo * q.log_uniform(1.5, 50.0);
                    f = fam::two_sided([lo, hi, c1](double t) { return t >= lo && t <= hi ? c1 : 0.0; },
                                       [](double) { return 0.0; }, {lo, hi}, 0.0, "onesided step");
                    f.support_radius = hi;
                    break;
                }
                f = fam::two_sided(
                    [a1, r1, c1](double t) { return t <= r1 ? c1 * std::pow(t, a1) : 0.0; },
                    [a2, r2, c2](double t) { return t <= r2 ? c2 * std::pow(t, a2) : 0.0; },
                    c2 == 0.0 ? std::vector<double>{r1} : std::vector<double>{r1, r2},
                    std::min(a1, c2 == 0.0 ? 0.0 : a2), "asym powers");
                f.support_radius = c2 == 0.0 ? r1 : std::max(r1, r2);
                break;
            }
            default:
                break;
        }
        fam.members.push_back(std::move(f));
    }
    return fam;
}

/// Members of the Campanato space 𝓔^{α,p}(R^n). `radial_only` restricts to radial
/// functions; `star` drops functions unbounded below (they have infinite star seminorm).
inline FunctionFamily campanato_family(int n, double alpha, double p, int count, std::uint64_t seed, bool radial_only,
                                       bool star) {
    FunctionFamily fam{"campanato n=" + std::to_string(n) + " a=" + std::to_string(alpha), {}};
    const bool one_d = n == 1 && !radial_only;
    const int kinds = one_d ? 8 : 5;
    for (int i = 0; fam.members.size() < static_cast<std::size_t>(count); ++i) {
        fam::Params q(seed, static_cast<std::uint64_t>(i));
        const int kind = i % kinds;
        TestFunction f;
        if (alpha > 0.0) {
            switch (kind) {
                case 0:
                    f = fam::log_periodic_power(n, alpha, q.uniform(0.0, 0.2), q.uniform(0.1, 0.8) * alpha);
                    break;
                case 1: {
                    const double R = q.log_uniform(0.3, 4.0);
                    f = make_radial(n, [alpha, R](double rho) { return std::pow(std::min(rho, R), alpha); }, "capped power");
                    f.breaks = {R};
                    f.origin_exponent = alpha;
                    f.monotonicity = Monotonicity::Nondecreasing;
                    break;
                }
                case 2: {
                    const double s = q.log_uniform(0.3, 3.0);
                    f = make_radial(n, [alpha, s](double rho) { return std::pow(1.0 + rho * rho / (s * s), alpha / 2.0); },
                                    "japanese bracket");
                    f.monotonicity = Monotonicity::Nondecreasing;
                    break;
                }
                case 3:
                    f = fam::gaussian_full(n, q.log_uniform(0.2, 3.0), star ? 1.0 : q.sign());
                    break;
                case 4: {
                    const double s = q.log_uniform(0.2, 3.0), c = q.uniform(0.2, 1.0);
                    f = make_radial(n,
                                    [alpha, s, c](double rho) {
                                        return std::pow(rho, alpha) + c * std::exp(-(rho * rho) / (s * s));
                                    },
                                    "power plus gauss");
                    f.origin_exponent = alpha;
                    break;
                }
                case 5: {
                    const double c = q.uniform(0.0, 1.0);
                    f = fam::two_sided([alpha](double t) { return std::pow(t, alpha); },
                                       [alpha, c](double t) { return c * std::pow(t, alpha); }, {}, alpha, "onesided power");
                    break;
                }
                case 6: {
                    const double c = q.uniform(0.3, 2.0) * q.sign();
                    f = make_custom(1, [alpha, c](std::span<const double> x) { return std::pow(std::abs(x[0] - c), alpha); },
                                    "shifted power");
                    f.breaks = {std::abs(c)};
                    break;
                }
                default: {
                    const double s = q.log_uniform(0.3, 3.0), c = q.uniform(-1.0, 1.0);
                    f = make_custom(1, [alpha, s, c](std::span<const double> x) {
                        return std::pow(std::abs(x[0]), alpha) + c * std::tanh(x[0] / s);
                    }, "power plus tanh");
                    f.origin_exponent = alpha;
                    break;
                }
            }
        } else if (alpha == 0.0) {
            switch (kind) {
                case 0: {
                    const double c = q.log_uniform(0.1, 10.0);
                    f = make_radial(n, [c](double rho) { return std::log1p(c / rho); }, "log bump");
                    f.origin_exponent = -1e-3;
                    f.monotonicity = Monotonicity::Nonincreasing;
                    break;
                }
                case 1: {
                    const double s = q.uniform(0.2, 1.0);
                    f = star ? make_log(n, -s) : make_log(n, s * q.sign());
                    f.origin_exponent = -1e-3;
                    break;
                }
                case 2: {
                    const double s = q.log_uniform(0.3, 3.0);
                    f = make_radial(n, [s](double rho) { return std::cos(rho / s) * std::exp(-rho / (8.0 * s)); },
                                    "damped cosine");
                    break;
                }
                case 3:
                    f = fam::gaussian_full(n, q.log_uniform(0.2, 3.0), star ? 1.0 : q.sign());
                    break;
                case 4: {
                    const double R = q.log_uniform(0.3, 3.0);
                    f = make_radial(n, [R](double rho) { return std::tanh((rho - R) / (0.3 * R)); }, "smooth indicator");
                    f.monotonicity = Monotonicity::Nondecreasing;
                    break;
                }
                case 5: {
                    const double s = q.log_uniform(0.1, 3.0), c = q.uniform(-2.0, 2.0);
                    f = make_custom(1, [s, c](std::span<const double> x) { return std::tanh((x[0] - c) / s); }, "tanh");
                    f.breaks = {std::abs(c)};
                    break;
                }
                case 6: {
                    const double a = q.uniform(0.2, 1.0), b = q.uniform(-0.5, 0.5), s = q.log_uniform(0.3, 3.0);
                    f = make_custom(1, [a, b, s](std::span<const double> x) {
                        return a * (x[0] <= 0.0 ? 1.0 : -1.0) + b * std::exp(-x[0] * x[0] / (s * s));
                    }, "signsplit mixture");
                    break;
                }
                default: {
                    const double c = q.log_uniform(0.1, 10.0), b = q.uniform(0.2, 1.0);
                    // Same log singularity on both sides: a one-sided log is not in BMO.
                    f = fam::two_sided([c](double t) { return std::log1p(c / t); },
                                       [b, c](double t) { return std::log1p(c / t) + b * (1.0 - std::exp(-t)); }, {},
                                       -1e-3, "asymmetric log");
                    break;
                }
            }
        } else {
            switch (kind) {
                case 0: {
                    const double c = q.log_uniform(0.3, 5.0);
                    f = make_radial(n, [alpha, c](double rho) { return std::min(std::pow(rho, alpha), c); }, "capped singular");
                    f.breaks = {std::pow(c, 1.0 / alpha)};
                    f.monotonicity = Monotonicity::Nonincreasing;
                    break;
                }
                case 1: {
                    const double s = q.log_uniform(0.3, 3.0);
                    f = make_radial(n, [alpha, s](double rho) { return std::pow(rho, alpha) * std::exp(-(rho * rho) / (s * s)); },
                                    "damped power");
                    f.origin_exponent = alpha;
                    f.monotonicity = Monotonicity::Nonincreasing;
                    break;
                }
                case 2: {
                    const double s = q.log_uniform(0.3, 3.0);
                    f = make_radial(n, [alpha, s](double rho) { return std::pow(1.0 + rho * rho / (s * s), alpha / 2.0); },
                                    "japanese bracket");
                    f.monotonicity = Monotonicity::Nonincreasing;
                    break;
                }
                case 3:
                    f = fam::gaussian_full(n, q.log_uniform(0.2, 3.0), star ? 1.0 : q.sign());
                    break;
                case 4:
                    f = fam::log_periodic_power(n, alpha, q.uniform(0.0, 0.2), q.uniform(0.1, 0.8) * std::abs(alpha));
                    break;
                case 5: {
                    const double c = q.uniform(0.0, 1.0);
                    f = fam::two_sided([alpha](double t) { return std::pow(t, alpha); },
                                       [alpha, c](double t) { return c * std::pow(t, alpha); }, {}, alpha, "onesided power");
                    break;
                }
                case 6: {
                    const double s = q.log_uniform(0.3, 3.0), c = q.uniform(-2.0, 2.0);
                    f = fam::two_sided([s](double t) { return std::exp(-t / s); },
                                       [c, s](double t) { return c * std::exp(-t / s); }, {}, 0.0, "two exponentials");
                    break;
                }
                default: {
                    const double R = q.log_uniform(0.3, 3.0);
                    f = fam::two_sided([alpha, R](double t) { return t <= R ? std::pow(t, alpha) : 0.0; },
                                       [](double) { return 0.0; }, {R}, alpha, "onesided truncated");
                    break;
                }
            }
        }
        fam.members.push_back(std::move(f));
    }
    return fam;
}

}  // namespace hardy
