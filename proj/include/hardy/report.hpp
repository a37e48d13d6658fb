#pragma once

// Run configuration, report serialization and the flat key=value mini-grammar
// used on the command line for functions, operators and spaces.

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardy/certificates.hpp"

namespace hardy {

inline constexpr const char* kToolkitVersion = "0.1.0";

using json = nlohmann::ordered_json;

/// Configuration or usage problem; the CLI maps it to exit status 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Numbers. JSON has no infinities, so ±inf and nan travel as strings.

inline json number_to_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline double number_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        if (s == "nan") return std::nan("");
    }
    throw UsageError("expected a number, got " + j.dump());
}

// ---------------------------------------------------------------------------
// Run configuration

struct RunConfig {
    std::uint64_t seed = 0;
    std::string output_path;
    std::string output_format = "json";
    std::vector<Claim> selection;
    CertifyConfig certify;
};

namespace detail {

inline json search_to_json(const CubeSearchConfig& s) {
    json j;
    j["center_box_halfwidth"] = s.center_box_halfwidth;
    j["scales"] = s.scales;
    j["coarse_grid_points_per_axis"] = s.coarse_grid_points_per_axis;
    j["relative_grid_points"] = s.relative_grid_points;
    j["relative_grid_halfwidth"] = s.relative_grid_halfwidth;
    j["refinement_rounds"] = s.refinement_rounds;
    j["inner_quadrature_order"] = s.inner_quadrature_order;
    j["top_candidates"] = s.top_candidates;
    j["grading_depth"] = s.grading_depth;
    j["use_dilation_reduction"] = s.use_dilation_reduction;
    j["use_radial_symmetry"] = s.use_radial_symmetry;
    return j;
}

/// Reads the keys of j into out, rejecting anything unknown.
class Reader {
public:
    Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw UsageError(where_ + ": expected an object");
        for (auto it = j_.begin(); it != j_.end(); ++it) pending_.push_back(it.key());
    }
    template <class T>
    void read(const char* key, T& out) {
        auto it = j_.find(key);
        if (it == j_.end()) return;
        std::erase(pending_, std::string(key));
        try {
            if constexpr (std::is_same_v<T, double>) out = number_from_json(*it);
            else if constexpr (std::is_same_v<T, std::vector<double>>) {
                out.clear();
                for (const auto& v : *it) out.push_back(number_from_json(v));
            } else out = it->template get<T>();
        } catch (const json::exception& e) {
            throw UsageError(where_ + "." + key + ": " + e.what());
        }
    }
    const json* sub(const char* key) {
        auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        std::erase(pending_, std::string(key));
        return &*it;
    }
    void finish() const {
        if (!pending_.empty()) throw UsageError(where_ + ": unknown key '" + pending_.front() + "'");
    }

private:
    const json& j_;
    std::string where_;
    std::vector<std::string> pending_;
};

inline void search_from_json(const json& j, CubeSearchConfig& s, const std::string& where) {
    Reader r(j, where);
    r.read("center_box_halfwidth", s.center_box_halfwidth);
    r.read("scales", s.scales);
    r.read("coarse_grid_points_per_axis", s.coarse_grid_points_per_axis);
    r.read("relative_grid_points", s.relative_grid_points);
    r.read("relative_grid_halfwidth", s.relative_grid_halfwidth);
    r.read("refinement_rounds", s.refinement_rounds);
    r.read("inner_quadrature_order", s.inner_quadrature_order);
    r.read("top_candidates", s.top_candidates);
    r.read("grading_depth", s.grading_depth);
    r.read("use_dilation_reduction", s.use_dilation_reduction);
    r.read("use_radial_symmetry", s.use_radial_symmetry);
    r.finish();
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(where + ": " + e.what());
    }
}

}  // namespace detail

inline json claim_to_json(const Claim& c) {
    json j;
    j["id"] = claim_name(c.id);
    json params = json::object();
    for (const auto& [k, v] : c.params) params[k] = number_to_json(v);
    j["params"] = params;
    if (c.id == ClaimId::UPhiCampanato || c.id == ClaimId::UPhiCampanatoStar) j["weight"] = c.weight;
    return j;
}

inline Claim claim_from_json(const json& j) {
    detail::Reader r(j, "claim");
    std::string id, weight = "constant";
    std::map<std::string, double> params;
    r.read("id", id);
    r.read("weight", weight);
    if (const json* p = r.sub("params")) {
        if (!p->is_object()) throw UsageError("claim.params: expected an object");
        for (auto it = p->begin(); it != p->end(); ++it) params[it.key()] = number_from_json(it.value());
    }
    r.finish();
    if (id.empty()) throw UsageError("claim: missing id");
    return make_claim(parse_claim_id(id), params, weight);
}

inline json config_to_json(const RunConfig& rc) {
    const CertifyConfig& c = rc.certify;
    json j;
    j["seed"] = rc.seed;
    j["output_path"] = rc.output_path;
    j["output_format"] = rc.output_format;
    json sel = json::array();
    for (const auto& cl : rc.selection) sel.push_back(claim_to_json(cl));
    j["selection"] = sel;
    j["family_sizes"] = {{"weak", c.weak_family_size}, {"lp", c.lp_family_size}, {"campanato", c.campanato_family_size}};
    j["tolerances"] = {{"weak_upper", c.weak_upper_tol},
                       {"weak_lower", c.weak_lower_tol},
                       {"distribution_match", c.distribution_match_tol},
                       {"lp_upper", c.lp_upper_tol},
                       {"lp_lower", c.lp_lower_tol},
                       {"slope", c.slope_tol},
                       {"campanato_upper", c.campanato_upper_tol},
                       {"campanato_lower", c.campanato_lower_tol},
                       {"constant_paths", c.constant_paths_tol},
                       {"eigen_pointwise", c.eigen_pointwise_tol}};
    j["near_extremizer_A"] = c.near_extremizer_A;
    j["log_slope_R"] = c.log_slope_R;
    j["unbounded_threshold"] = c.unbounded_threshold;
    j["cube_search"] = detail::search_to_json(c.search);
    j["cube_search_family_1d"] = detail::search_to_json(c.search_family_1d);
    j["cube_search_multi_d"] = detail::search_to_json(c.search_multi_d);
    j["table"] = {{"rho_min", c.table.rho_min}, {"rho_max", c.table.rho_max}, {"per_decade", c.table.per_decade}};
    return j;
}

/// Applies j on top of rc. Absent keys keep their current values; unknown keys throw.
inline void config_from_json(const json& j, RunConfig& rc) {
    CertifyConfig& c = rc.certify;
    detail::Reader r(j, "config");
    r.read("seed", rc.seed);
    r.read("output_path", rc.output_path);
    r.read("output_format", rc.output_format);
    if (const json* s = r.sub("selection")) {
        if (!s->is_array()) throw UsageError("config.selection: expected an array");
        rc.selection.clear();
        for (const auto& cl : *s) rc.selection.push_back(claim_from_json(cl));
    }
    if (const json* f = r.sub("family_sizes")) {
        detail::Reader fr(*f, "config.family_sizes");
        fr.read("weak", c.weak_family_size);
        fr.read("lp", c.lp_family_size);
        fr.read("campanato", c.campanato_family_size);
        fr.finish();
    }
    if (const json* t = r.sub("tolerances")) {
        detail::Reader tr(*t, "config.tolerances");
        tr.read("weak_upper", c.weak_upper_tol);
        tr.read("weak_lower", c.weak_lower_tol);
        tr.read("distribution_match", c.distribution_match_tol);
        tr.read("lp_upper", c.lp_upper_tol);
        tr.read("lp_lower", c.lp_lower_tol);
        tr.read("slope", c.slope_tol);
        tr.read("campanato_upper", c.campanato_upper_tol);
        tr.read("campanato_lower", c.campanato_lower_tol);
        tr.read("constant_paths", c.constant_paths_tol);
        tr.read("eigen_pointwise", c.eigen_pointwise_tol);
        tr.finish();
    }
    r.read("near_extremizer_A", c.near_extremizer_A);
    r.read("log_slope_R", c.log_slope_R);
    r.read("unbounded_threshold", c.unbounded_threshold);
    if (const json* s = r.sub("cube_search")) detail::search_from_json(*s, c.search, "config.cube_search");
    if (const json* s = r.sub("cube_search_family_1d")) detail::search_from_json(*s, c.search_family_1d, "config.cube_search_family_1d");
    if (const json* s = r.sub("cube_search_multi_d")) detail::search_from_json(*s, c.search_multi_d, "config.cube_search_multi_d");
    if (const json* t = r.sub("table")) {
        detail::Reader tr(*t, "config.table");
        tr.read("rho_min", c.table.rho_min);
        tr.read("rho_max", c.table.rho_max);
        tr.read("per_decade", c.table.per_decade);
        tr.finish();
    }
    r.finish();
    if (rc.output_format != "json" && rc.output_format != "csv")
        throw UsageError("config.output_format: expected json or csv");
    if (c.weak_family_size < 1 || c.lp_family_size < 1 || c.campanato_family_size < 1)
        throw UsageError("config.family_sizes: sizes must be positive");
    c.seed = rc.seed;
}

// ---------------------------------------------------------------------------
// Certificates and reports

inline const char* verdict_name(const Certificate& c) { return c.passed() ? "PASS" : "FAIL"; }

/// Deterministic payload only; wall-clock time is reported separately.
inline json certificate_to_json(const Certificate& c) {
    json j;
    j["claim"] = claim_to_json(c.claim);
    j["claimed_constant"] = number_to_json(c.claimed_constant);
    j["lower_bound_measured"] = number_to_json(c.lower_bound_measured);
    j["worst_upper_ratio"] = number_to_json(c.worst_upper_ratio);
    j["tolerance"] = {{"lower", c.tolerance.lower}, {"upper", c.tolerance.upper}};
    j["verdict"] = verdict_name(c);
    j["unbounded"] = c.unbounded;
    json checks = json::array();
    for (const auto& ch : c.checks)
        checks.push_back({{"name", ch.name},
                          {"passed", ch.passed},
                          {"value", number_to_json(ch.value)},
                          {"threshold", number_to_json(ch.threshold)}});
    j["checks"] = checks;
    json nums = json::object();
    for (const auto& [k, v] : c.numbers) nums[k] = number_to_json(v);
    j["diagnostics"] = {{"numbers", nums}, {"notes", c.notes}};
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.claim = claim_from_json(j.at("claim"));
    c.claimed_constant = number_from_json(j.at("claimed_constant"));
    c.lower_bound_measured = number_from_json(j.at("lower_bound_measured"));
    c.worst_upper_ratio = number_from_json(j.at("worst_upper_ratio"));
    c.tolerance.lower = number_from_json(j.at("tolerance").at("lower"));
    c.tolerance.upper = number_from_json(j.at("tolerance").at("upper"));
    c.verdict = j.at("verdict").get<std::string>() == "PASS" ? Verdict::Pass : Verdict::Fail;
    c.unbounded = j.at("unbounded").get<bool>();
    for (const auto& ch : j.at("checks"))
        c.checks.push_back({ch.at("name").get<std::string>(), ch.at("passed").get<bool>(),
                            number_from_json(ch.at("value")), number_from_json(ch.at("threshold"))});
    const auto& d = j.at("diagnostics");
    for (auto it = d.at("numbers").begin(); it != d.at("numbers").end(); ++it)
        c.numbers[it.key()] = number_from_json(it.value());
    c.notes = d.at("notes").get<std::map<std::string, std::string>>();
    return c;
}

struct Report {
    RunConfig config;
    std::vector<Certificate> certificates;
};

inline json report_to_json(const Report& r) {
    json j;
    j["toolkit"] = {{"name", "hardy"}, {"version", kToolkitVersion}};
    j["config"] = config_to_json(r.config);
    json certs = json::array();
    bool all = true;
    for (const auto& c : r.certificates) {
        certs.push_back(certificate_to_json(c));
        all = all && c.passed();
    }
    j["summary"] = {{"certificates", r.certificates.size()}, {"all_pass", all}};
    j["certificates"] = certs;
    json timing = json::array();
    double total = 0.0;
    for (const auto& c : r.certificates) {
        timing.push_back({{"claim", c.claim.key()}, {"seconds", c.seconds}});
        total += c.seconds;
    }
    j["timing"] = {{"per_certificate", timing}, {"total_seconds", total}};
    return j;
}

inline Report report_from_json(const json& j) {
    Report r;
    config_from_json(j.at("config"), r.config);
    for (const auto& c : j.at("certificates")) r.certificates.push_back(certificate_from_json(c));
    if (auto it = j.find("timing"); it != j.end()) {
        const auto& per = it->at("per_certificate");
        for (std::size_t i = 0; i < per.size() && i < r.certificates.size(); ++i)
            r.certificates[i].seconds = per[i].at("seconds").get<double>();
    }
    return r;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

inline std::string csv_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline std::string report_to_csv(const Report& r) {
    std::ostringstream os;
    os << "claim,claimed,lower,upper_worst,verdict\n";
    for (const auto& c : r.certificates)
        os << csv_escape(c.claim.key()) << ',' << csv_number(c.claimed_constant) << ','
           << csv_number(c.lower_bound_measured) << ',' << csv_number(c.worst_upper_ratio) << ',' << verdict_name(c)
           << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Mini-grammar: "<head> key=value key=value ..."

struct SpecTokens {
    std::string head;
    std::map<std::string, std::string> kv;
    std::string rest;  // text after the head, used by nested specs

    double number(const std::string& k, std::optional<double> fallback = std::nullopt) const {
        auto it = kv.find(k);
        if (it == kv.end()) {
            if (fallback) return *fallback;
            throw UsageError("'" + head + "' needs " + k + "=<value>");
        }
        try {
            std::size_t used = 0;
            const std::string& s = it->second;
            if (s == "inf") return kInf;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::logic_error&) {
            throw UsageError("'" + head + "': " + k + "=" + it->second + " is not a number");
        }
    }
    int dim(int fallback = 1) const {
        const double n = number("n", fallback);
        if (!(n >= 1 && n == std::floor(n) && n <= 16)) throw UsageError("'" + head + "': n must be a positive integer");
        return static_cast<int>(n);
    }
    void allow(std::initializer_list<const char*> keys) const {
        for (const auto& [k, v] : kv) {
            bool ok = false;
            for (const char* a : keys) ok = ok || k == a;
            if (!ok) throw UsageError("'" + head + "' does not accept " + k + "=");
        }
    }
};

inline SpecTokens tokenize_spec(const std::string& text) {
    std::istringstream is(text);
    SpecTokens t;
    if (!(is >> t.head)) throw UsageError("empty expression");
    std::getline(is, t.rest);
    std::istringstream ks(t.rest);
    for (std::string tok; ks >> tok;) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value in '" + text + "', got '" + tok + "'");
        t.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return t;
}

inline const char* kFunctionGrammar =
    "power a=<alpha> n=<n> | indicator r=<r> n=<n> | signsplit n=<n> | truncpower a=<alpha> r=<r> n=<n> | "
    "annularpower a=<alpha> lo=<lo> hi=<hi> n=<n> | log s=<scale> n=<n> | gaussian s=<width> n=<n> | hardy_of <function>";
inline const char* kOperatorGrammar = "hardy1d | hardynd n=<n> | uphi weight=constant|polar:<k>|rl:<beta> n=<n> | rl beta=<beta>";
inline const char* kSpaceGrammar =
    "Lp p=<p> n=<n> | weakLp p=<p> n=<n> | BMO n=<n> | BLO n=<n> | Lip beta=<beta> n=<n> | "
    "campanato alpha=<alpha> p=<p> n=<n> | campanato_star alpha=<alpha> p=<p> n=<n>";

inline TestFunction parse_function(const std::string& text) {
    std::istringstream is(text);
    std::string head;
    is >> head;
    if (head == "hardy_of") {
        std::string inner;
        std::getline(is, inner);
        const TestFunction f = parse_function(inner);
        return image(OperatorSpec::hardy_nd(f.dim), f);
    }
    const SpecTokens t = tokenize_spec(text);
    try {
        if (t.head == "power") {
            t.allow({"a", "n"});
            return make_power(t.dim(), t.number("a"));
        }
        if (t.head == "indicator") {
            t.allow({"r", "n"});
            return make_indicator(t.dim(), t.number("r"));
        }
        if (t.head == "signsplit") {
            t.allow({"n"});
            return make_sign_split(t.dim());
        }
        if (t.head == "truncpower") {
            t.allow({"a", "r", "n"});
            return make_truncated_power(t.dim(), t.number("a"), t.number("r"));
        }
        if (t.head == "annularpower") {
            t.allow({"a", "lo", "hi", "n"});
            return make_annular_power(t.dim(), t.number("a"), t.number("lo"), t.number("hi"));
        }
        if (t.head == "log") {
            t.allow({"s", "n"});
            return make_log(t.dim(), t.number("s", 1.0));
        }
        if (t.head == "gaussian") {
            t.allow({"s", "n"});
            return fam::gaussian_full(t.dim(), t.number("s", 1.0));
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown function '" + t.head + "'; expected " + kFunctionGrammar);
}

inline OperatorSpec parse_operator(const std::string& text) {
    const SpecTokens t = tokenize_spec(text);
    try {
        if (t.head == "hardy1d") {
            t.allow({});
            return OperatorSpec::hardy_1d();
        }
        if (t.head == "hardynd") {
            t.allow({"n"});
            return OperatorSpec::hardy_nd(t.dim());
        }
        if (t.head == "uphi") {
            t.allow({"weight", "n"});
            auto it = t.kv.find("weight");
            const std::string w = it == t.kv.end() ? "constant" : it->second;
            return OperatorSpec::u_phi(parse_weight(w), t.dim());
        }
        if (t.head == "rl") {
            t.allow({"beta"});
            return OperatorSpec::riemann_liouville(t.number("beta"));
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown operator '" + t.head + "'; expected " + kOperatorGrammar);
}

inline SpaceSpec parse_space(const std::string& text) {
    const SpecTokens t = tokenize_spec(text);
    try {
        if (t.head == "Lp") {
            t.allow({"p", "n"});
            return SpaceSpec::lp(t.number("p"), t.dim());
        }
        if (t.head == "weakLp") {
            t.allow({"p", "n"});
            return SpaceSpec::weak_lp(t.number("p"), t.dim());
        }
        if (t.head == "BMO") {
            t.allow({"n"});
            return SpaceSpec::bmo(t.dim());
        }
        if (t.head == "BLO") {
            t.allow({"n"});
            return SpaceSpec::blo(t.dim());
        }
        if (t.head == "Lip") {
            t.allow({"beta", "n"});
            return SpaceSpec::lip(t.number("beta"), t.dim());
        }
        if (t.head == "campanato") {
            t.allow({"alpha", "p", "n"});
            return SpaceSpec::campanato(t.number("alpha"), t.number("p", 1.0), t.dim());
        }
        if (t.head == "campanato_star") {
            t.allow({"alpha", "p", "n"});
            return SpaceSpec::campanato_star(t.number("alpha"), t.number("p", 1.0), t.dim());
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown space '" + t.head + "'; expected " + kSpaceGrammar);
}

inline json estimate_to_json(const Estimate& e) {
    return {{"value", number_to_json(e.value)},
            {"error", number_to_json(e.error)},
            {"evaluations", e.evaluations},
            {"converged", e.converged},
            {"diverging", e.diverging}};
}

inline json seminorm_to_json(const SeminormResult& r) {
    json j;
    j["value"] = number_to_json(r.value);
    if (r.argmax_cube) j["argmax_cube"] = {{"center", r.argmax_cube->center}, {"side", r.argmax_cube->side}};
    json prof = json::array();
    for (auto [side, v] : r.per_scale_profile) prof.push_back({number_to_json(side), number_to_json(v)});
    j["per_scale_profile"] = prof;
    json d = json::object();
    for (const auto& [k, v] : r.diagnostics) d[k] = number_to_json(v);
    j["diagnostics"] = d;
    return j;
}

}  // namespace hardy
