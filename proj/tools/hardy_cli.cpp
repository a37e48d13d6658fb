// hardy: certify sharp constants of Hardy-type averaging operators.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardy/report.hpp"

using namespace hardy;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects k=v, got '" + item + "'");
        const std::string k = item.substr(0, eq), v = item.substr(eq + 1);
        try {
            std::size_t used = 0;
            const double x = v == "inf" ? kInf : std::stod(v, &used);
            if (v != "inf" && used != v.size()) throw std::invalid_argument(v);
            out[k] = x;
        } catch (const std::logic_error&) {
            throw UsageError("--param " + k + ": '" + v + "' is not a number");
        }
    }
    return out;
}

Point parse_point(const std::string& text) {
    Point x;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            std::size_t used = 0;
            x.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw UsageError("--x: '" + tok + "' is not a number");
        }
    }
    if (x.empty()) throw UsageError("--x needs at least one coordinate");
    return x;
}

void load_config_file(const std::string& path, RunConfig& rc) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }
    config_from_json(j, rc);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

struct SweepGrid {
    std::string key;
    std::vector<double> values;
};

SweepGrid parse_grid(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param-grid expects k=a:b:steps");
    SweepGrid g{text.substr(0, eq), {}};
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(eq + 1));
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("--param-grid expects k=a:b:steps");
    double a = 0, b = 0;
    long steps = 0;
    try {
        a = std::stod(parts[0]);
        b = std::stod(parts[1]);
        steps = std::stol(parts[2]);
    } catch (const std::logic_error&) {
        throw UsageError("--param-grid: malformed numbers in '" + text + "'");
    }
    if (steps < 1) throw UsageError("--param-grid: steps must be >= 1");
    for (long i = 0; i < steps; ++i) g.values.push_back(steps == 1 ? a : a + (b - a) * i / (steps - 1));
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical certificates for sharp constants of Hardy-type averaging operators"};
    app.require_subcommand(1);
    app.footer(std::string("Function specs: ") + kFunctionGrammar + "\nOperator specs: " + kOperatorGrammar +
               "\nSpace specs: " + kSpaceGrammar + "\nThe default seed is read from HARDY_SEED when --seed is absent.");

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "Run certificates and write a report");
    bool all = false;
    std::string claim_id, weight = "constant", out_path, format, config_path;
    std::vector<std::string> params;
    std::uint64_t seed = 0;
    bool print_config = false;
    certify_cmd->add_flag("--all", all, "Run the default selection (one certificate per claim)");
    certify_cmd->add_option("--claim", claim_id, "Claim id, e.g. WeakType");
    certify_cmd->add_option("--param", params, "Claim parameter k=v (repeatable)");
    certify_cmd->add_option("--weight", weight, "Weight for UPhi claims: constant | polar:<k> | rl:<beta>");
    certify_cmd->add_option("--seed", seed, "Suite seed")->envname("HARDY_SEED");
    certify_cmd->add_option("--out", out_path, "Output path (stdout when absent)");
    certify_cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    certify_cmd->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    certify_cmd->add_flag("--print-config", print_config, "Print the resolved configuration and exit");

    // apply
    auto* apply_cmd = app.add_subcommand("apply", "Evaluate an operator on a function at a point");
    std::string op_spec, fn_spec, x_text;
    apply_cmd->add_option("--op", op_spec, kOperatorGrammar)->required();
    apply_cmd->add_option("--fn", fn_spec, kFunctionGrammar)->required();
    apply_cmd->add_option("--x", x_text, "Point, comma separated")->required();

    // norm
    auto* norm_cmd = app.add_subcommand("norm", "Norm or seminorm of a function");
    std::string space_spec;
    norm_cmd->add_option("--space", space_spec, kSpaceGrammar)->required();
    norm_cmd->add_option("--fn", fn_spec, kFunctionGrammar)->required();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Certify a claim over a one-parameter grid, CSV output");
    std::string grid_text;
    bool claimed_only = false;
    int family_size = 0;
    sweep_cmd->add_option("--claim", claim_id, "Claim id")->required();
    sweep_cmd->add_option("--param-grid", grid_text, "k=a:b:steps (inclusive, evenly spaced)")->required();
    sweep_cmd->add_option("--param", params, "Fixed claim parameter k=v (repeatable)");
    sweep_cmd->add_option("--weight", weight, "Weight for UPhi claims");
    sweep_cmd->add_option("--seed", seed, "Suite seed")->envname("HARDY_SEED");
    sweep_cmd->add_option("--out", out_path, "Output path (stdout when absent)");
    sweep_cmd->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sweep_cmd->add_option("--family-size", family_size, "Override every family size")->check(CLI::PositiveNumber);
    sweep_cmd->add_flag("--claimed-only", claimed_only, "Only tabulate the closed-form constant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*certify_cmd) {
            RunConfig rc;
            if (!config_path.empty()) load_config_file(config_path, rc);
            if (certify_cmd->count("--seed")) rc.seed = seed;
            if (!out_path.empty()) rc.output_path = out_path;
            if (!format.empty()) rc.output_format = format;
            rc.certify.seed = rc.seed;
            if (all && !claim_id.empty()) throw UsageError("--all and --claim are mutually exclusive");
            if (!params.empty() && claim_id.empty()) throw UsageError("--param requires --claim");
            if (all) rc.selection = default_selection();
            else if (!claim_id.empty())
                rc.selection = {make_claim(parse_claim_id(claim_id), parse_params(params), weight)};
            else if (rc.selection.empty() && !print_config)
                throw UsageError("certify needs --all, --claim or a config with a selection");
            if (print_config) {
                std::cout << config_to_json(rc).dump(2) << '\n';
                return kExitPass;
            }
            Report report{rc, run_suite(rc.selection, rc.certify)};
            bool ok = true;
            for (const auto& c : report.certificates) {
                ok = ok && c.passed();
                std::cerr << verdict_name(c) << "  " << c.claim.key() << "  claimed=" << c.claimed_constant
                          << " lower=" << c.lower_bound_measured << " upper_worst=" << c.worst_upper_ratio << '\n';
                if (auto it = c.notes.find("error"); it != c.notes.end()) std::cerr << "      error: " << it->second << '\n';
            }
            write_output(rc.output_path,
                         rc.output_format == "csv" ? report_to_csv(report) : report_to_json(report).dump(2) + "\n");
            return ok ? kExitPass : kExitFail;
        }
        if (*apply_cmd) {
            const OperatorSpec T = parse_operator(op_spec);
            const TestFunction f = parse_function(fn_spec);
            const Point x = parse_point(x_text);
            if (static_cast<int>(x.size()) != f.dim || T.dim() != f.dim)
                throw UsageError("dimension mismatch between --op, --fn and --x");
            std::cout << estimate_to_json(apply(T, f, x)).dump() << '\n';
            return kExitPass;
        }
        if (*norm_cmd) {
            const SpaceSpec space = parse_space(space_spec);
            const TestFunction f = parse_function(fn_spec);
            if (space.n != f.dim) throw UsageError("dimension mismatch between --space and --fn");
            json j;
            if (auto* lp = std::get_if<space::Lp>(&space.tag)) j = estimate_to_json(lp_norm(f, lp->p));
            else if (auto* w = std::get_if<space::WeakLp>(&space.tag)) j = seminorm_to_json(weak_lp_quasinorm(f, w->p));
            else j = seminorm_to_json(seminorm(f, space));
            j["space"] = space.label();
            j["function"] = f.label;
            std::cout << j.dump() << '\n';
            return kExitPass;
        }
        if (*sweep_cmd) {
            RunConfig rc;
            if (!config_path.empty()) load_config_file(config_path, rc);
            if (sweep_cmd->count("--seed")) rc.seed = seed;
            rc.certify.seed = rc.seed;
            if (family_size > 0)
                rc.certify.weak_family_size = rc.certify.lp_family_size = rc.certify.campanato_family_size = family_size;
            const ClaimId id = parse_claim_id(claim_id);
            const SweepGrid grid = parse_grid(grid_text);
            const auto fixed = parse_params(params);
            if (fixed.count(grid.key)) throw UsageError("--param and --param-grid both set " + grid.key);
            std::vector<Claim> claims;
            for (double v : grid.values) {
                auto p = fixed;
                p[grid.key] = v;
                claims.push_back(make_claim(id, p, weight));
            }
            std::ostringstream os;
            os << "param,claimed,lower,upper_worst,verdict\n";
            bool ok = true;
            SuiteCache cache;
            for (std::size_t i = 0; i < claims.size(); ++i) {
                const double claimed = sharp_constant(claims[i]);
                os << csv_number(grid.values[i]) << ',' << csv_number(claimed);
                if (claimed_only) {
                    os << ",,,SKIPPED\n";
                    continue;
                }
                const Certificate c = certify(claims[i], rc.certify, &cache);
                ok = ok && c.passed();
                os << ',' << csv_number(c.lower_bound_measured) << ',' << csv_number(c.worst_upper_ratio) << ','
                   << verdict_name(c) << '\n';
                std::cerr << verdict_name(c) << "  " << c.claim.key() << '\n';
            }
            write_output(out_path, os.str());
            return ok ? kExitPass : kExitFail;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ClaimError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
