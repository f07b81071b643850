#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "modent/fermion.hpp"
#include "modent/oracle.hpp"
#include "modent/serialize.hpp"
#include "modent/sweep.hpp"
#include "recipes.hpp"

namespace modent::cli {

namespace {

using nlohmann::json;

// TOML via CLI11, or a JSON object whose nested objects are subcommand sections.
class ConfigFile : public CLI::ConfigTOML {
  public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        const std::string text(std::istreambuf_iterator<char>(input), {});
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first == std::string::npos || text[first] != '{') {
            std::istringstream toml(text);
            return CLI::ConfigTOML::from_config(toml);
        }
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw CLI::ConversionError("config", std::string("malformed JSON config: ") + e.what());
        }
        std::vector<CLI::ConfigItem> items;
        collect(doc, {}, items);
        return items;
    }

  private:
    static std::string scalar(const json& v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        return v.dump();
    }

    static void collect(const json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
                auto nested = parents;
                nested.push_back(key);
                collect(value, nested, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) {
                    item.inputs.push_back(scalar(v));
                }
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

struct RunConfig {
    std::string subcommand;

    std::optional<int> moduli;
    std::optional<int> sites;
    std::optional<double> lambda;
    std::optional<double> lambda_i;
    std::vector<double> couplings;

    std::string format;
    std::string output;
    unsigned threads = 1;

    // report
    std::size_t tangle_site = 1;
    std::string solver = "free-fermion";
    // sweep-lambda-i
    double grid_from = 0.0;
    double grid_to = 2.0;
    double grid_step = 0.01;
    std::vector<double> grid;
    // sweep-moduli, gap-scan
    int max_moduli = 20;
    double convergence_tol = 1e-4;
    int min_moduli = 1;
    std::vector<std::size_t> square_root_sites;
    // threshold
    ThresholdOptions threshold;
    // oracle-check
    double energy_tol = 1e-9;
    double state_tol = 1e-8;
    std::size_t max_sites = 12;
    // fig
    std::string figure;
};

struct Output {
    std::string content;
    std::string default_name;
    int code = kOk;
};

json resolved_config(const RunConfig& c) {
    json chain = json::object();
    if (!c.couplings.empty()) {
        chain["couplings"] = c.couplings;
    }
    if (c.moduli) {
        chain["moduli"] = *c.moduli;
    }
    if (c.sites) {
        chain["sites"] = *c.sites;
    }
    if (c.lambda) {
        chain["lambda"] = *c.lambda;
    }
    if (c.lambda_i) {
        chain["lambda_I"] = *c.lambda_i;
    }

    json options = json::object();
    const std::string& s = c.subcommand;
    if (s == "report") {
        options = {{"tangle_site", c.tangle_site}, {"solver", c.solver}};
    } else if (s == "sweep-lambda-i") {
        if (c.grid.empty()) {
            options = {{"from", c.grid_from}, {"to", c.grid_to}, {"step", c.grid_step}};
        } else {
            options = {{"grid", c.grid}};
        }
    } else if (s == "sweep-moduli") {
        options = {{"max_moduli", c.max_moduli}, {"convergence_tol", c.convergence_tol}};
    } else if (s == "gap-scan") {
        options = {{"max_moduli", c.max_moduli}, {"min_moduli", c.min_moduli}, {"square_root_sites", c.square_root_sites}};
    } else if (s == "threshold") {
        options = {{"step", c.threshold.step},
                   {"max_lambda_i", c.threshold.max_inter_modulus},
                   {"concurrence_tol", c.threshold.concurrence_tolerance},
                   {"bracket_width", c.threshold.bracket_width}};
    } else if (s == "oracle-check") {
        options = {{"energy_tol", c.energy_tol}, {"state_tol", c.state_tol}, {"max_sites", c.max_sites}};
    } else if (s == "fig") {
        options = {{"name", c.figure}};
    }
    return json{{"subcommand", s},     {"chain", chain},       {"options", options},
                {"format", c.format},  {"threads", c.threads}, {"version", version()}};
}

std::string config_comment(const RunConfig& c) { return "config: " + resolved_config(c).dump(); }

std::string envelope(const RunConfig& c, const json& result) {
    return json{{"config", resolved_config(c)}, {"result", result}}.dump(2) + '\n';
}

bool has_pattern_flags(const RunConfig& c) { return c.moduli || c.sites || c.lambda || c.lambda_i; }

ChainSpec chain_spec(const RunConfig& c) {
    if (!c.couplings.empty()) {
        if (has_pattern_flags(c)) {
            throw InvalidSpec("--couplings cannot be combined with --moduli/--sites/--lambda/--lambda-i");
        }
        return ChainSpec::explicit_couplings(c.couplings);
    }
    if (!c.sites || !c.lambda) {
        throw InvalidSpec("a chain needs --sites and --lambda (with optional --moduli, --lambda-i) or --couplings");
    }
    return ChainSpec::pattern(c.moduli.value_or(1), *c.sites, *c.lambda, c.lambda_i.value_or(0.0));
}

ModularPattern pattern_base(const RunConfig& c) {
    if (!c.couplings.empty()) {
        throw InvalidSpec(c.subcommand + " works on modular patterns; --couplings is not accepted");
    }
    const ChainSpec spec = chain_spec(c);
    return spec.modular();
}

void warn_if_asymmetric(const ChainSpec& spec, std::ostream& err) {
    const MirrorCheck m = validate_mirror_symmetry(build_couplings(spec));
    if (!m.symmetric) {
        err << json{{"warning", "mirror_asymmetry"}, {"message", m.diagnostic}}.dump() << '\n';
    }
}

Output run_report(const RunConfig& c, std::ostream& err) {
    const ChainSpec spec = chain_spec(c);
    warn_if_asymmetric(spec, err);
    const ReportOptions options{Site{c.tangle_site}, c.threads};
    const EntanglementReport r = c.solver == "oracle" ? ed_report(spec, options) : report(spec, options);
    if (c.format == "json") {
        return {envelope(c, json::parse(to_json(r))), "report.json"};
    }
    return {"# " + config_comment(c) + '\n' + report_csv_header() + '\n' + to_csv_row(r) + '\n', "report.csv"};
}

Output run_spectrum(const RunConfig& c, std::ostream& err) {
    const ChainSpec spec = chain_spec(c);
    warn_if_asymmetric(spec, err);
    const ModeBasis m = solve(build_couplings(spec));
    if (c.format == "json") {
        const auto& e = m.energies();
        return {envelope(c, {{"energies", std::vector<double>(e.begin(), e.end())},
                             {"zero_mode_count", m.zero_mode_count()},
                             {"gap", energy_gap(m)},
                             {"ground_energy", ground_energy(m)}}),
                "spectrum.json"};
    }
    std::ostringstream out;
    out << "# " << config_comment(c) << '\n'
        << "# zero_mode_count: " << m.zero_mode_count() << '\n'
        << "k,energy,occupation\n";
    for (std::size_t k = 0; k < m.energies().size(); ++k) {
        const double e = m.energies()[k];
        out << k + 1 << ',' << format_number(e) << ',' << (e < 0.0 ? "1" : e == 0.0 ? "0.5" : "0") << '\n';
    }
    return {out.str(), "spectrum.csv"};
}

Output run_sweep_lambda_i(const RunConfig& c, std::ostream& err) {
    if (c.lambda_i) {
        err << json{{"warning", "ignored_option"}, {"message", "--lambda-i is the scan axis and is ignored"}}.dump()
            << '\n';
    }
    const auto grid = c.grid.empty() ? linear_grid(c.grid_from, c.grid_to, c.grid_step) : c.grid;
    const SweepTable t = sweep_lambda_i(pattern_base(c), grid, {c.threads});
    if (c.format == "json") {
        return {envelope(c, json::parse(to_json(t))), "sweep-lambda-i.json"};
    }
    return {to_csv(t, {config_comment(c)}), "sweep-lambda-i.csv"};
}

json asymptote_json(const AsymptoteEstimate& a) {
    return {{"value", a.value}, {"last_change", a.last_change}, {"tolerance", a.tolerance}, {"converged", a.converged}};
}

Output run_sweep_moduli(const RunConfig& c, std::ostream&) {
    const ModuliSweep s = sweep_moduli(pattern_base(c), c.max_moduli, c.convergence_tol, {c.threads});
    if (c.format == "json") {
        return {envelope(c, {{"table", json::parse(to_json(s.table))}, {"asymptote", asymptote_json(s.asymptote)}}),
                "sweep-moduli.json"};
    }
    const auto& a = s.asymptote;
    const std::string line = "asymptote: value=" + format_number(a.value) + " last_change=" +
                             format_number(a.last_change) + " converged=" + (a.converged ? "true" : "false");
    return {to_csv(s.table, {config_comment(c), line}), "sweep-moduli.csv"};
}

Output run_gap_scan(const RunConfig& c, std::ostream&) {
    const ModularPattern base = pattern_base(c);
    const ModuliSweep s = sweep_moduli(base, c.max_moduli, c.convergence_tol, {c.threads});
    const GapFit fit = fit_log_gap(s.table, static_cast<double>(c.min_moduli));
    std::vector<GapSquareRootCheck> checks;
    for (std::size_t total : c.square_root_sites) {
        checks.push_back(gap_square_root_check(base, total));
    }
    if (c.format == "json") {
        json sq = json::array();
        for (const auto& k : checks) {
            sq.push_back({{"total_sites", k.total_sites},
                          {"sites_per_modulus", k.sites_per_modulus},
                          {"log_gap_small", k.log_gap_small},
                          {"log_gap_large", k.log_gap_large},
                          {"relative_deviation", k.relative_deviation}});
        }
        return {envelope(c, {{"table", json::parse(to_json(s.table))},
                             {"fit",
                              {{"slope", fit.slope},
                               {"intercept", fit.intercept},
                               {"r_squared", fit.r_squared},
                               {"points", fit.points}}},
                             {"square_root", sq}}),
                "gap-scan.json"};
    }
    std::vector<std::string> comments{config_comment(c),
                                      "fit log(gap) = intercept + slope * N: slope=" + format_number(fit.slope) +
                                          " intercept=" + format_number(fit.intercept) +
                                          " r_squared=" + format_number(fit.r_squared) +
                                          " points=" + std::to_string(fit.points)};
    for (const auto& k : checks) {
        comments.push_back("square root check at " + std::to_string(k.total_sites) + " sites, n=" +
                           std::to_string(k.sites_per_modulus) + " vs 2n: log_gap_small=" +
                           format_number(k.log_gap_small) + " log_gap_large=" + format_number(k.log_gap_large) +
                           " relative_deviation=" + format_number(k.relative_deviation));
    }
    return {to_csv(s.table, comments), "gap-scan.csv"};
}

Output run_threshold(const RunConfig& c, std::ostream&) {
    const ModularPattern base = pattern_base(c);
    const ThresholdResult r = find_threshold(base, c.threshold);
    if (c.format == "json") {
        return {envelope(c, json::parse(to_json(r, base))), "threshold.json"};
    }
    std::ostringstream out;
    out << "# " << config_comment(c) << '\n';
    for (const auto& note : r.notes) {
        out << "# note: " << note << '\n';
    }
    out << threshold_csv_header() << '\n' << to_csv_row(r, base) << '\n';
    return {out.str(), "threshold.csv"};
}

Output run_oracle_check(const RunConfig& c, std::ostream&) {
    std::vector<OracleComparison> results;
    for (const auto& p : oracle_grid()) {
        if (p.total_sites() <= c.max_sites) {
            results.push_back(compare_with_oracle(ChainSpec::pattern(p)));
        }
    }
    const auto passed = static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [&](const auto& r) {
        return r.passed(c.energy_tol, c.state_tol);
    }));
    const int code = passed == results.size() ? kOk : kOracleMismatch;

    if (c.format == "json") {
        json rows = json::array();
        for (const auto& r : results) {
            const auto& p = r.spec.modular();
            rows.push_back({{"N", p.moduli},
                            {"n", p.sites_per_modulus},
                            {"lambda", p.end_bond},
                            {"lambda_I", p.inter_modulus},
                            {"degenerate", r.degenerate},
                            {"ground_energy_diff", r.ground_energy_diff},
                            {"gap_diff", r.gap_diff},
                            {"rdm_diff", r.rdm_diff},
                            {"concurrence_diff", r.concurrence_diff},
                            {"residual_tangle_diff", r.residual_tangle_diff},
                            {"pass", r.passed(c.energy_tol, c.state_tol)}});
        }
        return {envelope(c, {{"rows", rows}, {"passed", passed}, {"total", results.size()}}), "oracle-check.json", code};
    }
    std::ostringstream out;
    out << "# " << config_comment(c) << '\n'
        << "N,n,lambda,lambda_I,sites,degenerate,ground_energy_diff,gap_diff,rdm_diff,concurrence_diff,"
           "residual_tangle_diff,status\n";
    for (const auto& r : results) {
        const auto& p = r.spec.modular();
        out << p.moduli << ',' << p.sites_per_modulus << ',' << format_number(p.end_bond) << ','
            << format_number(p.inter_modulus) << ',' << r.sites << ',' << (r.degenerate ? 1 : 0) << ','
            << format_number(r.ground_energy_diff) << ',' << format_number(r.gap_diff) << ','
            << format_number(r.rdm_diff) << ',' << format_number(r.concurrence_diff) << ','
            << format_number(r.residual_tangle_diff) << ',' << (r.passed(c.energy_tol, c.state_tol) ? "PASS" : "FAIL")
            << '\n';
    }
    out << "# summary: " << passed << "/" << results.size() << " passed\n";
    return {out.str(), "oracle-check.csv", code};
}

Output run_fig(const RunConfig& c, std::ostream&) {
    if (c.format == "json") {
        throw InvalidSpec("fig recipes emit CSV only");
    }
    return {figure_csv(c.figure, c.threads, {config_comment(c)}), c.figure + ".csv"};
}

void emit(const Output& o, const RunConfig& c, std::ostream& out) {
    std::filesystem::path path;
    if (!c.output.empty()) {
        path = c.output;
    } else if (const char* dir = std::getenv("MODENT_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
        path = std::filesystem::path(dir) / o.default_name;
    } else {
        out << o.content;
        return;
    }
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream file(path, std::ios::binary);
    file << o.content;
    if (!file) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

void error_line(std::ostream& err, const char* kind, const std::string& message, int code) {
    err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

void add_chain_options(CLI::App& app, RunConfig& c) {
    app.add_option("--moduli,-N", c.moduli, "number of moduli N")->check(CLI::PositiveNumber);
    app.add_option("--sites,-n", c.sites, "sites per modulus n");
    app.add_option("--lambda", c.lambda, "end bond of each modulus");
    app.add_option("--lambda-i", c.lambda_i, "inter-modulus coupling");
    app.add_option("--couplings", c.couplings, "explicit couplings J_{i,i+1}, comma separated")->delimiter(',');
    app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output,-o", c.output, "output file (default: stdout, or $MODENT_OUTPUT_DIR/<name>)");
    app.add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();
}

CLI::App* subcommand(CLI::App& app, const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Ground-state entanglement of modular XX spin chains", "modent-cli"};
    app.config_formatter(std::make_shared<ConfigFile>());
    app.set_config("--config", "", "TOML or JSON file mirroring the flags; flags take precedence");
    app.set_version_flag("--version", version());
    app.require_subcommand(1);
    app.fallthrough();
    add_chain_options(app, c);

    auto* report_cmd = subcommand(app, "report", "entanglement report of one chain");
    report_cmd->add_option("--tangle-site", c.tangle_site, "site for the residual tangle")->capture_default_str();
    report_cmd->add_option("--solver", c.solver, "free-fermion or oracle (exact diagonalization, <= 14 sites)")
        ->check(CLI::IsMember({"free-fermion", "oracle"}))
        ->capture_default_str();

    subcommand(app, "spectrum", "single-particle energies as CSV");

    auto* sweep_i = subcommand(app, "sweep-lambda-i", "scan the inter-modulus coupling");
    sweep_i->add_option("--from", c.grid_from, "first lambda_I")->capture_default_str();
    sweep_i->add_option("--to", c.grid_to, "last lambda_I")->capture_default_str();
    sweep_i->add_option("--step", c.grid_step, "grid step")->capture_default_str();
    sweep_i->add_option("--grid", c.grid, "explicit ascending grid, comma separated")->delimiter(',');

    auto* sweep_n = subcommand(app, "sweep-moduli", "scan the number of moduli N = 1..max");
    sweep_n->add_option("--max-moduli", c.max_moduli, "largest N")->capture_default_str();
    sweep_n->add_option("--convergence-tol", c.convergence_tol, "|C(N) - C(N-1)| for convergence")
        ->capture_default_str();

    auto* gap = subcommand(app, "gap-scan", "gap versus N with an exponential fit");
    gap->add_option("--max-moduli", c.max_moduli, "largest N")->capture_default_str();
    gap->add_option("--min-moduli", c.min_moduli, "smallest N used in the fit")->capture_default_str();
    gap->add_option("--square-root-sites", c.square_root_sites,
                    "total sizes for the n versus 2n comparison, comma separated")
        ->delimiter(',');

    auto* thr = subcommand(app, "threshold", "onset of end-to-end entanglement in lambda_I");
    thr->add_option("--step", c.threshold.step, "coarse scan step")->capture_default_str();
    thr->add_option("--max-lambda-i", c.threshold.max_inter_modulus, "scan limit")->capture_default_str();
    thr->add_option("--concurrence-tol", c.threshold.concurrence_tolerance, "C above this counts as entangled")
        ->capture_default_str();
    thr->add_option("--bracket-width", c.threshold.bracket_width, "bisection stops below this width")
        ->capture_default_str();

    auto* oracle = subcommand(app, "oracle-check", "free fermions versus exact diagonalization on the test grid");
    oracle->add_option("--energy-tol", c.energy_tol, "energy and gap tolerance")->capture_default_str();
    oracle->add_option("--state-tol", c.state_tol, "density matrix, concurrence and tangle tolerance")
        ->capture_default_str();
    oracle->add_option("--max-sites", c.max_sites, "skip grid chains longer than this")
        ->check(CLI::Range(std::size_t{2}, std::size_t{12}))
        ->capture_default_str();

    auto* fig = subcommand(app, "fig", "named figure recipe");
    std::vector<std::string> names;
    for (const auto& f : figures()) {
        names.push_back(f.name);
    }
    fig->add_option("name", c.figure, "figure name")->required()->check(CLI::IsMember(names));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        error_line(err, "invalid_argument", e.what(), kBadArguments);
        return kBadArguments;
    }

    c.subcommand = app.get_subcommands().front()->get_name();
    if (c.format.empty()) {
        c.format = (c.subcommand == "report" || c.subcommand == "threshold") ? "json" : "csv";
    }

    try {
        Output o;
        const std::string& s = c.subcommand;
        if (s == "report") {
            o = run_report(c, err);
        } else if (s == "spectrum") {
            o = run_spectrum(c, err);
        } else if (s == "sweep-lambda-i") {
            o = run_sweep_lambda_i(c, err);
        } else if (s == "sweep-moduli") {
            o = run_sweep_moduli(c, err);
        } else if (s == "gap-scan") {
            o = run_gap_scan(c, err);
        } else if (s == "threshold") {
            o = run_threshold(c, err);
        } else if (s == "oracle-check") {
            o = run_oracle_check(c, err);
        } else {
            o = run_fig(c, err);
        }
        emit(o, c, out);
        if (o.code == kOracleMismatch) {
            error_line(err, "oracle_mismatch", "free-fermion and oracle results disagree beyond tolerance", o.code);
        }
        return o.code;
    } catch (const InvalidSpec& e) {
        error_line(err, "invalid_argument", e.what(), kBadArguments);
        return kBadArguments;
    } catch (const SolverError& e) {
        error_line(err, "solver_failure", e.what(), kSolverFailure);
        return kSolverFailure;
    } catch (const std::exception& e) {
        error_line(err, "failure", e.what(), kSolverFailure);
        return kSolverFailure;
    }
}

}  // namespace modent::cli
