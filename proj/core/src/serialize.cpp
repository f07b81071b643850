#include "modent/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace modent {

using nlohmann::json;

namespace {

json pattern_json(const ModularPattern& p) {
    return json{{"moduli", p.moduli},
                {"sites_per_modulus", p.sites_per_modulus},
                {"end_bond", p.end_bond},
                {"inter_modulus", p.inter_modulus}};
}

ModularPattern pattern_from(const json& j) {
    return ModularPattern{j.at("moduli").get<int>(), j.at("sites_per_modulus").get<int>(),
                          j.at("end_bond").get<double>(), j.at("inter_modulus").get<double>()};
}

json spec_json(const ChainSpec& spec) {
    if (spec.is_pattern()) {
        json j = pattern_json(spec.modular());
        j["form"] = "pattern";
        return j;
    }
    const auto v = spec.couplings_list().values();
    return json{{"form", "explicit"}, {"couplings", std::vector<double>(v.begin(), v.end())}};
}

ChainSpec spec_from(const json& j) {
    const std::string form = j.at("form").get<std::string>();
    if (form == "pattern") {
        return ChainSpec::pattern(pattern_from(j));
    }
    if (form == "explicit") {
        return ChainSpec::explicit_couplings(j.at("couplings").get<std::vector<double>>());
    }
    throw InvalidSpec("unknown chain spec form '" + form + "'");
}

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidSpec(std::string("malformed JSON: ") + e.what());
    }
}

void expect_schema(const json& j, const char* schema) {
    if (!j.contains("schema") || j.at("schema").get<std::string>() != schema) {
        throw InvalidSpec(std::string("expected document schema ") + schema);
    }
}

json row_json(const SweepRow& r) {
    return json{{"axis_value", r.axis_value},         {"pattern", pattern_json(r.pattern)},
                {"c_end", r.c_end},                   {"c_single_modulus", r.c_single_modulus},
                {"c_nn_end", r.c_nn_end},             {"sqrt_tau_res", r.sqrt_tau_res},
                {"gap", r.gap},                       {"degenerate", r.degenerate},
                {"c_first_modulus", r.c_first_modulus}};
}

SweepRow row_from(const json& j) {
    SweepRow r;
    r.axis_value = j.at("axis_value").get<double>();
    r.pattern = pattern_from(j.at("pattern"));
    r.c_end = j.at("c_end").get<double>();
    r.c_single_modulus = j.at("c_single_modulus").get<double>();
    r.c_nn_end = j.at("c_nn_end").get<double>();
    r.sqrt_tau_res = j.at("sqrt_tau_res").get<double>();
    r.gap = j.at("gap").get<double>();
    r.degenerate = j.at("degenerate").get<bool>();
    r.c_first_modulus = j.at("c_first_modulus").get<double>();
    return r;
}

}  // namespace

std::string format_number(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_concurrence(double c) { return format_number(std::abs(c) < kConcurrenceZero ? 0.0 : c); }

std::string to_json(const EntanglementReport& r) {
    const json j{
        {"schema", kReportSchema},
        {"spec", spec_json(r.spec)},
        {"couplings", r.couplings},
        {"sites", r.sites},
        {"end_to_end_concurrence", r.end_to_end_concurrence},
        {"pairwise_from_first", r.pairwise_from_first},
        {"tangle_site", r.tangle_site.index},
        {"one_tangle", r.one_tangle},
        {"residual_tangle", r.residual_tangle},
        {"sqrt_residual_tangle", r.sqrt_residual_tangle},
        {"gap", r.gap},
        {"ground_energy", r.ground_energy},
        {"degenerate", r.degenerate},
        {"zero_mode_count", r.zero_mode_count},
        {"mirror_symmetric", r.mirror_symmetric},
        {"metadata",
         {{"solver", r.metadata.solver},
          {"spin_convention", r.metadata.spin_convention},
          {"hamiltonian", r.metadata.hamiltonian},
          {"hopping", r.metadata.hopping},
          {"clamp_tolerance", r.metadata.clamp_tolerance},
          {"concurrence_zero", r.metadata.concurrence_zero},
          {"version", r.metadata.version}}},
    };
    return j.dump(2);
}

EntanglementReport report_from_json(std::string_view text) {
    const json j = parse(text);
    expect_schema(j, kReportSchema);
    try {
        EntanglementReport r;
        r.spec = spec_from(j.at("spec"));
        r.couplings = j.at("couplings").get<std::vector<double>>();
        r.sites = j.at("sites").get<std::size_t>();
        r.end_to_end_concurrence = j.at("end_to_end_concurrence").get<double>();
        r.pairwise_from_first = j.at("pairwise_from_first").get<std::vector<double>>();
        r.tangle_site = Site{j.at("tangle_site").get<std::size_t>()};
        r.one_tangle = j.at("one_tangle").get<double>();
        r.residual_tangle = j.at("residual_tangle").get<double>();
        r.sqrt_residual_tangle = j.at("sqrt_residual_tangle").get<double>();
        r.gap = j.at("gap").get<double>();
        r.ground_energy = j.at("ground_energy").get<double>();
        r.degenerate = j.at("degenerate").get<bool>();
        r.zero_mode_count = j.at("zero_mode_count").get<int>();
        r.mirror_symmetric = j.at("mirror_symmetric").get<bool>();
        const json& m = j.at("metadata");
        r.metadata.solver = m.at("solver").get<std::string>();
        r.metadata.spin_convention = m.at("spin_convention").get<std::string>();
        r.metadata.hamiltonian = m.at("hamiltonian").get<std::string>();
        r.metadata.hopping = m.at("hopping").get<std::string>();
        r.metadata.clamp_tolerance = m.at("clamp_tolerance").get<double>();
        r.metadata.concurrence_zero = m.at("concurrence_zero").get<double>();
        r.metadata.version = m.at("version").get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw InvalidSpec(std::string("report document: ") + e.what());
    }
}

std::string report_csv_header() {
    return "sites,C_end,one_tangle,tau_res,sqrt_tau_res,gap,ground_energy,degenerate,zero_modes,mirror_symmetric";
}

std::string to_csv_row(const EntanglementReport& r) {
    std::ostringstream out;
    out << r.sites << ',' << format_concurrence(r.end_to_end_concurrence) << ',' << format_number(r.one_tangle)
        << ',' << format_number(r.residual_tangle) << ',' << format_number(r.sqrt_residual_tangle) << ','
        << format_number(r.gap) << ',' << format_number(r.ground_energy) << ',' << (r.degenerate ? 1 : 0) << ','
        << r.zero_mode_count << ',' << (r.mirror_symmetric ? 1 : 0);
    return out.str();
}

std::string to_json(const SweepTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back(row_json(r));
    }
    json params = json::object();
    for (const auto& [k, v] : t.provenance.parameters) {
        params[k] = v;
    }
    const json j{{"schema", kSweepSchema},
                 {"axis", t.axis},
                 {"rows", rows},
                 {"provenance",
                  {{"operation", t.provenance.operation},
                   {"base", pattern_json(t.provenance.base)},
                   {"parameters", params},
                   {"notes", t.provenance.notes},
                   {"version", t.provenance.version}}}};
    return j.dump(2);
}

SweepTable sweep_from_json(std::string_view text) {
    const json j = parse(text);
    expect_schema(j, kSweepSchema);
    try {
        SweepTable t;
        t.axis = j.at("axis").get<std::string>();
        for (const auto& r : j.at("rows")) {
            t.rows.push_back(row_from(r));
        }
        const json& p = j.at("provenance");
        t.provenance.operation = p.at("operation").get<std::string>();
        t.provenance.base = pattern_from(p.at("base"));
        for (const auto& [k, v] : p.at("parameters").items()) {
            t.provenance.parameters.emplace_back(k, v.get<double>());
        }
        t.provenance.notes = p.at("notes").get<std::vector<std::string>>();
        t.provenance.version = p.at("version").get<std::string>();
        return t;
    } catch (const json::exception& e) {
        throw InvalidSpec(std::string("sweep document: ") + e.what());
    }
}

std::string sweep_csv_header() {
    return "axis_value,N,n,lambda,lambda_I,C_end,C_single_modulus,C_nn_end,sqrt_tau_res,gap,degenerate,"
           "C_first_modulus";
}

std::string to_csv(const SweepTable& t, const std::vector<std::string>& comments) {
    std::ostringstream out;
    for (const auto& c : comments) {
        out << "# " << c << '\n';
    }
    for (const auto& note : t.provenance.notes) {
        out << "# note: " << note << '\n';
    }
    out << sweep_csv_header() << '\n' << sweep_csv_rows(t);
    return out.str();
}

std::string sweep_csv_rows(const SweepTable& t) {
    std::ostringstream out;
    for (const auto& r : t.rows) {
        out << format_number(r.axis_value) << ',' << r.pattern.moduli << ',' << r.pattern.sites_per_modulus << ','
            << format_number(r.pattern.end_bond) << ',' << format_number(r.pattern.inter_modulus) << ','
            << format_concurrence(r.c_end) << ',' << format_concurrence(r.c_single_modulus) << ','
            << format_concurrence(r.c_nn_end) << ',' << format_number(r.sqrt_tau_res) << ','
            << format_number(r.gap) << ',' << (r.degenerate ? 1 : 0) << ',' << format_concurrence(r.c_first_modulus)
            << '\n';
    }
    return out.str();
}

std::string to_json(const ThresholdResult& r, const ModularPattern& base) {
    const json j{{"schema", kThresholdSchema},
                 {"base", pattern_json(base)},
                 {"outcome", to_string(r.outcome)},
                 {"threshold", r.threshold},
                 {"lower", r.lower},
                 {"upper", r.upper},
                 {"tolerance", r.tolerance},
                 {"ratio", r.ratio},
                 {"converged", r.converged},
                 {"verified", r.verified},
                 {"evaluations", r.evaluations},
                 {"notes", r.notes},
                 {"version", version()}};
    return j.dump(2);
}

std::string threshold_csv_header() {
    return "N,n,lambda,outcome,lambda_I_th,lower,upper,ratio,converged,verified,evaluations";
}

std::string to_csv_row(const ThresholdResult& r, const ModularPattern& base) {
    std::ostringstream out;
    out << base.moduli << ',' << base.sites_per_modulus << ',' << format_number(base.end_bond) << ','
        << to_string(r.outcome) << ',' << format_number(r.threshold) << ',' << format_number(r.lower) << ','
        << format_number(r.upper) << ',' << format_number(r.ratio) << ',' << (r.converged ? 1 : 0) << ','
        << (r.verified ? 1 : 0) << ',' << r.evaluations;
    return out.str();
}

std::string spec_to_json(const ChainSpec& spec) { return spec_json(spec).dump(2); }

ChainSpec spec_from_json(std::string_view text) {
    try {
        return spec_from(parse(text));
    } catch (const json::exception& e) {
        throw InvalidSpec(std::string("chain spec document: ") + e.what());
    }
}

}  // namespace modent
