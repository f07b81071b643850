#include "recipes.hpp"

#include <algorithm>
#include <sstream>

#include "modent/serialize.hpp"
#include "modent/sweep.hpp"

namespace modent::cli {

namespace {

// Two-moduli scans over lambda_I at end bond 0.1.
constexpr double kTwoModuliLambda = 0.1;

// Curves of the end-to-end concurrence and gap plots versus N. Only the
// six-site curve at lambda = 0.8, lambda_I = 3.2 is stated outright.
const std::vector<Curve> kModuliCurves = {
    {{1, 2, 0.1, 1.0}, 20},
    {{1, 4, 0.1, 1.0}, 20},
    {{1, 4, 0.5, 2.0}, 20},
    {{1, 6, 0.1, 1.0}, 20},
    {{1, 6, 0.8, 3.2}, 20},
    {{1, 6, 0.5, 0.5}, 20},
    {{1, 8, 0.1, 1.0}, 20},
    {{1, 8, 0.5, 1.0}, 20},
    {{1, 8, 0.1, 0.5}, 20},
};

// Gap versus total size at equal couplings, up to 160 sites.
const std::vector<Curve> kGapInsetCurves = {
    {{1, 2, 0.1, 1.0}, 80},
    {{1, 4, 0.1, 1.0}, 40},
    {{1, 8, 0.1, 1.0}, 20},
};

// Threshold ratio versus N.
const std::vector<ModularPattern> kThresholdCurves = {
    {1, 2, 0.1, 0.0}, {1, 2, 0.5, 0.0}, {1, 2, 1.0, 0.0}, {1, 4, 0.1, 0.0}, {1, 4, 1.0, 0.0},
    {1, 6, 0.1, 0.0}, {1, 6, 0.8, 0.0}, {1, 8, 0.1, 0.0}, {1, 8, 0.5, 0.0},
};

const std::vector<Figure> kFigures = {
    {"fig2a",
     "two moduli of 6 sites, lambda = 0.1: C_end, single-modulus C, C_12 and sqrt(tau_res) versus lambda_I in [0, 2]",
     {"lambda_I grid step 0.01"}},
    {"fig2b",
     "two moduli of 7 sites, lambda = 0.1: the same curves versus lambda_I in (0, 2]",
     {"lambda_I grid 0.01..2 step 0.01"}},
    {"fig3",
     "two moduli: threshold lambda_I versus end bond lambda for n = 2, 4, 6, 8",
     {"lambda grid 0.05..1 step 0.05", "threshold scan step 0.05 up to lambda_I = 8, tol 1e-8, bracket 1e-6"}},
    {"fig4",
     "end-to-end concurrence versus number of moduli N = 1..20",
     {"curves (n, lambda, lambda_I): (2,0.1,1) (4,0.1,1) (4,0.5,2) (6,0.1,1) (6,0.8,3.2) (6,0.5,0.5) (8,0.1,1) "
      "(8,0.5,1) (8,0.1,0.5); only (6,0.8,3.2) is given explicitly"}},
    {"fig5",
     "energy gap versus N for the concurrence curves, plus gap versus total size for n = 2, 4, 8 up to 160 sites",
     {"main curves as fig4", "size curves at lambda = 0.1, lambda_I = 1"}},
    {"fig6",
     "threshold ratio lambda_I/lambda versus N = 2..20",
     {"curves (n, lambda): (2,0.1) (2,0.5) (2,1) (4,0.1) (4,1) (6,0.1) (6,0.8) (8,0.1) (8,0.5)",
      "threshold scan step 0.05 up to lambda_I = 8, tol 1e-8, bracket 1e-6"}},
};

std::string header_block(const std::vector<std::string>& comments, const Figure& f) {
    std::ostringstream out;
    for (const auto& c : comments) {
        out << "# " << c << '\n';
    }
    out << "# figure: " << f.name << ": " << f.description << '\n';
    for (const auto& a : f.assumptions) {
        out << "# assumed: " << a << '\n';
    }
    return out.str();
}

std::string lambda_i_scan(const ModularPattern& base, double first, unsigned threads) {
    const SweepTable t = sweep_lambda_i(base, linear_grid(first, 2.0, 0.01), {threads});
    std::ostringstream out;
    for (const auto& note : t.provenance.notes) {
        out << "# note: " << note << '\n';
    }
    out << sweep_csv_header() << '\n' << sweep_csv_rows(t);
    return out.str();
}

std::string moduli_curves(const std::vector<Curve>& curves, unsigned threads) {
    std::string rows;
    for (const auto& c : curves) {
        rows += sweep_csv_rows(sweep_moduli(c.base, c.max_moduli, 1e-4, {threads}).table);
    }
    return rows;
}

std::string thresholds(const std::vector<ModularPattern>& bases, unsigned threads) {
    std::ostringstream out;
    out << threshold_csv_header() << '\n';
    const auto results = find_thresholds(bases, {}, threads);
    for (std::size_t k = 0; k < bases.size(); ++k) {
        out << to_csv_row(results[k], bases[k]) << '\n';
    }
    return out.str();
}

}  // namespace

const std::vector<Figure>& figures() { return kFigures; }

const Figure& figure(const std::string& name) {
    const auto it = std::find_if(kFigures.begin(), kFigures.end(), [&](const Figure& f) { return f.name == name; });
    if (it == kFigures.end()) {
        throw InvalidSpec("unknown figure '" + name + "'");
    }
    return *it;
}

std::string figure_csv(const std::string& name, unsigned threads, const std::vector<std::string>& comments) {
    const Figure& f = figure(name);
    std::string body;
    if (name == "fig2a") {
        body = lambda_i_scan({2, 6, kTwoModuliLambda, 0.0}, 0.0, threads);
    } else if (name == "fig2b") {
        body = lambda_i_scan({2, 7, kTwoModuliLambda, 0.0}, 0.01, threads);
    } else if (name == "fig3") {
        std::vector<ModularPattern> bases;
        for (int n : {2, 4, 6, 8}) {
            for (double lambda : linear_grid(0.05, 1.0, 0.05)) {
                bases.push_back({2, n, lambda, 0.0});
            }
        }
        body = thresholds(bases, threads);
    } else if (name == "fig4") {
        body = sweep_csv_header() + '\n' + moduli_curves(kModuliCurves, threads);
    } else if (name == "fig5") {
        body = sweep_csv_header() + '\n' + moduli_curves(kModuliCurves, threads) + moduli_curves(kGapInsetCurves, threads);
    } else {
        std::vector<ModularPattern> bases;
        for (const auto& c : kThresholdCurves) {
            for (int moduli = 2; moduli <= 20; ++moduli) {
                ModularPattern p = c;
                p.moduli = moduli;
                bases.push_back(p);
            }
        }
        body = thresholds(bases, threads);
    }
    return header_block(comments, f) + body;
}

}  // namespace modent::cli
