#include "modent/sweep.hpp"

#include <cmath>
#include <string>

#include "modent/entanglement.hpp"
#include "modent/fermion.hpp"
#include "parallel.hpp"

namespace modent {

namespace {

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) {
        throw InvalidSpec("sweep grid is empty");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k]) || grid[k] < 0.0) {
            throw InvalidSpec("grid value " + std::to_string(grid[k]) + " is not a finite lambda_I >= 0");
        }
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            throw InvalidSpec("grid must be strictly ascending (index " + std::to_string(k) + ")");
        }
    }
}

double single_modulus_concurrence(const ModularPattern& base) {
    ModularPattern one = base;
    one.moduli = 1;
    return end_to_end_concurrence(build_couplings(one));
}

SweepRow evaluate_row(double axis, const ModularPattern& p, double c_single) {
    const EntanglementReport r = report(ChainSpec::pattern(p));
    SweepRow row;
    row.axis_value = axis;
    row.pattern = p;
    row.c_end = r.end_to_end_concurrence;
    row.c_single_modulus = c_single;
    row.c_nn_end = r.pairwise_from_first.front();
    row.sqrt_tau_res = r.sqrt_residual_tangle;
    row.gap = r.gap;
    row.degenerate = r.degenerate;
    row.c_first_modulus = r.concurrence_from_first(static_cast<std::size_t>(p.sites_per_modulus));
    return row;
}

std::vector<std::string> odd_modulus_notes(const ModularPattern& p) {
    if (p.sites_per_modulus % 2 == 0) {
        return {};
    }
    return {"odd sites per modulus: each isolated modulus has a zero mode and a degenerate ground state"};
}

}  // namespace

std::vector<double> linear_grid(double first, double last, double step) {
    if (!(step > 0.0) || !std::isfinite(first) || !std::isfinite(last) || last < first) {
        throw InvalidSpec("linear grid needs finite first <= last and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-6)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) {
        grid[k] = std::round((first + static_cast<double>(k) * step) * 1e12) / 1e12;
    }
    return grid;
}

SweepTable sweep_lambda_i(const ModularPattern& base, const std::vector<double>& grid, const SweepOptions& options) {
    validate(base);
    validate_grid(grid);
    const double c_single = single_modulus_concurrence(base);

    SweepTable table;
    table.axis = "lambda_I";
    table.rows.resize(grid.size());
    detail::parallel_for(grid.size(), options.threads, [&](std::size_t k) {
        ModularPattern p = base;
        p.inter_modulus = grid[k];
        table.rows[k] = evaluate_row(grid[k], p, c_single);
    });
    table.provenance = {"sweep-lambda-i",
                        base,
                        {{"grid_first", grid.front()},
                         {"grid_last", grid.back()},
                         {"grid_points", static_cast<double>(grid.size())}},
                        odd_modulus_notes(base),
                        version()};
    return table;
}

ModuliSweep sweep_moduli(const ModularPattern& base, int max_moduli, double convergence_tolerance,
                         const SweepOptions& options) {
    if (max_moduli < 2) {
        throw InvalidSpec("sweep over moduli needs N_max >= 2");
    }
    ModularPattern first = base;
    first.moduli = 1;
    validate(first);
    const double c_single = single_modulus_concurrence(base);

    ModuliSweep out;
    out.table.axis = "N";
    out.table.rows.resize(static_cast<std::size_t>(max_moduli));
    detail::parallel_for(out.table.rows.size(), options.threads, [&](std::size_t k) {
        ModularPattern p = base;
        p.moduli = static_cast<int>(k) + 1;
        out.table.rows[k] = evaluate_row(static_cast<double>(p.moduli), p, c_single);
    });
    out.table.provenance = {"sweep-moduli",
                            base,
                            {{"max_moduli", static_cast<double>(max_moduli)},
                             {"convergence_tolerance", convergence_tolerance}},
                            odd_modulus_notes(base),
                            version()};

    const auto& rows = out.table.rows;
    out.asymptote.value = rows.back().c_end;
    out.asymptote.last_change = std::abs(rows.back().c_end - rows[rows.size() - 2].c_end);
    out.asymptote.tolerance = convergence_tolerance;
    out.asymptote.converged = out.asymptote.last_change < convergence_tolerance;
    return out;
}

GapFit fit_log_gap(const SweepTable& table, double min_axis) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    std::size_t n = 0;
    for (const auto& row : table.rows) {
        if (row.axis_value < min_axis || !(row.gap > 0.0)) {
            continue;
        }
        const double x = row.axis_value;
        const double y = std::log(row.gap);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++n;
    }
    if (n < 2) {
        throw InvalidSpec("gap fit needs at least two rows with a positive gap");
    }
    const double m = static_cast<double>(n);
    const double cov = sxy - sx * sy / m;
    const double var_x = sxx - sx * sx / m;
    const double var_y = syy - sy * sy / m;
    GapFit fit;
    fit.points = n;
    fit.slope = cov / var_x;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.r_squared = var_y > 0.0 ? cov * cov / (var_x * var_y) : 1.0;
    return fit;
}

GapSquareRootCheck gap_square_root_check(const ModularPattern& base, std::size_t total_sites) {
    const auto n = static_cast<std::size_t>(base.sites_per_modulus);
    if (n < 2 || total_sites % (2 * n) != 0) {
        throw InvalidSpec("total sites " + std::to_string(total_sites) + " is not a multiple of 2n = " +
                          std::to_string(2 * n));
    }
    ModularPattern small = base;
    small.moduli = static_cast<int>(total_sites / n);
    ModularPattern large = base;
    large.sites_per_modulus = static_cast<int>(2 * n);
    large.moduli = static_cast<int>(total_sites / (2 * n));

    GapSquareRootCheck check;
    check.total_sites = total_sites;
    check.sites_per_modulus = base.sites_per_modulus;
    const double gs = energy_gap(solve(build_couplings(small)));
    const double gl = energy_gap(solve(build_couplings(large)));
    if (!(gs > 0.0) || !(gl > 0.0)) {
        throw InvalidSpec("gap square-root check needs gapped chains");
    }
    check.log_gap_small = std::log(gs);
    check.log_gap_large = std::log(gl);
    const double half = 0.5 * check.log_gap_small;
    check.relative_deviation = std::abs(check.log_gap_large - half) / std::abs(half);
    return check;
}

const char* to_string(ThresholdOutcome o) {
    switch (o) {
        case ThresholdOutcome::found:
            return "found";
        case ThresholdOutcome::none_in_range:
            return "none_in_range";
        case ThresholdOutcome::positive_at_zero:
            return "positive_at_zero";
    }
    return "unknown";
}

ThresholdResult find_threshold(const ModularPattern& base, const ThresholdOptions& options) {
    ModularPattern probe = base;
    probe.inter_modulus = 0.0;
    validate(probe);
    if (!(options.step > 0.0) || !(options.max_inter_modulus >= options.step) || !(options.bracket_width > 0.0) ||
        !(options.concurrence_tolerance >= 0.0)) {
        throw InvalidSpec("threshold options need step > 0, max >= step, width > 0, tol >= 0");
    }

    ThresholdResult result;
    result.tolerance = options.concurrence_tolerance;
    result.notes = odd_modulus_notes(base);

    const auto entangled = [&](double lambda_i) {
        ModularPattern p = base;
        p.inter_modulus = lambda_i;
        ++result.evaluations;
        return end_to_end_concurrence(build_couplings(p)) > options.concurrence_tolerance;
    };

    if (entangled(0.0)) {
        result.outcome = ThresholdOutcome::positive_at_zero;
        result.notes.push_back("end-to-end concurrence already exceeds tolerance at lambda_I = 0");
        return result;
    }

    const auto steps = static_cast<long>(std::floor(options.max_inter_modulus / options.step + 1e-9));
    double lower = 0.0;
    double upper = -1.0;
    for (long k = 1; k <= steps; ++k) {
        const double x = static_cast<double>(k) * options.step;
        if (entangled(x)) {
            upper = x;
            break;
        }
        lower = x;
    }
    if (upper < 0.0) {
        result.outcome = ThresholdOutcome::none_in_range;
        result.notes.push_back("no onset on (0, " + std::to_string(options.max_inter_modulus) + "]");
        return result;
    }

    while (upper - lower > options.bracket_width) {
        const double mid = 0.5 * (lower + upper);
        (entangled(mid) ? upper : lower) = mid;
    }
    result.outcome = ThresholdOutcome::found;
    result.lower = lower;
    result.upper = upper;
    result.threshold = 0.5 * (lower + upper);
    result.ratio = result.threshold / base.end_bond;
    result.converged = upper - lower <= options.bracket_width;
    result.verified = !entangled(lower) && entangled(upper);
    return result;
}

std::vector<ThresholdResult> find_thresholds(const std::vector<ModularPattern>& bases,
                                             const ThresholdOptions& options, unsigned threads) {
    std::vector<ThresholdResult> out(bases.size());
    detail::parallel_for(bases.size(), threads, [&](std::size_t k) { out[k] = find_threshold(bases[k], options); });
    return out;
}

}  // namespace modent
