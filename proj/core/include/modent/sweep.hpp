#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "modent/chain.hpp"

namespace modent {

/// One grid point of a scan: end-to-end and single-modulus concurrences, tangle and gap.
struct SweepRow {
    double axis_value = 0.0;
    ModularPattern pattern;

    double c_end = 0.0;            ///< C_{1,n_t}
    double c_single_modulus = 0.0; ///< C_{1,n} of an isolated modulus (lambda_I-independent)
    double c_nn_end = 0.0;         ///< C_{1,2}
    double sqrt_tau_res = 0.0;     ///< sqrt of the residual tangle of site 1
    double gap = 0.0;
    bool degenerate = false;
    double c_first_modulus = 0.0;  ///< C_{1,n} inside the coupled chain

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct Provenance {
    std::string operation;
    ModularPattern base;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<std::string> notes;
    std::string version;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Rows are ordered by axis value with no duplicates.
struct SweepTable {
    std::string axis;
    std::vector<SweepRow> rows;
    Provenance provenance;

    friend bool operator==(const SweepTable&, const SweepTable&) = default;
};

struct SweepOptions {
    /// Grid points evaluated concurrently; 0 = hardware concurrency.
    unsigned threads = 1;
};

/// Evenly spaced grid first, first+step, ... up to last (inclusive within step/1e6).
std::vector<double> linear_grid(double first, double last, double step);

/// Scans lambda_I over an ascending, duplicate-free, non-negative grid.
/// base.inter_modulus is ignored.
SweepTable sweep_lambda_i(const ModularPattern& base, const std::vector<double>& grid,
                          const SweepOptions& options = {});

struct AsymptoteEstimate {
    double value = 0.0;       ///< C(N_max)
    double last_change = 0.0; ///< |C(N_max) - C(N_max - 1)|
    double tolerance = 1e-4;
    bool converged = false;
};

struct ModuliSweep {
    SweepTable table;
    AsymptoteEstimate asymptote;
};

/// Reports for N = 1..max_moduli. base.moduli is ignored.
ModuliSweep sweep_moduli(const ModularPattern& base, int max_moduli, double convergence_tolerance = 1e-4,
                         const SweepOptions& options = {});

/// Least-squares line through (axis, log gap).
struct GapFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Fits rows with axis >= min_axis and a strictly positive gap.
GapFit fit_log_gap(const SweepTable& table, double min_axis = 0.0);

/// Gap scaling between moduli of n and 2n sites at equal total size.
struct GapSquareRootCheck {
    std::size_t total_sites = 0;
    int sites_per_modulus = 0;
    double log_gap_small = 0.0;  ///< n-site moduli
    double log_gap_large = 0.0;  ///< 2n-site moduli
    /// |log_gap_large - log_gap_small / 2| / |log_gap_small / 2|
    double relative_deviation = 0.0;
};

/// base.moduli is ignored; total_sites must be divisible by 2 n.
GapSquareRootCheck gap_square_root_check(const ModularPattern& base, std::size_t total_sites);

enum class ThresholdOutcome {
    found,
    none_in_range,
    positive_at_zero,
};

const char* to_string(ThresholdOutcome o);

struct ThresholdOptions {
    double step = 0.05;
    double max_inter_modulus = 8.0;
    double concurrence_tolerance = 1e-8;
    double bracket_width = 1e-6;
};

/// Onset of end-to-end entanglement in lambda_I.
///
/// A coarse ascending scan finds the first grid cell where C_{1,n_t} > tol
/// switches on; bisection then shrinks that cell to bracket_width.
/// threshold is the bracket midpoint, so C(lower) <= tol < C(upper).
struct ThresholdResult {
    ThresholdOutcome outcome = ThresholdOutcome::none_in_range;
    double threshold = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double tolerance = 1e-8;
    double ratio = 0.0;  ///< threshold / lambda
    bool converged = false;
    /// Bracket invariant re-checked by fresh evaluations at lower and upper.
    bool verified = false;
    int evaluations = 0;
    std::vector<std::string> notes;
};

/// base.inter_modulus is ignored.
ThresholdResult find_threshold(const ModularPattern& base, const ThresholdOptions& options = {});

/// find_threshold over several chains, `threads` at a time; results keep input order.
std::vector<ThresholdResult> find_thresholds(const std::vector<ModularPattern>& bases,
                                             const ThresholdOptions& options = {}, unsigned threads = 1);

}  // namespace modent
