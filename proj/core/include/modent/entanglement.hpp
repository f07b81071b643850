#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modent/chain.hpp"
#include "modent/correlators.hpp"
#include "modent/fermion.hpp"

namespace modent {

/// Round-off window: tiny negative populations, tangles or concurrences are
/// clamped inside it, anything beyond is reported as an error.
inline constexpr double kClampTolerance = 1e-8;

/// Concurrences below this are written as exactly 0 in flat outputs.
inline constexpr double kConcurrenceZero = 1e-10;

/// X-state concurrence, C = 2 max(0, |inner| - sqrt(p_uu p_dd), |outer| - sqrt(p_ud p_du)).
/// Throws SolverError for non-physical input.
double concurrence(const PairState& p);

/// Wootters concurrence of an arbitrary two-qubit density matrix.
/// The spin-flip eigenvalues are obtained as the singular values of
/// sqrt(rho) (sy x sy) conj(sqrt(rho)).
double wootters_concurrence(const Eigen::Matrix4cd& rho);

/// tau_1 = 4 det(rho_i) = 1 - <sigma^z>^2.
double one_tangle(double sz);

struct TangleBreakdown {
    Site site;
    double one_tangle = 0.0;
    double pairwise_squared_sum = 0.0;
    /// tau_1 - sum_j C_ij^2, clamped to 0 inside the round-off window.
    double residual = 0.0;
    double sqrt_residual = 0.0;
};

/// Pair states, indexed by (i, j) with i < j.
using PairProvider = std::function<PairState(Site, Site)>;

TangleBreakdown residual_tangle(std::size_t sites, const PairProvider& pairs, Site i);
TangleBreakdown residual_tangle(const ModeBasis& m, Site i);

struct SolverMetadata {
    std::string solver;
    std::string spin_convention = Convention::spin;
    std::string hamiltonian = Convention::hamiltonian;
    std::string hopping = Convention::hopping;
    double clamp_tolerance = kClampTolerance;
    double concurrence_zero = kConcurrenceZero;
    std::string version;

    friend bool operator==(const SolverMetadata&, const SolverMetadata&) = default;
};

struct EntanglementReport {
    ChainSpec spec;
    std::vector<double> couplings;
    std::size_t sites = 0;

    double end_to_end_concurrence = 0.0;
    /// C_{1,j} for j = 2..n_t.
    std::vector<double> pairwise_from_first;

    Site tangle_site;
    double one_tangle = 0.0;
    double residual_tangle = 0.0;
    double sqrt_residual_tangle = 0.0;

    double gap = 0.0;
    double ground_energy = 0.0;
    bool degenerate = false;
    int zero_mode_count = 0;
    bool mirror_symmetric = true;

    SolverMetadata metadata;

    /// C_{1,j}; j in [2, n_t].
    double concurrence_from_first(std::size_t j) const { return pairwise_from_first.at(j - 2); }

    friend bool operator==(const EntanglementReport&, const EntanglementReport&) = default;
};

struct ReportOptions {
    Site tangle_site{1};
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 1;
};

/// Everything a solver backend has to supply to build a report.
struct ReportInputs {
    ChainSpec spec;
    CouplingVector couplings;
    PairProvider pairs;
    double gap = 0.0;
    double ground_energy = 0.0;
    int zero_mode_count = 0;
    std::string solver;
};

EntanglementReport assemble_report(const ReportInputs& in, const ReportOptions& options = {});

/// Free-fermion report: solve, pair correlators, concurrences, tangles and gap.
EntanglementReport report(const ChainSpec& spec, const ReportOptions& options = {});

/// C_{1,n_t} only; used by scans that need nothing else.
double end_to_end_concurrence(const CouplingVector& c);

/// Library version string baked in at build time.
std::string version();

}  // namespace modent
