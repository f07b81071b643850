#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "modent/chain.hpp"
#include "modent/correlators.hpp"
#include "modent/entanglement.hpp"

namespace modent {

inline constexpr std::size_t kOracleMaxSites = 14;
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Eigenstate of one magnetization sector; amplitudes follow
/// DenseSpectrum::sector_bases[up_spins].
struct SectorState {
    int up_spins = 0;
    double energy = 0.0;
    Eigen::VectorXd amplitudes;
};

/// Brute-force spectrum of the spin Hamiltonian, block diagonal in total S^z.
struct DenseSpectrum {
    std::size_t sites = 0;
    double ground_energy = 0.0;
    /// Second-lowest level counting multiplicity over all sectors.
    double first_excited = 0.0;
    int degeneracy = 1;
    std::vector<std::size_t> sector_dimensions;
    /// Basis states of every sector, indexed by number of up spins. Bit k of a
    /// basis state is 1 when site k+1 points up.
    std::vector<std::vector<std::uint32_t>> sector_bases;
    /// Orthonormal basis of the ground manifold (all sectors).
    std::vector<SectorState> ground_states;

    double gap() const { return first_excited - ground_energy; }
    /// Ground state k embedded in the full 2^n_t space.
    Eigen::VectorXd full_state(std::size_t k) const;
};

/// Builds H = 1/2 sum J (SxSx + SySy), S = sigma/2, sector by sector and
/// diagonalizes each block densely. Throws InvalidSpec above kOracleMaxSites.
DenseSpectrum ed_solve(const CouplingVector& c);

/// Two-site reduced density matrix by partial trace, averaged with equal
/// weights over the ground manifold.
Eigen::Matrix4cd ed_reduced_density_matrix(const DenseSpectrum& s, Site i, Site j);

/// Reduced density matrix repackaged as a PairState with its spin correlators.
PairState ed_pair_state(const DenseSpectrum& s, Site i, Site j);

EntanglementReport ed_report(const ChainSpec& spec, const ReportOptions& options = {});

/// Largest discrepancies between the free-fermion path and the oracle on one chain.
struct OracleComparison {
    ChainSpec spec;
    std::size_t sites = 0;
    bool degenerate = false;
    double ground_energy_diff = 0.0;
    double gap_diff = 0.0;
    double rdm_diff = 0.0;          ///< max over pairs and 4x4 elements
    double concurrence_diff = 0.0;  ///< max over all pairs
    double residual_tangle_diff = 0.0;

    bool passed(double energy_tol = 1e-9, double state_tol = 1e-8) const {
        return ground_energy_diff <= energy_tol && gap_diff <= energy_tol && rdm_diff <= state_tol &&
               concurrence_diff <= state_tol && residual_tangle_diff <= state_tol;
    }
};

OracleComparison compare_with_oracle(const ChainSpec& spec);

/// n in {2,3,4,6}, N in {1,2,3} with n_t <= 12, lambda in {0.1,0.5,1}, lambda_I in {0.05,0.5,1,4}.
std::vector<ModularPattern> oracle_grid();

}  // namespace modent
