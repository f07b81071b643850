#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "modent/chain.hpp"

namespace modent {

/// Spin and unit conventions shared by every solver in the library.
///
/// H = 1/2 sum_i J_{i,i+1} (S^x_i S^x_{i+1} + S^y_i S^y_{i+1}) with S = sigma/2.
/// Under Jordan-Wigner (spin up = occupied, string (-1)^n) this is
/// H = sum_i (J_{i,i+1}/4) (c^dag_i c_{i+1} + h.c.), so energies are in units of J.
struct Convention {
    static constexpr const char* spin = "S = sigma/2";
    static constexpr const char* hamiltonian = "H = 1/2 sum J_{i,i+1} (Sx Sx + Sy Sy)";
    static constexpr const char* hopping = "t_i = J_{i,i+1}/4";
    static constexpr double hopping_scale = 0.25;
};

/// Symmetric tridiagonal single-particle matrix T with zero diagonal, T_{i,i+1} = J_{i,i+1}/4.
Eigen::MatrixXd hopping_matrix(const CouplingVector& c);

/// Single-particle solution of the free-fermion problem. Immutable.
///
/// energies are ascending, modes(:, k) is the eigenvector for energies[k].
/// Zero modes carry an energy of exactly 0.0 and are half occupied in the
/// correlation matrix G_{ij} = <c^dag_i c_j>, i.e. the state is the equal
/// mixture over the degenerate ground manifold.
class ModeBasis {
  public:
    ModeBasis(std::vector<double> energies, Eigen::MatrixXd modes, int zero_mode_count);

    std::size_t sites() const { return energies_.size(); }
    const std::vector<double>& energies() const { return energies_; }
    const Eigen::MatrixXd& modes() const { return modes_; }
    const Eigen::MatrixXd& correlation() const { return correlation_; }
    int zero_mode_count() const { return zero_mode_count_; }
    bool degenerate() const { return zero_mode_count_ > 0; }

  private:
    std::vector<double> energies_;
    Eigen::MatrixXd modes_;
    int zero_mode_count_;
    Eigen::MatrixXd correlation_;
};

/// Exact diagonalization of the hopping problem.
///
/// The chain is split into connected components at vanishing couplings. Each
/// component is bipartite, so T = [[0, B], [B^T, 0]] in sublattice order with B
/// lower bidiagonal; its spectrum is +-sigma(B). The singular values come from a
/// zero-shift bidiagonal QR, which keeps tiny sigma (exponentially small gaps of
/// long modular chains) to full relative accuracy. Every odd-length component
/// carries exactly one zero mode; no tolerance is involved in detecting it.
ModeBasis solve(const CouplingVector& c);

/// Lowest many-body excitation energy, min_k |eps_k| (0 with zero modes).
double energy_gap(const ModeBasis& m);

/// Sum of negative single-particle energies.
double ground_energy(const ModeBasis& m);

}  // namespace modent
