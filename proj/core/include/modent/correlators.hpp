#pragma once

#include <Eigen/Dense>

#include "modent/chain.hpp"
#include "modent/fermion.hpp"

namespace modent {

/// Two-site reduced density matrix of an XX ground state, in X form.
///
/// Basis order is |uu>, |ud>, |du>, |dd> with the first label on site i.
/// inner = <ud|rho|du>, outer = <uu|rho|dd> (identically zero for U(1)-symmetric states).
struct PairState {
    Site i;
    Site j;

    double p_uu = 0.0;
    double p_ud = 0.0;
    double p_du = 0.0;
    double p_dd = 0.0;
    double inner = 0.0;
    double outer = 0.0;

    double sz_i = 0.0;
    double sz_j = 0.0;
    double szsz = 0.0;
    double sxsx = 0.0;
    double sysy = 0.0;

    /// Populations and coherences derived from the five spin correlators.
    static PairState from_correlators(Site i, Site j, double sz_i, double sz_j, double szsz, double sxsx,
                                      double sysy);

    Eigen::Matrix4d density_matrix() const;
};

/// Q = 2G - 1, with Q_ll = <sigma^z_l>. Wick contractions <B_l A_m> = Q_lm.
Eigen::MatrixXd contraction_matrix(const ModeBasis& m);

/// Spin correlators of sites i < j by Wick's theorem on the Jordan-Wigner strings.
///
/// <sx_i sx_j> = det Q[i..j-1, i+1..j], <sy_i sy_j> = det Q[i+1..j, i..j-1],
/// <sz_i sz_j> = Q_ii Q_jj - Q_ij Q_ji. Determinants use partially pivoted LU.
PairState pair_correlators(const ModeBasis& m, Site i, Site j);

/// Same as above with a precomputed contraction matrix (hot loops).
PairState pair_correlators(const Eigen::MatrixXd& q, Site i, Site j);

}  // namespace modent
