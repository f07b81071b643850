#include "modent/correlators.hpp"

#include <string>

namespace modent {

namespace {

double block_determinant(const Eigen::MatrixXd& q, Eigen::Index row, Eigen::Index col, Eigen::Index size) {
    return Eigen::PartialPivLU<Eigen::MatrixXd>(q.block(row, col, size, size)).determinant();
}

void check_sites(std::size_t sites, Site i, Site j) {
    if (i.index < 1 || j.index > sites || i.index >= j.index) {
        throw InvalidSpec("pair (" + std::to_string(i.index) + "," + std::to_string(j.index) +
                          ") is not 1 <= i < j <= " + std::to_string(sites));
    }
}

}  // namespace

PairState PairState::from_correlators(Site i, Site j, double sz_i, double sz_j, double szsz, double sxsx,
                                      double sysy) {
    PairState p;
    p.i = i;
    p.j = j;
    p.sz_i = sz_i;
    p.sz_j = sz_j;
    p.szsz = szsz;
    p.sxsx = sxsx;
    p.sysy = sysy;
    p.p_uu = (1.0 + sz_i + sz_j + szsz) / 4.0;
    p.p_ud = (1.0 + sz_i - sz_j - szsz) / 4.0;
    p.p_du = (1.0 - sz_i + sz_j - szsz) / 4.0;
    p.p_dd = (1.0 - sz_i - sz_j + szsz) / 4.0;
    p.inner = (sxsx + sysy) / 4.0;
    p.outer = (sxsx - sysy) / 4.0;
    return p;
}

Eigen::Matrix4d PairState::density_matrix() const {
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    rho(0, 0) = p_uu;
    rho(1, 1) = p_ud;
    rho(2, 2) = p_du;
    rho(3, 3) = p_dd;
    rho(1, 2) = rho(2, 1) = inner;
    rho(0, 3) = rho(3, 0) = outer;
    return rho;
}

Eigen::MatrixXd contraction_matrix(const ModeBasis& m) {
    const auto n = static_cast<Eigen::Index>(m.sites());
    return 2.0 * m.correlation() - Eigen::MatrixXd::Identity(n, n);
}

PairState pair_correlators(const Eigen::MatrixXd& q, Site i, Site j) {
    check_sites(static_cast<std::size_t>(q.rows()), i, j);
    const auto a = static_cast<Eigen::Index>(i.zero_based());
    const auto b = static_cast<Eigen::Index>(j.zero_based());
    const Eigen::Index span = b - a;

    const double sz_i = q(a, a);
    const double sz_j = q(b, b);
    const double szsz = q(a, a) * q(b, b) - q(a, b) * q(b, a);
    const double sxsx = block_determinant(q, a, a + 1, span);
    const double sysy = block_determinant(q, a + 1, a, span);
    return PairState::from_correlators(i, j, sz_i, sz_j, szsz, sxsx, sysy);
}

PairState pair_correlators(const ModeBasis& m, Site i, Site j) {
    check_sites(m.sites(), i, j);
    return pair_correlators(contraction_matrix(m), i, j);
}

}  // namespace modent
