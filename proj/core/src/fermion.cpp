#include "modent/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <lapacke.h>

namespace modent {

namespace {

struct Mode {
    double energy;
    Eigen::VectorXd vector;
};

// Sites [first, first + length) joined by nonzero couplings.
struct Component {
    std::size_t first;
    std::size_t length;
};

std::vector<Component> connected_components(const CouplingVector& c) {
    std::vector<Component> out;
    std::size_t start = 0;
    for (std::size_t b = 0; b < c.bonds(); ++b) {
        if (c[b] == 0.0) {
            out.push_back({start, b + 1 - start});
            start = b + 1;
        }
    }
    out.push_back({start, c.sites() - start});
    return out;
}

// Modes of one connected component, written into global site coordinates.
void solve_component(const CouplingVector& c, const Component& comp, std::size_t total_sites,
                     std::vector<Mode>& out) {
    const std::size_t len = comp.length;
    if (len == 1) {
        Eigen::VectorXd phi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total_sites));
        phi(static_cast<Eigen::Index>(comp.first)) = 1.0;
        out.push_back({0.0, std::move(phi)});
        return;
    }

    // Sublattice A = even local positions (na sites), B = odd local positions (nb sites).
    // B-block M is na x nb lower bidiagonal; odd components are padded with a zero column.
    const std::size_t na = (len + 1) / 2;
    const std::size_t nb = len / 2;
    const bool odd = na != nb;
    const auto bond = [&](std::size_t local) { return Convention::hopping_scale * c[comp.first + local]; };

    std::vector<double> d(na, 0.0);
    std::vector<double> e(na > 1 ? na - 1 : 1, 0.0);
    for (std::size_t k = 0; k < nb; ++k) {
        d[k] = bond(2 * k);
    }
    for (std::size_t k = 0; k + 1 < na; ++k) {
        e[k] = bond(2 * k + 1);
    }

    const auto n = static_cast<lapack_int>(na);
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd vt = Eigen::MatrixXd::Identity(n, n);
    double unused_c = 0.0;
    const lapack_int info = LAPACKE_dbdsqr(LAPACK_COL_MAJOR, 'L', n, n, n, 0, d.data(), e.data(), vt.data(), n,
                                           u.data(), n, &unused_c, 1);
    if (info != 0) {
        throw SolverError("bidiagonal SVD failed to converge (info=" + std::to_string(info) + ")");
    }

    const auto site_a = [&](std::size_t k) { return static_cast<Eigen::Index>(comp.first + 2 * k); };
    const auto site_b = [&](std::size_t k) { return static_cast<Eigen::Index>(comp.first + 2 * k + 1); };
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    for (std::size_t k = 0; k < nb; ++k) {
        const double sigma = d[k];
        if (!(sigma > 0.0)) {
            throw SolverError("singular value underflow in a gapped component; gap below double range");
        }
        Eigen::VectorXd lower = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total_sites));
        Eigen::VectorXd upper = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total_sites));
        const auto col = static_cast<Eigen::Index>(k);
        for (std::size_t a = 0; a < na; ++a) {
            const double ua = u(static_cast<Eigen::Index>(a), col) * inv_sqrt2;
            lower(site_a(a)) = ua;
            upper(site_a(a)) = ua;
        }
        for (std::size_t b = 0; b < nb; ++b) {
            const double vb = vt(col, static_cast<Eigen::Index>(b)) * inv_sqrt2;
            lower(site_b(b)) = -vb;
            upper(site_b(b)) = vb;
        }
        out.push_back({-sigma, std::move(lower)});
        out.push_back({sigma, std::move(upper)});
    }

    if (odd) {
        // The padded column is the right null vector of the zero singular value.
        const auto z = static_cast<Eigen::Index>(na - 1);
        if (std::abs(vt(z, z)) < 1.0 - 1e-8) {
            throw SolverError("zero mode of an odd component could not be isolated");
        }
        Eigen::VectorXd phi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total_sites));
        for (std::size_t a = 0; a < na; ++a) {
            phi(site_a(a)) = u(static_cast<Eigen::Index>(a), z);
        }
        phi.normalize();
        out.push_back({0.0, std::move(phi)});
    }
}

}  // namespace

Eigen::MatrixXd hopping_matrix(const CouplingVector& c) {
    const auto n = static_cast<Eigen::Index>(c.sites());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        t(i, i + 1) = t(i + 1, i) = Convention::hopping_scale * c[static_cast<std::size_t>(i)];
    }
    return t;
}

ModeBasis::ModeBasis(std::vector<double> energies, Eigen::MatrixXd modes, int zero_mode_count)
    : energies_(std::move(energies)), modes_(std::move(modes)), zero_mode_count_(zero_mode_count) {
    const auto n = static_cast<Eigen::Index>(energies_.size());
    if (modes_.rows() != n || modes_.cols() != n) {
        throw SolverError("mode matrix shape does not match the number of energies");
    }
    Eigen::VectorXd occupation(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double eps = energies_[static_cast<std::size_t>(k)];
        occupation(k) = eps < 0.0 ? 1.0 : (eps == 0.0 ? 0.5 : 0.0);
    }
    correlation_ = modes_ * occupation.asDiagonal() * modes_.transpose();
    correlation_ = 0.5 * (correlation_ + correlation_.transpose()).eval();
}

ModeBasis solve(const CouplingVector& c) {
    const std::size_t n = c.sites();
    std::vector<Mode> modes;
    modes.reserve(n);
    int zero_modes = 0;
    for (const auto& comp : connected_components(c)) {
        zero_modes += static_cast<int>(comp.length % 2);
        solve_component(c, comp, n, modes);
    }

    std::stable_sort(modes.begin(), modes.end(),
                     [](const Mode& a, const Mode& b) { return a.energy < b.energy; });

    std::vector<double> energies(n);
    Eigen::MatrixXd vectors(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        energies[k] = modes[k].energy;
        vectors.col(static_cast<Eigen::Index>(k)) = modes[k].vector;
    }
    return ModeBasis(std::move(energies), std::move(vectors), zero_modes);
}

double energy_gap(const ModeBasis& m) {
    double gap = std::numeric_limits<double>::infinity();
    for (double eps : m.energies()) {
        gap = std::min(gap, std::abs(eps));
    }
    return gap;
}

double ground_energy(const ModeBasis& m) {
    double e0 = 0.0;
    for (double eps : m.energies()) {
        if (eps < 0.0) {
            e0 += eps;
        }
    }
    return e0;
}

}  // namespace modent
