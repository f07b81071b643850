#include "modent/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <string>

#include "modent/fermion.hpp"

namespace modent {

namespace {

std::vector<std::vector<std::uint32_t>> magnetization_sectors(std::size_t sites) {
    std::vector<std::vector<std::uint32_t>> sectors(sites + 1);
    const std::uint32_t dim = 1u << sites;
    for (std::uint32_t s = 0; s < dim; ++s) {
        sectors[static_cast<std::size_t>(std::popcount(s))].push_back(s);
    }
    return sectors;
}

Eigen::MatrixXd sector_hamiltonian(const CouplingVector& c, const std::vector<std::uint32_t>& basis) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    // S^x S^x + S^y S^y = (S^+ S^- + S^- S^+)/2 flips an antiparallel pair with amplitude 1/2;
    // the Hamiltonian carries a further 1/2 J.
    for (Eigen::Index col = 0; col < dim; ++col) {
        const std::uint32_t s = basis[static_cast<std::size_t>(col)];
        for (std::size_t b = 0; b < c.bonds(); ++b) {
            const bool up_left = (s >> b) & 1u;
            const bool up_right = (s >> (b + 1)) & 1u;
            if (up_left == up_right) {
                continue;
            }
            const std::uint32_t flipped = s ^ (3u << b);
            const auto row = static_cast<Eigen::Index>(
                std::lower_bound(basis.begin(), basis.end(), flipped) - basis.begin());
            h(row, col) += 0.5 * c[b] * 0.5;
        }
    }
    return h;
}

// Below this in-sector gap double-precision eigenvectors lose digits
// (error ~ eps |H| / gap), so the ground block is computed in long double.
constexpr double kRefineBelowGap = 1e-4;

struct GroundBlock {
    Eigen::MatrixXd vectors;
    Eigen::VectorXd energies;
};

// Block inverse iteration at `shift` from a fixed pseudo-random start, then
// Rayleigh-Ritz inside the converged block.
template <typename Scalar>
GroundBlock inverse_iteration(const Eigen::MatrixXd& h, double shift, Eigen::Index block) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Matrix hs = h.cast<Scalar>();
    Matrix shifted = hs;
    // Just below the ground level so exact degeneracies cannot give a zero pivot.
    const double below = shift - 1e-13 * std::max(1.0, std::abs(shift));
    shifted.diagonal().array() -= static_cast<Scalar>(below);
    const Eigen::PartialPivLU<Matrix> lu(shifted);

    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    Matrix v(h.rows(), block);
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            v(i, j) = static_cast<Scalar>(normal(rng));
        }
    }
    for (int iter = 0; iter < 4; ++iter) {
        v = lu.solve(v);
        if (!v.allFinite()) {
            throw SolverError("inverse iteration diverged in the oracle");
        }
        const Eigen::HouseholderQR<Matrix> qr(v);
        v = qr.householderQ() * Matrix::Identity(v.rows(), v.cols());
    }
    const Matrix projected = v.transpose() * hs * v;
    const Eigen::SelfAdjointEigenSolver<Matrix> small(projected);
    return {(v * small.eigenvectors()).template cast<double>(), small.eigenvalues().template cast<double>()};
}

// |uu>=0, |ud>=1, |du>=2, |dd>=3 with bit value 1 = up.
int pair_index(std::uint32_t s, std::size_t a, std::size_t b) {
    const int up_a = static_cast<int>((s >> a) & 1u);
    const int up_b = static_cast<int>((s >> b) & 1u);
    return 2 * (1 - up_a) + (1 - up_b);
}

}  // namespace

Eigen::VectorXd DenseSpectrum::full_state(std::size_t k) const {
    const SectorState& g = ground_states.at(k);
    const auto& basis = sector_bases[static_cast<std::size_t>(g.up_spins)];
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(Eigen::Index{1} << sites);
    for (std::size_t r = 0; r < basis.size(); ++r) {
        psi(basis[r]) = g.amplitudes(static_cast<Eigen::Index>(r));
    }
    return psi;
}

DenseSpectrum ed_solve(const CouplingVector& c) {
    const std::size_t n = c.sites();
    if (n > kOracleMaxSites) {
        throw InvalidSpec("exact diagonalization is capped at " + std::to_string(kOracleMaxSites) + " sites, got " +
                          std::to_string(n));
    }

    DenseSpectrum out;
    out.sites = n;
    out.sector_bases = magnetization_sectors(n);

    // Eigen's solver does not go through BLAS, which keeps the oracle independent
    // of the LAPACK build the free-fermion path links against.
    std::vector<Eigen::MatrixXd> blocks;
    std::vector<Eigen::VectorXd> levels;
    std::vector<double> all_levels;
    for (const auto& basis : out.sector_bases) {
        out.sector_dimensions.push_back(basis.size());
        blocks.push_back(sector_hamiltonian(c, basis));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(blocks.back(), Eigen::EigenvaluesOnly);
        levels.push_back(eig.eigenvalues());
        all_levels.insert(all_levels.end(), eig.eigenvalues().begin(), eig.eigenvalues().end());
    }
    std::sort(all_levels.begin(), all_levels.end());
    out.ground_energy = all_levels[0];
    out.first_excited = all_levels.size() > 1 ? all_levels[1] : all_levels[0];
    const double cutoff = out.ground_energy + kDegeneracyTolerance;
    out.degeneracy = static_cast<int>(
        std::count_if(all_levels.begin(), all_levels.end(), [&](double e) { return e <= cutoff; }));

    for (std::size_t up = 0; up < out.sector_bases.size(); ++up) {
        if (levels[up].minCoeff() > cutoff) {
            continue;
        }
        Eigen::Index block = 0;
        double sector_gap = std::numeric_limits<double>::infinity();
        for (double e : levels[up]) {
            if (e <= cutoff) {
                ++block;
            } else {
                sector_gap = std::min(sector_gap, e - out.ground_energy);
            }
        }
        const GroundBlock g = sector_gap < kRefineBelowGap
                                  ? inverse_iteration<long double>(blocks[up], out.ground_energy, block)
                                  : inverse_iteration<double>(blocks[up], out.ground_energy, block);
        for (Eigen::Index k = 0; k < block; ++k) {
            out.ground_states.push_back({static_cast<int>(up), g.energies(k), g.vectors.col(k)});
        }
    }
    return out;
}

Eigen::Matrix4cd ed_reduced_density_matrix(const DenseSpectrum& s, Site i, Site j) {
    if (i.index < 1 || j.index > s.sites || i.index >= j.index) {
        throw InvalidSpec("pair (" + std::to_string(i.index) + "," + std::to_string(j.index) + ") out of range");
    }
    const std::size_t a = i.zero_based();
    const std::size_t b = j.zero_based();
    const std::uint32_t pair_mask = (1u << a) | (1u << b);

    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (const SectorState& g : s.ground_states) {
        const auto& basis = s.sector_bases[static_cast<std::size_t>(g.up_spins)];
        // rho_{xy} = sum_rest psi(x, rest) psi(y, rest); only states sharing the rest contribute.
        for (std::size_t r = 0; r < basis.size(); ++r) {
            const std::uint32_t state = basis[r];
            const std::uint32_t rest = state & ~pair_mask;
            const double amp = g.amplitudes(static_cast<Eigen::Index>(r));
            const int x = pair_index(state, a, b);
            for (std::uint32_t bits = 0; bits < 4; ++bits) {
                const std::uint32_t partner = rest | ((bits & 1u) << a) | (((bits >> 1) & 1u) << b);
                const auto it = std::lower_bound(basis.begin(), basis.end(), partner);
                if (it == basis.end() || *it != partner) {
                    continue;
                }
                const int y = pair_index(partner, a, b);
                rho(x, y) += amp * g.amplitudes(static_cast<Eigen::Index>(it - basis.begin()));
            }
        }
    }
    rho /= static_cast<double>(s.ground_states.size());
    return rho.cast<std::complex<double>>();
}

PairState ed_pair_state(const DenseSpectrum& s, Site i, Site j) {
    const Eigen::Matrix4d rho = ed_reduced_density_matrix(s, i, j).real();
    PairState p;
    p.i = i;
    p.j = j;
    p.p_uu = rho(0, 0);
    p.p_ud = rho(1, 1);
    p.p_du = rho(2, 2);
    p.p_dd = rho(3, 3);
    p.inner = rho(1, 2);
    p.outer = rho(0, 3);
    p.sz_i = p.p_uu + p.p_ud - p.p_du - p.p_dd;
    p.sz_j = p.p_uu - p.p_ud + p.p_du - p.p_dd;
    p.szsz = p.p_uu - p.p_ud - p.p_du + p.p_dd;
    p.sxsx = 2.0 * (rho(1, 2) + rho(0, 3));
    p.sysy = 2.0 * (rho(1, 2) - rho(0, 3));
    return p;
}

EntanglementReport ed_report(const ChainSpec& spec, const ReportOptions& options) {
    const CouplingVector c = build_couplings(spec);
    const DenseSpectrum s = ed_solve(c);
    const int zero_modes = static_cast<int>(std::lround(std::log2(static_cast<double>(s.degeneracy))));
    ReportInputs in{spec,
                    c,
                    [&s](Site a, Site b) { return ed_pair_state(s, a, b); },
                    s.gap(),
                    s.ground_energy,
                    zero_modes,
                    "exact-diagonalization"};
    return assemble_report(in, options);
}

OracleComparison compare_with_oracle(const ChainSpec& spec) {
    const CouplingVector c = build_couplings(spec);
    const DenseSpectrum s = ed_solve(c);
    const ModeBasis m = solve(c);
    const Eigen::MatrixXd q = contraction_matrix(m);
    const std::size_t n = c.sites();

    OracleComparison out;
    out.spec = spec;
    out.sites = n;
    out.degenerate = m.degenerate() || s.degeneracy > 1;
    out.ground_energy_diff = std::abs(ground_energy(m) - s.ground_energy);
    out.gap_diff = std::abs(energy_gap(m) - s.gap());
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            const PairState ff = pair_correlators(q, Site{i}, Site{j});
            const PairState ed = ed_pair_state(s, Site{i}, Site{j});
            const Eigen::Matrix4cd rho = ed_reduced_density_matrix(s, Site{i}, Site{j});
            const Eigen::Matrix4cd diff = ff.density_matrix().cast<std::complex<double>>() - rho;
            out.rdm_diff = std::max(out.rdm_diff, diff.cwiseAbs().maxCoeff());
            out.concurrence_diff = std::max(out.concurrence_diff, std::abs(concurrence(ff) - concurrence(ed)));
        }
    }
    const PairProvider ff_pairs = [&q](Site a, Site b) { return pair_correlators(q, a, b); };
    const PairProvider ed_pairs = [&s](Site a, Site b) { return ed_pair_state(s, a, b); };
    out.residual_tangle_diff =
        std::abs(residual_tangle(n, ff_pairs, Site{1}).residual - residual_tangle(n, ed_pairs, Site{1}).residual);
    return out;
}

std::vector<ModularPattern> oracle_grid() {
    std::vector<ModularPattern> grid;
    for (int n : {2, 3, 4, 6}) {
        for (int moduli : {1, 2, 3}) {
            if (n * moduli > 12) {
                continue;
            }
            for (double lambda : {0.1, 0.5, 1.0}) {
                for (double lambda_i : {0.05, 0.5, 1.0, 4.0}) {
                    grid.push_back(ModularPattern{moduli, n, lambda, lambda_i});
                }
            }
        }
    }
    return grid;
}

}  // namespace modent
