#include "modent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"

#ifndef MODENT_VERSION
#define MODENT_VERSION "0.0.0"
#endif

namespace modent {

namespace {

double clamp_population(double p, const char* name) {
    if (p < -kClampTolerance) {
        throw SolverError(std::string("negative population ") + name + " = " + std::to_string(p));
    }
    return std::max(p, 0.0);
}

double clamp_unit(double c) {
    if (c > 1.0 + kClampTolerance) {
        throw SolverError("concurrence exceeds 1: " + std::to_string(c));
    }
    return std::clamp(c, 0.0, 1.0);
}

std::pair<Site, Site> ordered(Site a, Site b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

std::string version() { return MODENT_VERSION; }

double concurrence(const PairState& p) {
    const double sum = p.p_uu + p.p_ud + p.p_du + p.p_dd;
    if (std::abs(sum - 1.0) > kClampTolerance) {
        throw SolverError("pair state populations sum to " + std::to_string(sum));
    }
    const double uu = clamp_population(p.p_uu, "p_uu");
    const double ud = clamp_population(p.p_ud, "p_ud");
    const double du = clamp_population(p.p_du, "p_du");
    const double dd = clamp_population(p.p_dd, "p_dd");

    const double via_inner = std::abs(p.inner) - std::sqrt(uu * dd);
    const double via_outer = std::abs(p.outer) - std::sqrt(ud * du);
    return clamp_unit(2.0 * std::max({0.0, via_inner, via_outer}));
}

double wootters_concurrence(const Eigen::Matrix4cd& rho) {
    using Mat = Eigen::Matrix4cd;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kClampTolerance) {
        throw SolverError("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > kClampTolerance) {
        throw SolverError("density matrix trace differs from 1");
    }

    Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (rho + rho.adjoint()));
    Eigen::Vector4d w = eig.eigenvalues();
    if (w.minCoeff() < -kClampTolerance) {
        throw SolverError("density matrix is not positive semidefinite");
    }
    // Eigenvalues at round-off level are zero; their square roots would not be.
    const double floor = 16.0 * std::numeric_limits<double>::epsilon();
    for (Eigen::Index k = 0; k < 4; ++k) {
        w(k) = w(k) < floor ? 0.0 : std::sqrt(w(k));
    }
    const Mat root = eig.eigenvectors() * w.cast<std::complex<double>>().asDiagonal() * eig.eigenvectors().adjoint();

    // sigma^y (x) sigma^y in the |uu>,|ud>,|du>,|dd> basis.
    Mat flip = Mat::Zero();
    flip(0, 3) = flip(3, 0) = -1.0;
    flip(1, 2) = flip(2, 1) = 1.0;

    const Mat a = root * flip * root.conjugate();
    Eigen::JacobiSVD<Mat> svd(a);
    const Eigen::Vector4d s = svd.singularValues();  // descending
    return clamp_unit(std::max(0.0, s(0) - s(1) - s(2) - s(3)));
}

double one_tangle(double sz) { return 1.0 - sz * sz; }

TangleBreakdown residual_tangle(std::size_t sites, const PairProvider& pairs, Site i) {
    if (i.index < 1 || i.index > sites) {
        throw InvalidSpec("tangle site " + std::to_string(i.index) + " outside 1.." + std::to_string(sites));
    }
    TangleBreakdown t;
    t.site = i;
    bool have_sz = false;
    for (std::size_t j = 1; j <= sites; ++j) {
        if (j == i.index) {
            continue;
        }
        const auto [a, b] = ordered(i, Site{j});
        const PairState p = pairs(a, b);
        if (!have_sz) {
            t.one_tangle = one_tangle(a == i ? p.sz_i : p.sz_j);
            have_sz = true;
        }
        const double c = concurrence(p);
        t.pairwise_squared_sum += c * c;
    }
    const double residual = t.one_tangle - t.pairwise_squared_sum;
    if (residual < -kClampTolerance) {
        throw SolverError("monogamy violated at site " + std::to_string(i.index) +
                          ": residual tangle = " + std::to_string(residual));
    }
    t.residual = std::max(residual, 0.0);
    t.sqrt_residual = std::sqrt(t.residual);
    return t;
}

TangleBreakdown residual_tangle(const ModeBasis& m, Site i) {
    const Eigen::MatrixXd q = contraction_matrix(m);
    return residual_tangle(m.sites(), [&q](Site a, Site b) { return pair_correlators(q, a, b); }, i);
}

EntanglementReport assemble_report(const ReportInputs& in, const ReportOptions& options) {
    EntanglementReport r;
    r.spec = in.spec;
    r.couplings.assign(in.couplings.values().begin(), in.couplings.values().end());
    r.sites = in.couplings.sites();
    r.gap = in.gap;
    r.ground_energy = in.ground_energy;
    r.zero_mode_count = in.zero_mode_count;
    r.degenerate = in.zero_mode_count > 0;
    r.mirror_symmetric = validate_mirror_symmetry(in.couplings).symmetric;
    r.metadata.solver = in.solver;
    r.metadata.version = version();

    const std::size_t n = r.sites;
    std::vector<PairState> from_first(n - 1);
    detail::parallel_for(n - 1, options.threads,
                         [&](std::size_t k) { from_first[k] = in.pairs(Site{1}, Site{k + 2}); });

    r.pairwise_from_first.resize(n - 1);
    double squared = 0.0;
    for (std::size_t k = 0; k < n - 1; ++k) {
        const double c = concurrence(from_first[k]);
        r.pairwise_from_first[k] = c;
        squared += c * c;
    }
    r.end_to_end_concurrence = r.pairwise_from_first.back();

    TangleBreakdown t;
    if (options.tangle_site == Site{1}) {
        t.site = Site{1};
        t.one_tangle = one_tangle(from_first.front().sz_i);
        t.pairwise_squared_sum = squared;
        const double residual = t.one_tangle - squared;
        if (residual < -kClampTolerance) {
            throw SolverError("monogamy violated at site 1: residual tangle = " + std::to_string(residual));
        }
        t.residual = std::max(residual, 0.0);
        t.sqrt_residual = std::sqrt(t.residual);
    } else {
        t = residual_tangle(n, in.pairs, options.tangle_site);
    }
    r.tangle_site = t.site;
    r.one_tangle = t.one_tangle;
    r.residual_tangle = t.residual;
    r.sqrt_residual_tangle = t.sqrt_residual;
    return r;
}

EntanglementReport report(const ChainSpec& spec, const ReportOptions& options) {
    const CouplingVector c = build_couplings(spec);
    const ModeBasis m = solve(c);
    const Eigen::MatrixXd q = contraction_matrix(m);
    ReportInputs in{spec,
                    c,
                    [&q](Site a, Site b) { return pair_correlators(q, a, b); },
                    energy_gap(m),
                    ground_energy(m),
                    m.zero_mode_count(),
                    "free-fermion"};
    return assemble_report(in, options);
}

double end_to_end_concurrence(const CouplingVector& c) {
    const ModeBasis m = solve(c);
    return concurrence(pair_correlators(contraction_matrix(m), Site{1}, Site{c.sites()}));
}

}  // namespace modent
