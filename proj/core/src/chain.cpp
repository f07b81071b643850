#include "modent/chain.hpp"

#include <cmath>
#include <sstream>

namespace modent {

CouplingVector::CouplingVector(std::vector<double> couplings) : couplings_(std::move(couplings)) {
    if (couplings_.empty()) {
        throw InvalidSpec("a chain needs at least two sites (one coupling)");
    }
    for (std::size_t k = 0; k < couplings_.size(); ++k) {
        if (!std::isfinite(couplings_[k])) {
            throw InvalidSpec("coupling " + std::to_string(k + 1) + " is not finite");
        }
    }
}

ChainSpec ChainSpec::pattern(int moduli, int sites_per_modulus, double end_bond, double inter_modulus) {
    return pattern(ModularPattern{moduli, sites_per_modulus, end_bond, inter_modulus});
}

ChainSpec ChainSpec::pattern(const ModularPattern& p) {
    validate(p);
    return ChainSpec(p);
}

ChainSpec ChainSpec::explicit_couplings(std::vector<double> couplings) {
    return ChainSpec(CouplingVector(std::move(couplings)));
}

const ModularPattern& ChainSpec::modular() const {
    if (const auto* p = std::get_if<ModularPattern>(&form_)) {
        return *p;
    }
    throw InvalidSpec("chain spec holds an explicit coupling list, not a modular pattern");
}

const CouplingVector& ChainSpec::couplings_list() const {
    if (const auto* c = std::get_if<CouplingVector>(&form_)) {
        return *c;
    }
    throw InvalidSpec("chain spec holds a modular pattern, not an explicit coupling list");
}

std::size_t ChainSpec::total_sites() const {
    return is_pattern() ? modular().total_sites() : couplings_list().sites();
}

void validate(const ModularPattern& p) {
    if (p.sites_per_modulus < 2) {
        throw InvalidSpec("sites per modulus must be >= 2, got " + std::to_string(p.sites_per_modulus));
    }
    if (p.moduli < 1) {
        throw InvalidSpec("number of moduli must be >= 1, got " + std::to_string(p.moduli));
    }
    if (!std::isfinite(p.end_bond) || p.end_bond <= 0.0) {
        throw InvalidSpec("end bond lambda must be finite and > 0");
    }
    if (!std::isfinite(p.inter_modulus) || p.inter_modulus < 0.0) {
        throw InvalidSpec("inter-modulus coupling lambda_I must be finite and >= 0");
    }
}

CouplingVector build_couplings(const ModularPattern& p) {
    validate(p);
    const auto n = static_cast<std::size_t>(p.sites_per_modulus);
    const auto moduli = static_cast<std::size_t>(p.moduli);

    std::vector<double> c;
    c.reserve(n * moduli - 1);
    for (std::size_t k = 0; k < moduli; ++k) {
        // Bonds 1 and n-1 of a modulus are end bonds; for n <= 3 there is no bulk.
        for (std::size_t b = 1; b <= n - 1; ++b) {
            c.push_back(b == 1 || b == n - 1 ? p.end_bond : 1.0);
        }
        if (k + 1 < moduli) {
            c.push_back(p.inter_modulus);
        }
    }
    return CouplingVector(std::move(c));
}

CouplingVector build_couplings(const ChainSpec& spec) {
    return spec.is_pattern() ? build_couplings(spec.modular()) : spec.couplings_list();
}

MirrorCheck validate_mirror_symmetry(const CouplingVector& c, double tolerance) {
    const auto v = c.values();
    const std::size_t m = v.size();
    for (std::size_t k = 0; k < m / 2; ++k) {
        const double a = v[k];
        const double b = v[m - 1 - k];
        if (std::abs(a - b) > tolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "couplings are not mirror symmetric: J(" << k + 1 << "," << k + 2 << ")=" << a
                << " but J(" << m - k << "," << m - k + 1 << ")=" << b
                << "; end-to-end entanglement is expected to vanish";
            return MirrorCheck{false, k, msg.str()};
        }
    }
    return MirrorCheck{true, std::nullopt, "couplings are mirror symmetric"};
}

}  // namespace modent
