#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace modent {

/// Raised for malformed chain descriptions, site indices and sweep grids.
class InvalidSpec : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine cannot produce a trustworthy result.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// 1-based lattice site, following the usual C_{1,n_t} labelling.
struct Site {
    std::size_t index = 1;

    constexpr std::size_t zero_based() const { return index - 1; }
    friend constexpr bool operator==(Site, Site) = default;
    friend constexpr auto operator<=>(Site, Site) = default;
};

/// Nearest-neighbour couplings J_{i,i+1} (units of the bulk coupling J).
/// Entry k couples sites k+1 and k+2; a chain of n_t sites carries n_t-1 entries.
class CouplingVector {
  public:
    explicit CouplingVector(std::vector<double> couplings);

    std::span<const double> values() const& { return couplings_; }
    std::span<const double> values() const&& = delete;
    std::size_t bonds() const { return couplings_.size(); }
    std::size_t sites() const { return couplings_.size() + 1; }
    double operator[](std::size_t bond) const { return couplings_[bond]; }

    friend bool operator==(const CouplingVector&, const CouplingVector&) = default;

  private:
    std::vector<double> couplings_;
};

/// N identical moduli of n sites. Inside a modulus the two end bonds are
/// `end_bond` and the bulk bonds are 1; neighbouring moduli are joined by
/// `inter_modulus`.
struct ModularPattern {
    int moduli = 1;
    int sites_per_modulus = 2;
    double end_bond = 1.0;
    double inter_modulus = 0.0;

    std::size_t total_sites() const {
        return static_cast<std::size_t>(moduli) * static_cast<std::size_t>(sites_per_modulus);
    }
    friend bool operator==(const ModularPattern&, const ModularPattern&) = default;
};

/// Either a modular pattern or an explicit coupling list.
class ChainSpec {
  public:
    /// Single two-site modulus with lambda = 1.
    ChainSpec() : form_(ModularPattern{}) {}

    static ChainSpec pattern(int moduli, int sites_per_modulus, double end_bond, double inter_modulus);
    static ChainSpec pattern(const ModularPattern& p);
    static ChainSpec explicit_couplings(std::vector<double> couplings);

    bool is_pattern() const { return std::holds_alternative<ModularPattern>(form_); }
    const ModularPattern& modular() const;
    const CouplingVector& couplings_list() const;

    std::size_t total_sites() const;

    friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

  private:
    explicit ChainSpec(std::variant<ModularPattern, CouplingVector> form) : form_(std::move(form)) {}
    std::variant<ModularPattern, CouplingVector> form_;
};

/// Throws InvalidSpec unless n >= 2, N >= 1, end bond > 0 and inter-modulus >= 0 (all finite).
void validate(const ModularPattern& p);

CouplingVector build_couplings(const ModularPattern& p);
CouplingVector build_couplings(const ChainSpec& spec);

struct MirrorCheck {
    bool symmetric = true;
    /// 0-based bond index of the first mismatching pair, if any.
    std::optional<std::size_t> first_mismatch;
    std::string diagnostic;
};

inline constexpr double kMirrorTolerance = 1e-12;

/// c_k == c_{n_t-k} for all bonds. Asymmetric chains are legal input; end-to-end
/// entanglement is then expected to vanish, so callers surface a warning.
MirrorCheck validate_mirror_symmetry(const CouplingVector& c, double tolerance = kMirrorTolerance);

}  // namespace modent
