#ifndef DIRAC_PAULI_CORE_MODEL_HPP
#define DIRAC_PAULI_CORE_MODEL_HPP

#include <string_view>

#include "dirac_pauli/errors.hpp"

namespace dirac_pauli {

/// Central electric field E(r) = a + b/r acting on a neutral particle with
/// anomalous magnetic moment mu. Natural units (hbar = c = 1).
struct FieldConfig {
    double a = 0.0;
    double b = 0.0;
    double mu = 0.0;

    /// Throws DomainError unless all three parameters are finite.
    FieldConfig(double a_, double b_, double mu_);
    FieldConfig() = default;
};

/// Radial (Laguerre) degree n and orbital quantum number ell.
class QuantumNumbers {
public:
    QuantumNumbers(int n, int ell);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int ell() const noexcept { return ell_; }

    friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;

private:
    int n_;
    int ell_;
};

/// Plus: the (F+, G+) solution family; Minus: the (F-, G-) family.
enum class Branch { Plus, Minus };

/// How sign ambiguities of the closed forms are resolved.
///  - PaperLiteral: closed forms taken verbatim (decay rate mu*a, literal minus-branch constant term).
///  - SignAware: decay rate |mu*a|, energy solved from the quantization relation.
///  - CorrectedMinus: SignAware plus the sign-repaired constant term of the
///    minus-branch equation. Identical to SignAware on the plus branch.
enum class Convention { PaperLiteral, SignAware, CorrectedMinus };

[[nodiscard]] Convention default_convention(Branch branch) noexcept;

[[nodiscard]] std::string_view to_string(Branch branch) noexcept;
[[nodiscard]] std::string_view to_string(Convention convention) noexcept;

/// E(r) = a + b/r.
[[nodiscard]] double electric_field(const FieldConfig& cfg, double r);

/// Energy-dependent effective mass. The plus branch solves dM/dr = (eps + M)^2,
/// the minus branch dM/dr = (eps - M)^2:
///   Plus:  M(r) = -1/r - eps + constant
///   Minus: M(r) = -1/r + eps + constant
[[nodiscard]] double mass_profile(Branch branch, double epsilon, double r,
                                  double integration_constant = 0.0);

/// |centered difference of M at r - (eps +/- M(r))^2|. Second order in h.
[[nodiscard]] double mass_ode_check(Branch branch, double epsilon, double r, double h);

}  // namespace dirac_pauli

#endif  // DIRAC_PAULI_CORE_MODEL_HPP
