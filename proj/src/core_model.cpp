#include "dirac_pauli/core_model.hpp"

#include <cmath>
#include <string>

namespace dirac_pauli {

FieldConfig::FieldConfig(double a_, double b_, double mu_) : a(a_), b(b_), mu(mu_) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(mu))
        throw DomainError("FieldConfig: a, b and mu must be finite");
}

QuantumNumbers::QuantumNumbers(int n, int ell) : n_(n), ell_(ell) {
    if (n < 0 || ell < 0)
        throw DomainError("QuantumNumbers: n and ell must be non-negative");
}

Convention default_convention(Branch branch) noexcept {
    return branch == Branch::Plus ? Convention::SignAware : Convention::CorrectedMinus;
}

std::string_view to_string(Branch branch) noexcept {
    return branch == Branch::Plus ? "plus" : "minus";
}

std::string_view to_string(Convention convention) noexcept {
    switch (convention) {
        case Convention::PaperLiteral: return "paper-literal";
        case Convention::SignAware: return "sign-aware";
        case Convention::CorrectedMinus: return "corrected-minus";
    }
    return "unknown";
}

double electric_field(const FieldConfig& cfg, double r) {
    if (!(r > 0.0))
        throw DomainError("electric_field: r must be positive");
    return cfg.a + cfg.b / r;
}

double mass_profile(Branch branch, double epsilon, double r, double integration_constant) {
    if (!(r > 0.0))
        throw DomainError("mass_profile: r must be positive");
    const double sign = branch == Branch::Plus ? -1.0 : 1.0;
    return -1.0 / r + sign * epsilon + integration_constant;
}

double mass_ode_check(Branch branch, double epsilon, double r, double h) {
    if (!(h > 0.0) || !(r > h))
        throw DomainError("mass_ode_check: requires r > h > 0");
    const double dm = (mass_profile(branch, epsilon, r + h) -
                       mass_profile(branch, epsilon, r - h)) / (2.0 * h);
    const double m = mass_profile(branch, epsilon, r);
    const double shifted = branch == Branch::Plus ? epsilon + m : epsilon - m;
    return std::abs(dm - shifted * shifted);
}

}  // namespace dirac_pauli
