#ifndef DIRAC_PAULI_SPECTRUM_HPP
#define DIRAC_PAULI_SPECTRUM_HPP

#include <array>
#include <string>
#include <vector>

#include "dirac_pauli/core_model.hpp"

namespace dirac_pauli {

/// Coefficients of the shared radial equation
///   y'' + (3/r) y' + r^{-2} (-c1 r - c2^2 r^2 - c3sq) y = 0
/// with L = sqrt(1 + c3sq).
struct CanonicalRadialODE {
    double c1;
    double c2;
    double c3sq;
    double L;
    Branch branch;
    Convention convention;
};

/// Constant term c3sq for the given branch/convention. Depends on b, mu, ell only.
[[nodiscard]] double constant_coefficient(const FieldConfig& cfg, int ell, Branch branch,
                                          Convention conv);

/// L = sqrt(1 + c3sq); throws ComplexExponentError when 1 + c3sq <= 0.
[[nodiscard]] double angular_exponent(const FieldConfig& cfg, int ell, Branch branch,
                                      Convention conv);

/// c2 = mu*a (PaperLiteral) or |mu*a|. Not validated.
[[nodiscard]] double decay_rate(const FieldConfig& cfg, Convention conv) noexcept;

/// Builds the radial equation at trial energy epsilon.
/// Throws ComplexExponentError (1 + c3sq <= 0) or NonNormalizableError (c2 <= 0).
[[nodiscard]] CanonicalRadialODE coefficients(const FieldConfig& cfg, const QuantumNumbers& qn,
                                              Branch branch, double epsilon, Convention conv);

/// Closed-form bound-state energy.
///
/// PaperLiteral evaluates the literal level formulas
///   Plus:  eps = -mu a (n - ell - 1 + L + mu b)
///   Minus: eps =  mu a (n + ell + 2 + L + mu b)
/// without requiring a normalizable state. The other conventions solve
/// c1(eps) = -2 c2 (n + L + 1/2) with c2 = |mu a|.
[[nodiscard]] double energy_level(const FieldConfig& cfg, const QuantumNumbers& qn, Branch branch,
                                  Convention conv);

enum class StateKind { Particle, Antiparticle, Threshold };

[[nodiscard]] StateKind classify_state(double epsilon) noexcept;
[[nodiscard]] std::string_view to_string(StateKind kind) noexcept;

/// Closed-form normalization: the omega coefficients and the constant N.
struct NormalizationData {
    double omega1p;
    double omega2p;
    double omega1;
    double omega2;
    double omega3;
    double N;
};

/// How the second radial component is obtained from the closed-form first one.
///  - RelationDerived: from the first-order relation that defines it
///    (plus: G = r[F' + (mu E - ell/r) F]; minus: F = r[G' - (mu E + ell/r) G]).
///  - PaperLiteral: the literal closed-form expression, which equals r times the derivative
///    of the first component.
enum class PartnerMode { RelationDerived, PaperLiteral };

[[nodiscard]] std::string_view to_string(PartnerMode mode) noexcept;

/// A bound state with its closed-form energy and radial equation.
///
/// `norm` holds the closed-form normalization data; `amplitude` is the
/// constant actually used by the wavefunctions, obtained by quadrature with
/// the relation-derived partner so that the state integrates to one.
struct BoundState {
    FieldConfig cfg;
    Branch branch;
    QuantumNumbers qn;
    double energy;
    CanonicalRadialODE ode;
    NormalizationData norm;
    double amplitude;
};

[[nodiscard]] BoundState make_bound_state(const FieldConfig& cfg, const QuantumNumbers& qn,
                                          Branch branch, Convention conv);

/// c1 + 2 c2 (n + L + 1/2), relative to |c1|.
[[nodiscard]] double quantization_residual(const BoundState& state);

[[nodiscard]] NormalizationData normalization_closed(const FieldConfig& cfg, const QuantumNumbers& qn,
                                                     const CanonicalRadialODE& ode);

/// N such that the integral of (upper^2 + partner^2) r^2 over (0, inf) is one.
/// Uses an m-point Gauss-Laguerre rule in z = 2 c2 r with alpha = 2L; the
/// default m = n + 3 already integrates the polynomial part exactly.
[[nodiscard]] double normalization_numeric(const BoundState& state, PartnerMode mode, int m = 0);

/// Value and first two derivatives in r.
using RadialJet = std::array<double, 3>;

/// N r^{L-1} e^{-c2 r} L_n^{2L}(2 c2 r): F+ on the plus branch, G- on the minus branch.
[[nodiscard]] double wavefunction_upper(const BoundState& state, double r);
[[nodiscard]] RadialJet upper_jet(const BoundState& state, double r);

/// The other radial component: G+ on the plus branch, F- on the minus branch.
[[nodiscard]] double wavefunction_partner(const BoundState& state, double r,
                                          PartnerMode mode = PartnerMode::RelationDerived);
/// Value and first derivative of the partner.
[[nodiscard]] std::array<double, 2> partner_jet(const BoundState& state, double r, PartnerMode mode);

/// Partner divided by N r^{L-1} e^{-c2 r}, as a function of z = 2 c2 r. Regular at z = 0.
[[nodiscard]] double partner_reduced(const BoundState& state, double z, PartnerMode mode);

struct ScanEntry {
    QuantumNumbers qn;
    double energy;
};

struct ScanFailure {
    QuantumNumbers qn;
    std::string reason;
};

struct DegeneracyReport {
    std::vector<ScanEntry> states;                    // ordered by (n, ell)
    std::vector<ScanFailure> failures;                // ordered by (n, ell)
    std::vector<std::vector<QuantumNumbers>> groups;  // energies equal within tol
    int max_multiplicity = 0;
};

/// All (n, ell) with n <= n_max, ell <= ell_max (both <= 64).
[[nodiscard]] DegeneracyReport degeneracy_scan(const FieldConfig& cfg, Branch branch, Convention conv,
                                               int n_max, int ell_max, double tol);

}  // namespace dirac_pauli

#endif  // DIRAC_PAULI_SPECTRUM_HPP
