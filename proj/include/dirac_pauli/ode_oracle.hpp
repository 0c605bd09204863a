#ifndef DIRAC_PAULI_ODE_ORACLE_HPP
#define DIRAC_PAULI_ODE_ORACLE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dirac_pauli/spectrum.hpp"

namespace dirac_pauli {

enum class ResidualMode { CanonicalODE, FirstOrderSystem };

/// Pointwise residuals of a differential relation on a radial grid.
/// `max_rel` and `rms_rel` are taken over |residual| / local scale, where the
/// local scale is the largest magnitude among the relation's individual terms.
struct ResidualReport {
    std::vector<double> grid;
    std::vector<double> residuals;
    double max_rel = 0.0;
    double rms_rel = 0.0;
    ResidualMode mode = ResidualMode::CanonicalODE;
};

/// `n` log-spaced points in [lo, hi].
[[nodiscard]] std::vector<double> log_grid(double lo, double hi, int n);

/// 200 log-spaced points in [0.05, 40 / c2].
[[nodiscard]] std::vector<double> standard_grid(const CanonicalRadialODE& ode);

/// y'' + (3/r) y' + r^{-2}(-c1 r - c2^2 r^2 - c3sq) y for the jet returned by `y`.
[[nodiscard]] ResidualReport canonical_residual(const CanonicalRadialODE& ode,
                                                const std::function<RadialJet(double)>& y,
                                                const std::vector<double>& grid);

/// Canonical residual of the state's closed-form upper component under `ode`
/// (normally `state.ode`; pass a perturbed equation to probe sensitivity).
[[nodiscard]] ResidualReport canonical_residual(const CanonicalRadialODE& ode, const BoundState& state,
                                                const std::vector<double>& grid);

/// Residuals of the two first-order radial relations.
///  - `defining`: the relation used to build the partner in RelationDerived
///    mode (plus: (d/dr + mu E - ell/r) F = -(eps + M) G;
///          minus: (d/dr - mu E - ell/r) G = (eps - M) F).
///  - `complementary`: the other one
///    (plus: (d/dr - mu E + (ell+2)/r) G = (eps - M) F;
///     minus: (d/dr + mu E - (ell+2)/r) F = -(eps + M) G).
struct FirstOrderReport {
    ResidualReport defining;
    ResidualReport complementary;
};

[[nodiscard]] FirstOrderReport first_order_residual(const BoundState& state, PartnerMode mode,
                                                    const std::vector<double>& grid);

/// Integral of (upper^2 + partner^2) r^2 over (0, inf) with the state's
/// amplitude, by adaptive Gauss-Kronrod quadrature of the sampled wavefunctions.
[[nodiscard]] double normalization_integral(const BoundState& state, PartnerMode mode);

struct ShootingResult {
    double energy;
    double bracket_lo;
    double bracket_hi;
    int bisections;
    int node_count;
};

using OdeFamily = std::function<CanonicalRadialODE(double)>;

/// Finds the n-th eigenvalue of the canonical equation by outward shooting.
///
/// Integration runs in x = c2 r on u = x^{-(L-1)} y, which removes the
/// singular r^{L-1} factor. It starts at x0 = 1e-3 from the regular Frobenius
/// series u = 1 + c1 x / (c2 (2L + 1)) + ..., summed to roundoff, and stops at
/// x = 40, or further out for large n + L, once e^{-2x} x^{2n+2L+1} < e^{-40}.
/// Error control is purely relative. The sign of u there
/// separates energies on either side of an eigenvalue; bisection continues
/// until the bracket is narrower than tol |eps|.
///
/// Throws BracketError when the endpoints give the same sign and
/// WrongStateError when the converged state does not have n nodes.
[[nodiscard]] ShootingResult shoot_eigenvalue(const OdeFamily& family, int n, double lo, double hi,
                                              double tol);

struct SpectrumComparison {
    QuantumNumbers qn;
    double closed = 0.0;
    double shot = 0.0;
    double rel_diff = 0.0;
    int node_count = -1;
    std::optional<std::string> error;

    [[nodiscard]] bool passed(double threshold = 1e-6) const {
        return !error && rel_diff <= threshold && node_count == qn.n();
    }
};

/// Shooting vs closed-form energies for every (n, ell) up to the bounds.
/// Each bracket is the closed-form energy +/- min(20% |eps|, 0.45 c2);
/// adjacent levels are c2 apart, so the wider +/-20% would admit neighbours.
[[nodiscard]] std::vector<SpectrumComparison> compare_spectrum(const FieldConfig& cfg, Branch branch,
                                                               Convention conv, int n_max, int ell_max);

}  // namespace dirac_pauli

#endif  // DIRAC_PAULI_ODE_ORACLE_HPP
