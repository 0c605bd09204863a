#ifndef DIRAC_PAULI_CLI_HPP
#define DIRAC_PAULI_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dirac_pauli/core_model.hpp"
#include "dirac_pauli/spectrum.hpp"

namespace dirac_pauli::cli {

enum class Command { Spectrum, Wavefunction, Verify, Figures, Sweep };
enum class Format { Csv, Json };
enum class SweepParameter { A, B, Mu };

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int verification_failure = 1;
inline constexpr int invalid_manifest = 2;
inline constexpr int construction_error = 3;
}  // namespace exit_code

/// Fully resolved run description. Optional fields are filled with
/// command-specific defaults at execution time.
struct RunManifest {
    Command command = Command::Spectrum;
    FieldConfig cfg{1.0, 1.0, 0.001};
    Branch branch = Branch::Plus;
    std::optional<Convention> convention;
    int n = 0;
    int ell = 0;
    std::optional<int> n_max;
    std::optional<int> ell_max;
    int which = 1;
    SweepParameter sweep_parameter = SweepParameter::A;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<int> steps;
    Format format = Format::Csv;
    PartnerMode partner = PartnerMode::RelationDerived;
    std::optional<std::string> out;

    // Figures use their own fixed a/b/mu unless these were given explicitly.
    bool a_given = false;
    bool b_given = false;
    bool mu_given = false;
};

/// Parses arguments (without the program name) and runs. Output goes to `out`
/// unless the manifest names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already validated manifest.
int execute(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace dirac_pauli::cli

#endif  // DIRAC_PAULI_CLI_HPP
