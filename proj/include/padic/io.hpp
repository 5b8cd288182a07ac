#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "padic/bases.hpp"
#include "padic/evolution.hpp"
#include "padic/fourier.hpp"
#include "padic/grid_function.hpp"
#include "padic/operators.hpp"

namespace padic {

/// Filesystem failure with the offending path attached.
class IoError : public std::runtime_error {
  public:
    IoError(std::string path, const std::string& message)
        : std::runtime_error(message + ": " + path), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

/// Writes via a temporary file in the same directory plus rename, so readers
/// never observe a half-written file.
void atomic_write_text(const std::string& path, const std::string& contents);
std::string read_text(const std::string& path);

// -- function files ------------------------------------------------------------
// JSON document with p, r, l, backend and the value vector in canonical
// coset order: exact values as ["a","b"] rational-string pairs (a + b sqrt p),
// float values as [re, im]. Bytes are deterministic for a fixed input.

void write_function(const std::string& path, const ExactFunction& f);
void write_function(const std::string& path, const ComplexFunction& f);

using LoadedFunction = std::variant<ExactFunction, ComplexFunction>;
LoadedFunction read_function(const std::string& path);

// -- spectrum files ------------------------------------------------------------
// Same layout with a "role": "frequencies" marker; always float.

void write_spectrum(const std::string& path, const Spectrum& spectrum);
Spectrum read_spectrum(const std::string& path);

// -- kernel files ----------------------------------------------------------------
// {p, gamma_min, gamma_max, scales: [{gamma, default, overrides: [{n, value}]}]};
// coefficients as rational strings (JSON numbers are accepted and converted
// exactly from their binary value).

void write_kernel_spec(const std::string& path, const KernelSpec& spec);
KernelSpec read_kernel_spec(const std::string& path);

// -- basis dumps -----------------------------------------------------------------
// One record per element: kind, gamma, n (rational string), label,
// eigenvalue (null when not attached) and the value vector.

std::string basis_kind_name(BasisKind kind);
void write_basis_json(const std::string& path, const BasisSet& basis);
void write_basis_csv(const std::string& path, const BasisSet& basis);

/// Eigenvalue table without value vectors, for the spectrum command.
void write_eigenvalue_table_csv(const std::string& path, const BasisSet& basis);
void write_eigenvalue_table_json(const std::string& path, const BasisSet& basis);

// -- time series -----------------------------------------------------------------
// Snapshots: header t, then one column per coset in canonical order.
// Survival: header t,s. Floats rendered with 17 significant digits.

void write_snapshots_csv(const std::string& path, const EvolutionRun& run);
void write_snapshots_json(const std::string& path, const EvolutionRun& run);
void write_snapshots_svg(const std::string& path, const EvolutionRun& run);

void write_survival_csv(const std::string& path, const EvolutionRun& run, const std::vector<double>& series);
void write_survival_json(const std::string& path, const EvolutionRun& run, const std::vector<double>& series);
void write_survival_svg(const std::string& path, const EvolutionRun& run, const std::vector<double>& series);

}  // namespace padic
