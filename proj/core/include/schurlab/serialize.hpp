#pragma once

// JSON and CSV renderings. Exact integers are always written as decimal
// strings; floats use round-trip precision.

#include <string>
#include <vector>

#include "schurlab/asymptotics.hpp"
#include "schurlab/identities.hpp"
#include "schurlab/probability.hpp"
#include "schurlab/qseries.hpp"
#include "schurlab/suite.hpp"

namespace schurlab {

inline constexpr int kSchemaVersion = 1;

/// Round-trip decimal rendering of a double.
std::string format_double(double v);

/// {"schema_version", "offset24", "trunc", "exact", "coeffs": [decimal strings]}.
std::string series_to_json(const QSeries& s, int indent = -1);
QSeries series_from_json(const std::string& text);

std::string report_to_json(const VerificationReport& r, int indent = 2);
std::string simulation_to_json(const SimulationReport& r, int indent = 2);
std::string convergence_to_json(const std::vector<ConvergenceRow>& rows, int indent = 2);
std::string suite_to_json(const std::vector<CriterionResult>& results, int indent = 2);

/// Columns: n, value.
std::string coefficients_to_csv(const std::vector<BigInt>& coeffs, long first_exponent = 0);
/// Columns: n, exact_log, estimate_log, ratio.
std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows);
/// Columns: quantity, hits, trials, estimate, stderr, target, z.
std::string simulation_to_csv(const SimulationReport& r);

}  // namespace schurlab
