#pragma once

// Matrix input and report serialization (JSON, CSV, SVG).
//
// Matrix files: either a JSON object {"n": 3, "rows": [[...], ...]} or plain
// text whose first token is n followed by n*n numbers in row order.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fucik/analysis.hpp"
#include "fucik/core_linalg.hpp"
#include "fucik/degenerate_solver.hpp"
#include "fucik/spectrum_tracer.hpp"
#include "fucik/tangent_solver.hpp"

namespace fucik {

using Json = nlohmann::ordered_json;

/// Throws ErrorKind::invalid_input on malformed input.
RealMatrix parse_matrix(const std::string& text);
RealMatrix read_matrix_file(const std::string& path);

/// Rounds to 12 significant digits so printed output is stable; |x| < 1e-12
/// prints as 0.
double round12(double x);

Json to_json(const Vector& v);
Json to_json(const SpectralData& sd);
Json to_json(const TangentDirection& d);
Json to_json(const OneSidedTangents& os);
Json to_json(const EigenvalueAnalysis& ea);
Json to_json(const CrossCheck& cc);

/// CSV with header alpha,beta,pattern,residual,u_1..u_n.
void write_csv(std::ostream& out, const FucikPointSet& set);

/// Polylines of every branch, the diagonal, and a short segment along each
/// predicted ray at its eigenvalue.
struct RayOverlay {
  double lambda = 0.0;
  std::vector<PredictedRay> rays;
};

void write_svg(std::ostream& out, const FucikPointSet& set, const TraceWindow& window,
               const std::vector<RayOverlay>& overlays);

}  // namespace fucik
