// fucik: spectral data, tangent directions and traced Fucik curves of a real matrix.
//
//   fucik eigen    --fixture A1
//   fucik tangents --file m.json --lambda 3
//   fucik trace    --fixture A1 --window -1 6 -1 6 --grid 400 --svg a1.svg
//   fucik verify   A5
//
// Exit codes: 0 ok, 2 input error, 3 spectral precondition, 4 capacity,
// 5 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "fucik/analysis.hpp"
#include "fucik/error.hpp"
#include "fucik/fixtures.hpp"
#include "fucik/io.hpp"
#include "fucik/verify.hpp"

namespace {

using namespace fucik;

constexpr int kExitInput = 2;
constexpr int kExitSpectral = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitVerify = 5;

struct Source {
  std::string fixture;
  std::string file;
};

struct Options {
  Source src;
  std::optional<double> lambda;
  std::vector<double> window;
  int grid = 400;
  std::string svg;
  std::string csv;
  std::string json;
  std::optional<double> tol;
  std::string verify_name;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input: return kExitInput;
    case ErrorKind::capacity: return kExitCapacity;
    default: return kExitSpectral;
  }
}

int thread_count() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("FUCIK_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
  }
  return n;
}

Tolerances tolerances(const Options& o) {
  Tolerances t;
  if (o.tol) t.tol_residual = *o.tol;
  t.validate();
  return t;
}

RealMatrix load(const Source& s) {
  if (!s.fixture.empty() && !s.file.empty()) {
    throw Error(ErrorKind::invalid_input, "give either --fixture or --file, not both");
  }
  if (!s.fixture.empty()) return fixture(s.fixture).matrix;
  if (!s.file.empty()) return read_matrix_file(s.file);
  throw Error(ErrorKind::invalid_input, "no matrix given (use --fixture NAME or --file PATH)");
}

void emit(const Json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_input, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

// Eigenvalue from the spectrum nearest to the requested lambda, or an
// eigenspace computed directly at lambda.
Eigenspace resolve_lambda(const RealMatrix& a, double lambda, const Tolerances& tol) {
  const SpectralData sd = spectral_data(a, tol);
  if (const Eigenspace* e = sd.find(lambda, 1e-6 * (1.0 + std::abs(lambda)))) return *e;
  return eigenspace_at(a, lambda, tol);
}

int cmd_eigen(const Options& o) {
  const RealMatrix a = load(o.src);
  emit(to_json(spectral_data(a, tolerances(o))), o.json);
  return 0;
}

int cmd_tangents(const Options& o) {
  const RealMatrix a = load(o.src);
  const Tolerances tol = tolerances(o);
  const Eigenspace es = resolve_lambda(a, *o.lambda, tol);
  emit(to_json(analyze_eigenvalue(a, es, tol)), o.json);
  return 0;
}

int cmd_trace(const Options& o) {
  const RealMatrix a = load(o.src);
  const Tolerances tol = tolerances(o);
  const TraceWindow w{o.window[0], o.window[1], o.window[2], o.window[3], o.grid};
  w.validate();
  TraceOptions to;
  to.threads = thread_count();
  const FucikPointSet set = trace(a, w, tol, to);

  if (o.csv.empty()) {
    write_csv(std::cout, set);
  } else {
    std::ofstream out(o.csv);
    if (!out) throw Error(ErrorKind::invalid_input, "cannot write '" + o.csv + "'");
    write_csv(out, set);
  }

  // Tangent overlays and slope cross-check at eigenvalues inside the window.
  std::vector<RayOverlay> overlays;
  Json per_lambda = Json::array();
  const double radius = 0.05 * std::min(w.alpha_max - w.alpha_min, w.beta_max - w.beta_min);
  for (const auto& es : spectral_data(a, tol).eigenvalues) {
    const double l = es.lambda;
    if (l < w.alpha_min || l > w.alpha_max || l < w.beta_min || l > w.beta_max) continue;
    const EigenvalueAnalysis ea = analyze_eigenvalue(a, es, tol);
    const auto rays = predicted_rays(ea);
    overlays.push_back({l, rays});
    const auto cc = cross_validate(rays, numerical_slopes(l, set, radius), 2e-2);
    per_lambda.push_back({{"lambda", round12(l)}, {"radius", round12(radius)}, {"cross_check", to_json(cc)}});
  }

  if (!o.svg.empty()) {
    std::ofstream out(o.svg);
    if (!out) throw Error(ErrorKind::invalid_input, "cannot write '" + o.svg + "'");
    write_svg(out, set, w, overlays);
  }
  if (!o.json.empty()) {
    Json j = {{"points", set.points.size()}, {"branches", set.branches.size()}, {"eigenvalues", per_lambda}};
    emit(j, o.json);
  }
  return 0;
}

int cmd_verify(const Options& o) {
  VerifyOptions vo;
  vo.grid = o.grid;
  vo.threads = thread_count();
  const VerifyReport rep = verify_fixture(o.verify_name, tolerances(o), vo);

  std::cout << "fixture " << rep.fixture << (rep.figure_only ? " (figure-only fixture: property checks)" : "")
            << '\n';
  for (const auto& r : rep.rows) {
    std::cout << (r.pass ? "  PASS  " : "  FAIL  ") << r.check << '\n';
    if (!r.pass) std::cout << "        expected " << r.expected << "\n        got      " << r.got << '\n';
  }
  std::cout << (rep.ok() ? "pass" : "FAIL") << '\n';

  if (!o.json.empty()) {
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
      rows.push_back({{"check", r.check}, {"expected", r.expected}, {"got", r.got}, {"pass", r.pass}});
    }
    emit({{"fixture", rep.fixture}, {"figure_only", rep.figure_only}, {"rows", rows}, {"pass", rep.ok()}},
         o.json);
  }
  return rep.ok() ? 0 : kExitVerify;
}

void add_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--fixture", o.src.fixture, "Built-in matrix (As2 As3 As4 A1 ... A6)");
  cmd->add_option("--file", o.src.file, "Matrix file (JSON or text)");
  cmd->add_option("--tol", o.tol, "Override tol_residual");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangent structure of the Fucik spectrum at diagonal points"};
  app.require_subcommand(1);
  Options o;

  auto* eigen = app.add_subcommand("eigen", "Real eigenvalues, multiplicities and kernel bases");
  add_source(eigen, o);
  eigen->add_option("--json", o.json, "Write JSON here instead of stdout");

  auto* tangents = app.add_subcommand("tangents", "Tangent directions at (lambda, lambda)");
  add_source(tangents, o);
  tangents->add_option("--lambda", o.lambda, "Eigenvalue")->required();
  tangents->add_option("--json", o.json, "Write JSON here instead of stdout");

  auto* tr = app.add_subcommand("trace", "Sample the spectrum in a window (CSV on stdout)");
  add_source(tr, o);
  tr->add_option("--window", o.window, "alpha_min alpha_max beta_min beta_max")->expected(4)->required();
  tr->add_option("--grid", o.grid, "Samples per axis")->check(CLI::Range(2, 100000));
  tr->add_option("--csv", o.csv, "Write the point set here instead of stdout");
  tr->add_option("--svg", o.svg, "SVG plot with tangent overlays");
  tr->add_option("--json", o.json, "Summary with slope cross-check");

  auto* ver = app.add_subcommand("verify", "Check a fixture against its known values");
  ver->add_option("name", o.verify_name, "Fixture name")->required();
  ver->add_option("--grid", o.grid, "Trace grid for curve checks")->check(CLI::Range(2, 100000));
  ver->add_option("--tol", o.tol, "Override tol_residual");
  ver->add_option("--json", o.json, "Write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*eigen) return cmd_eigen(o);
    if (*tangents) return cmd_tangents(o);
    if (*tr) return cmd_trace(o);
    return cmd_verify(o);
  } catch (const Error& e) {
    std::cerr << "fucik: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  }
}
