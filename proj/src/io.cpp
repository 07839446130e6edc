#include "fucik/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "fucik/error.hpp"

namespace fucik {

namespace {

double parse_number(std::string_view tok) {
  double v = 0.0;
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorKind::invalid_input, "not a number: '" + std::string(tok) + "'");
  }
  return v;
}

RealMatrix parse_json_matrix(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_input, std::string("malformed JSON matrix: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) {
    throw Error(ErrorKind::invalid_input, "JSON matrix needs a \"rows\" array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& r : j["rows"]) {
    if (!r.is_array()) throw Error(ErrorKind::invalid_input, "each row must be an array");
    std::vector<double> row;
    for (const auto& x : r) {
      if (!x.is_number()) throw Error(ErrorKind::invalid_input, "matrix entries must be numbers");
      row.push_back(x.get<double>());
    }
    rows.push_back(std::move(row));
  }
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() != static_cast<long long>(rows.size())) {
      throw Error(ErrorKind::invalid_input, "\"n\" does not match the number of rows");
    }
  }
  return RealMatrix::from_rows(rows);
}

RealMatrix parse_text_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  if (!(in >> tok)) throw Error(ErrorKind::invalid_input, "empty matrix input");
  long long n = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || n <= 0) {
    throw Error(ErrorKind::invalid_input, "first token must be a positive dimension, got '" + tok + "'");
  }
  std::vector<double> values;
  while (in >> tok) values.push_back(parse_number(tok));
  if (values.size() != static_cast<std::size_t>(n * n)) {
    throw Error(ErrorKind::invalid_input, "expected " + std::to_string(n * n) + " entries, got " +
                                              std::to_string(values.size()));
  }
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)].assign(values.begin() + i * n, values.begin() + (i + 1) * n);
  }
  return RealMatrix::from_rows(rows);
}

Json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return round12(x);
}

// Column signs fixed so the largest-magnitude entry is positive.
Json basis_json(const Matrix& basis) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    Vector c = basis.col(k);
    Eigen::Index imax = 0;
    c.cwiseAbs().maxCoeff(&imax);
    if (c(imax) < 0) c = -c;
    out.push_back(to_json(c));
  }
  return out;
}

Json quadrants_json(const std::vector<Quadrant>& qs) {
  Json out = Json::array();
  for (Quadrant q : qs) out.push_back(to_string(q));
  return out;
}

Json signs_json(const std::vector<int>& s) {
  std::string str;
  for (int x : s) str += x > 0 ? '+' : '-';
  return str;
}

std::string fmt(double x, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

RealMatrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw Error(ErrorKind::invalid_input, "empty matrix input");
  return text[first] == '{' ? parse_json_matrix(text) : parse_text_matrix(text);
}

RealMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  if (std::abs(x) < 1e-12) return 0.0;  // rounding noise around exact zeros
  return std::stod(fmt(x));
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Json to_json(const SpectralData& sd) {
  Json list = Json::array();
  for (const auto& e : sd.eigenvalues) {
    list.push_back({{"lambda", number(e.lambda)},
                    {"algebraic", e.algebraic_mult},
                    {"geometric", e.geometric_mult},
                    {"kernel_basis", basis_json(e.kernel_basis)},
                    {"adjoint_kernel_basis", basis_json(e.adjoint_kernel_basis)}});
  }
  return {{"eigenvalues", list}};
}

Json to_json(const TangentDirection& d) {
  Json nd = {{"status", to_string(d.nondegeneracy.status)}};
  switch (d.nondegeneracy.status) {
    case Nondegeneracy::Status::holds:
      nd["sigma_min"] = number(d.nondegeneracy.sigma_min);
      break;
    case Nondegeneracy::Status::fails:
      nd["sigma_min"] = number(d.nondegeneracy.sigma_min);
      nd["witness_w"] = to_json(d.nondegeneracy.witness_w);
      nd["witness_c"] = number(d.nondegeneracy.witness_c);
      break;
    case Nondegeneracy::Status::not_applicable:
      nd["reason"] = d.nondegeneracy.reason;
      break;
  }
  Json out = {{"eta0", number(d.eta0)},     {"slope", number(d.slope)},        {"u0", to_json(d.u0)},
              {"coeffs", to_json(d.coeffs)}, {"pattern", d.pattern.str()},     {"nondegeneracy", nd},
              {"quadrants", quadrants_json(d.quadrants())}, {"residual", number(d.residual)}};
  if (d.continuum) out["continuum"] = true;
  return out;
}

Json to_json(const OneSidedTangents& os) {
  Json entries = Json::array();
  for (const auto* side : {&os.plus, &os.minus}) {
    for (const auto& e : *side) {
      entries.push_back({{"side", to_string(e.side)},
                         {"eta0", number(e.eta0)},
                         {"slope", number(e.slope)},
                         {"quadrants", quadrants_json(e.quadrants)},
                         {"z0", to_json(e.z0)},
                         {"u1", to_json(e.u1)},
                         {"residual", number(e.residual)}});
    }
  }
  Json vanishing = Json::array();
  for (const auto& v : os.vanishing) {
    vanishing.push_back({{"side", to_string(v.side)},
                         {"zero_signs", signs_json(v.zero_signs)},
                         {"eta_lo", number(v.eta_lo)},
                         {"eta_hi", number(v.eta_hi)}});
  }
  Json out = {{"class", to_string(os.degeneracy)},
              {"u0", to_json(os.u0)},
              {"generalized_eigenvector", to_json(os.generalized_eigenvector)},
              {"entries", entries}};
  if (!vanishing.empty()) out["vanishing_branches"] = vanishing;
  return out;
}

Json to_json(const EigenvalueAnalysis& ea) {
  Json dirs = Json::array();
  bool continuum = false;
  for (const auto& d : ea.directions) {
    dirs.push_back(to_json(d));
    continuum = continuum || d.continuum;
  }
  Json defective = Json::array();
  for (const auto& da : ea.defective) {
    Json item = {{"u0", to_json(da.u0)}, {"class", to_string(da.verdict)}};
    if (da.case1) item["direction"] = to_json(*da.case1);
    if (da.one_sided) item["one_sided"] = to_json(*da.one_sided);
    defective.push_back(item);
  }
  Json out = {{"lambda", number(ea.eigenspace.lambda)},
              {"algebraic", ea.eigenspace.algebraic_mult},
              {"geometric", ea.eigenspace.geometric_mult},
              {"directions", dirs}};
  if (continuum) out["continuum"] = true;
  if (!defective.empty()) out["defective"] = defective;
  return out;
}

Json to_json(const CrossCheck& cc) {
  Json rows = Json::array();
  for (const auto& r : cc.rows) {
    Json row = {{"side", to_string(r.ray.side)},
                {"predicted_slope", number(r.ray.slope)},
                {"eta0", number(r.ray.eta0)},
                {"source", r.ray.source}};
    if (r.estimate) {
      row["estimated_slope"] = number(r.estimate->slope);
      row["error"] = number(r.error);
    }
    row["ok"] = r.ok;
    rows.push_back(row);
  }
  Json unmatched = Json::array();
  for (const auto& e : cc.unmatched) {
    unmatched.push_back({{"side", to_string(e.side)}, {"estimated_slope", number(e.slope)}});
  }
  return {{"rows", rows}, {"unmatched_estimates", unmatched}, {"ok", cc.ok()}};
}

void write_csv(std::ostream& out, const FucikPointSet& set) {
  const int n = set.points.empty() ? 0 : static_cast<int>(set.points.front().u.size());
  out << "alpha,beta,pattern,residual";
  for (int i = 1; i <= n; ++i) out << ",u_" << i;
  out << '\n';
  for (const auto& p : set.points) {
    out << fmt(p.alpha) << ',' << fmt(p.beta) << ',' << p.pattern.str() << ',' << fmt(p.residual, "%.3e");
    for (Eigen::Index i = 0; i < p.u.size(); ++i) out << ',' << fmt(p.u(i));
    out << '\n';
  }
}

void write_svg(std::ostream& out, const FucikPointSet& set, const TraceWindow& w,
               const std::vector<RayOverlay>& overlays) {
  constexpr double size = 600.0;
  auto sx = [&](double a) { return (a - w.alpha_min) / (w.alpha_max - w.alpha_min) * size; };
  auto sy = [&](double b) { return size - (b - w.beta_min) / (w.beta_max - w.beta_min) * size; };
  auto f = [](double x) { return fmt(x, "%.3f"); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double lo = std::max(w.alpha_min, w.beta_min);
  const double hi = std::min(w.alpha_max, w.beta_max);
  if (lo < hi) {
    out << "<line x1=\"" << f(sx(lo)) << "\" y1=\"" << f(sy(lo)) << "\" x2=\"" << f(sx(hi)) << "\" y2=\""
        << f(sy(hi)) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  }
  for (const auto& br : set.branches) {
    out << "<polyline fill=\"none\" stroke=\"darkorange\" stroke-width=\"1.5\" data-pattern=\"" << br.pattern.str()
        << "\" points=\"";
    for (std::size_t k = 0; k < br.indices.size(); ++k) {
      const auto& p = set.points[static_cast<std::size_t>(br.indices[k])];
      out << (k ? " " : "") << f(sx(p.alpha)) << ',' << f(sy(p.beta));
    }
    out << "\"/>\n";
  }
  const double len = 0.15 * std::min(w.alpha_max - w.alpha_min, w.beta_max - w.beta_min);
  for (const auto& ov : overlays) {
    for (const auto& r : ov.rays) {
      // Direction (eta + 1, eta - 1) scaled by the sign of eps.
      double da = 0.0, db = 0.0;
      if (std::isinf(r.slope)) {
        db = -1.0;
      } else {
        da = 1.0 / std::sqrt(1.0 + r.slope * r.slope);
        db = r.slope * da;
        // plus side lies below the diagonal
        if (db > da) {
          da = -da;
          db = -db;
        }
      }
      if (r.side == Side::minus) {
        da = -da;
        db = -db;
      }
      out << "<line x1=\"" << f(sx(ov.lambda)) << "\" y1=\"" << f(sy(ov.lambda)) << "\" x2=\""
          << f(sx(ov.lambda + len * da)) << "\" y2=\"" << f(sy(ov.lambda + len * db))
          << "\" stroke=\"black\" stroke-width=\"1\"" << (r.optional ? " stroke-dasharray=\"2 2\"" : "") << "/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace fucik
