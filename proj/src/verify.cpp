#include "fucik/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fucik/analysis.hpp"
#include "fucik/degenerate_solver.hpp"
#include "fucik/error.hpp"
#include "fucik/fixtures.hpp"
#include "fucik/spectrum_tracer.hpp"
#include "fucik/tangent_solver.hpp"

namespace fucik {

bool VerifyReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

namespace {

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string list(const std::vector<double>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + num(xs[i]);
  return s + "}";
}

// Distinct values, ascending; infinities compare equal to each other.
std::vector<double> distinct(std::vector<double> xs, double tol) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (!out.empty() && (out.back() == x || std::abs(out.back() - x) <= tol)) continue;
    out.push_back(x);
  }
  return out;
}

bool same_sets(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isinf(a[i]) || std::isinf(b[i])) {
      if (a[i] != b[i]) return false;
    } else if (std::abs(a[i] - b[i]) > tol) {
      return false;
    }
  }
  return true;
}

class Checker {
 public:
  Checker(const Fixture& f, const Tolerances& tol, const VerifyOptions& opt, VerifyReport& rep)
      : f_(f), tol_(tol), opt_(opt), rep_(rep) {}

  void run() {
    eigenvalues();
    for (const auto& t : f_.tangents) tangents(t);
    for (const auto& nd : f_.nondegeneracy) nondegeneracy(nd);
    for (const auto& dg : f_.degenerate) degenerate(dg);
    if (!f_.curves.empty()) curves();
    if (f_.slope_check) slopes(*f_.slope_check);
    if (f_.figure_only) figure_properties();
  }

 private:
  void add(std::string check, std::string expected, std::string got, bool pass) {
    rep_.rows.push_back({std::move(check), std::move(expected), std::move(got), pass});
  }

  void eigenvalues() {
    const SpectralData sd = spectral_data(f_.matrix, tol_);
    for (const auto& e : f_.eigenvalues) {
      const Eigenspace* found = sd.find(e.lambda, 1e-6 * (1.0 + std::abs(e.lambda)));
      std::ostringstream want, got;
      want << "(" << e.algebraic << "," << e.geometric << ")";
      if (found) got << "(" << found->algebraic_mult << "," << found->geometric_mult << ")";
      else got << "missing";
      add("eigenvalue " + num(e.lambda) + " multiplicities", want.str(), got.str(),
          found && found->algebraic_mult == e.algebraic && found->geometric_mult == e.geometric);
    }
  }

  void tangents(const ExpectedTangents& t) {
    std::vector<double> etas, slopes;
    for (const auto& d : tangent_directions(f_.matrix, t.lambda, tol_)) {
      if (d.defective) continue;
      etas.push_back(d.eta0);
      slopes.push_back(d.slope);
    }
    etas = distinct(etas, tol_.tol_dedup);
    slopes = distinct(slopes, tol_.tol_dedup);
    add("eta0 set at " + num(t.lambda), list(t.etas), list(etas), same_sets(t.etas, etas, opt_.value_tol));
    add("slopes at " + num(t.lambda), list(t.slopes), list(slopes), same_sets(t.slopes, slopes, opt_.value_tol));
  }

  void nondegeneracy(const ExpectedNondegeneracy& e) {
    const Nondegeneracy nd = check_nondegeneracy(f_.matrix, e.lambda, e.u0, e.eta0, tol_);
    const std::string want = e.holds ? "holds" : "fails";
    add("nondegeneracy at " + num(e.lambda) + ", eta0 = " + num(e.eta0), want, to_string(nd.status),
        (nd.status == Nondegeneracy::Status::holds) == e.holds);
    if (!e.holds && nd.status == Nondegeneracy::Status::fails) {
      const Vector w = nd.witness_w.normalized();
      const Vector dir = e.witness.normalized();
      const double off = (w - dir * dir.dot(w)).norm();
      add("witness direction", "residual <= " + num(opt_.value_tol), num(off),
          nd.witness_w.norm() > 0.0 && off <= opt_.value_tol);
    }
  }

  void degenerate(const ExpectedDegenerate& e) {
    const DegeneracyClass cls = classify(f_.matrix, e.lambda, e.u0, tol_);
    if (cls != DegeneracyClass::case2) {
      add("class of u0", "case2", to_string(cls), false);
      return;
    }
    const OneSidedTangents os = one_sided_tangents(f_.matrix, e.lambda, e.u0, tol_);
    add("verdict for u0 = " + vec(e.u0), e.verdict, to_string(os.degeneracy), e.verdict == to_string(os.degeneracy));
    if (os.degeneracy != DegeneracyClass::case2) return;
    for (Side side : {Side::plus, Side::minus}) {
      const auto& got = side == Side::plus ? os.plus : os.minus;
      std::vector<double> want_etas, got_etas;
      for (const auto& r : e.rows)
        if (r.side == side) want_etas.push_back(r.eta);
      for (const auto& g : got) got_etas.push_back(g.eta0);
      std::sort(want_etas.begin(), want_etas.end());
      add(std::string("eta0 ") + to_string(side) + " side", list(want_etas), list(got_etas),
          same_sets(want_etas, got_etas, opt_.value_tol));
    }
    for (const auto& r : e.rows) {
      const auto& got = r.side == Side::plus ? os.plus : os.minus;
      auto it = std::find_if(got.begin(), got.end(),
                             [&](const OneSidedEntry& g) { return std::abs(g.eta0 - r.eta) <= opt_.value_tol; });
      std::string tags;
      bool pass = false;
      if (it != got.end()) {
        for (Quadrant q : it->quadrants) tags += to_string(q);
        pass = std::find(it->quadrants.begin(), it->quadrants.end(), r.quadrant) != it->quadrants.end() &&
               (std::isinf(r.slope) ? std::isinf(it->slope) : std::abs(it->slope - r.slope) <= opt_.value_tol);
      }
      add(std::string("slope/quadrant ") + to_string(r.side) + " eta0 = " + num(r.eta),
          num(r.slope) + " " + to_string(r.quadrant), it == got.end() ? "missing" : num(it->slope) + " " + tags, pass);
    }
  }

  void curves() {
    const auto& w = *f_.curve_window;
    TraceOptions to;
    to.threads = opt_.threads;
    const FucikPointSet set = trace(f_.matrix, TraceWindow{w[0], w[1], w[2], w[3], opt_.grid}, tol_, to);
    double worst = 0.0;
    for (const auto& p : set.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : f_.curves) best = std::min(best, c.normalized(p.alpha, p.beta));
      worst = std::max(worst, best);
    }
    add("traced points on known curves (" + std::to_string(set.points.size()) + " points)",
        "max distance <= " + num(opt_.curve_tol), num(worst), !set.points.empty() && worst <= opt_.curve_tol);
  }

  void slopes(const SlopeCheck& sc) {
    TraceOptions to;
    to.threads = opt_.threads;
    const auto& w = sc.window;
    const FucikPointSet set = trace(f_.matrix, TraceWindow{w[0], w[1], w[2], w[3], opt_.grid}, tol_, to);
    const Eigenspace es = eigenspace_at(f_.matrix, sc.lambda, tol_);
    const auto rays = predicted_rays(analyze_eigenvalue(f_.matrix, es, tol_));
    const auto cc = cross_validate(rays, numerical_slopes(sc.lambda, set, sc.radius), opt_.slope_tol);
    std::string got;
    for (const auto& row : cc.rows) {
      if (row.ray.optional && !row.estimate) continue;
      got += (got.empty() ? "" : " ") + (row.estimate ? num(row.error) : std::string("missing"));
    }
    if (!cc.unmatched.empty()) got += " (" + std::to_string(cc.unmatched.size()) + " unexplained arms)";
    add("traced slopes at " + num(sc.lambda) + ", radius " + num(sc.radius), "all within " + num(opt_.slope_tol),
        got, cc.ok());
  }

  // Checks for a fixture without published numbers: residuals, duality and a
  // traced cross-check of the predicted rays.
  void figure_properties() {
    const SpectralData sd = spectral_data(f_.matrix, tol_);
    for (const auto& es : sd.eigenvalues) {
      const EigenvalueAnalysis ea = analyze_eigenvalue(f_.matrix, es, tol_);
      for (const auto& da : ea.defective) {
        if (!da.one_sided) continue;
        double worst = 0.0;
        for (const auto* side : {&da.one_sided->plus, &da.one_sided->minus}) {
          for (const auto& e : *side) worst = std::max(worst, e.residual);
        }
        add("one-sided residuals for u0 = " + vec(da.u0), "<= " + num(10 * tol_.tol_residual), num(worst),
            worst <= 10 * tol_.tol_residual);
        const auto neg = one_sided_tangents(f_.matrix, es.lambda, -da.u0, tol_);
        std::vector<double> a, b;
        for (const auto& e : da.one_sided->plus) a.push_back(-e.eta0);
        for (const auto& e : neg.minus) b.push_back(e.eta0);
        std::sort(a.begin(), a.end());
        add("side-negation duality", list(a), list(b), same_sets(a, b, opt_.value_tol));
      }
      const auto rays = predicted_rays(ea);
      if (rays.empty()) continue;
      const double r = 0.1;
      TraceOptions to;
      to.threads = opt_.threads;
      const TraceWindow w{es.lambda - 1, es.lambda + 1, es.lambda - 1, es.lambda + 1, opt_.grid};
      const auto cc = cross_validate(rays, numerical_slopes(es.lambda, trace(f_.matrix, w, tol_, to), r),
                                     opt_.slope_tol);
      std::string got;
      for (const auto& row : cc.rows) got += (got.empty() ? "" : " ") + num(row.error);
      add("traced slopes at " + num(es.lambda), "all within " + num(opt_.slope_tol), got, cc.ok());
    }
  }

  static std::string vec(const Vector& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(std::round(v(i) * 1e6) / 1e6 + 0.0);
    return s + "]";
  }

  const Fixture& f_;
  const Tolerances& tol_;
  const VerifyOptions& opt_;
  VerifyReport& rep_;
};

}  // namespace

VerifyReport verify_fixture(const std::string& name, const Tolerances& tol, const VerifyOptions& opt) {
  const Fixture& f = fixture(name);
  VerifyReport rep;
  rep.fixture = f.name;
  rep.figure_only = f.figure_only;
  Checker(f, tol, opt, rep).run();
  return rep;
}

}  // namespace fucik
