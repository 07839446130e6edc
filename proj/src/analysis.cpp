#include "fucik/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fucik/error.hpp"

namespace fucik {

EigenvalueAnalysis analyze_eigenvalue(const RealMatrix& a, const Eigenspace& es, const Tolerances& tol) {
  EigenvalueAnalysis out;
  out.eigenspace = es;
  for (auto& d : tangent_directions(a, es.lambda, tol)) {
    if (!d.defective) out.directions.push_back(std::move(d));
  }
  for (const Vector& u : defective_directions(a, es.lambda, tol)) {
    DefectiveAnalysis da;
    da.u0 = u;
    da.verdict = classify(a, es.lambda, u, tol);
    if (da.verdict == DegeneracyClass::case1) {
      da.case1 = case1_direction(a, es.lambda, u, tol);
    } else if (da.verdict == DegeneracyClass::case2) {
      da.one_sided = one_sided_tangents(a, es.lambda, u, tol);
      da.verdict = da.one_sided->degeneracy;
    }
    out.defective.push_back(std::move(da));
  }
  return out;
}

double slope_distance(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) {
    const double ia = std::isinf(a) ? 0.0 : 1.0 / a;
    const double ib = std::isinf(b) ? 0.0 : 1.0 / b;
    return std::abs(ia - ib);
  }
  return std::abs(a - b);
}

std::vector<PredictedRay> predicted_rays(const EigenvalueAnalysis& ea) {
  std::vector<PredictedRay> rays;
  auto add = [&](PredictedRay r) {
    auto it = std::find_if(rays.begin(), rays.end(), [&](const PredictedRay& q) {
      return q.side == r.side && slope_distance(q.slope, r.slope) <= 1e-6;
    });
    if (it == rays.end()) {
      rays.push_back(std::move(r));
    } else if (it->optional && !r.optional) {
      *it = std::move(r);
    }
  };
  for (const auto& d : ea.directions) {
    add({d.slope, Side::plus, d.eta0, "regular"});
    add({d.slope, Side::minus, d.eta0, "regular"});
  }
  for (const auto& da : ea.defective) {
    if (da.case1) {
      add({1.0, Side::plus, da.case1->eta0, "case1"});
      add({1.0, Side::minus, da.case1->eta0, "case1"});
    }
    if (da.one_sided && da.verdict == DegeneracyClass::case2) {
      for (const auto& e : da.one_sided->plus) add({e.slope, Side::plus, e.eta0, "one-sided"});
      for (const auto& e : da.one_sided->minus) add({e.slope, Side::minus, e.eta0, "one-sided"});
    }
    if (da.one_sided) {
      const double inf = std::numeric_limits<double>::infinity();
      add({1.0, Side::plus, inf, "diagonal", true});
      add({1.0, Side::minus, -inf, "diagonal", true});
    }
  }
  std::sort(rays.begin(), rays.end(), [](const PredictedRay& x, const PredictedRay& y) {
    return x.side != y.side ? x.side < y.side : x.slope < y.slope;
  });
  return rays;
}

bool CrossCheck::ok() const {
  return unmatched.empty() && std::all_of(rows.begin(), rows.end(), [](const CrossCheckRow& r) { return r.ok; });
}

CrossCheck cross_validate(const std::vector<PredictedRay>& predicted, const std::vector<SlopeEstimate>& estimates,
                          double tolerance) {
  CrossCheck out;
  for (const auto& ray : predicted) {
    if (ray.optional) continue;
    CrossCheckRow row;
    row.ray = ray;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < estimates.size(); ++k) {
      if (estimates[k].side != ray.side) continue;
      const double d = slope_distance(ray.slope, estimates[k].slope);
      if (d < best) {
        best = d;
        row.estimate = estimates[k];
      }
    }
    row.error = best;
    row.ok = best <= tolerance;
    out.rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    const bool explained = std::any_of(predicted.begin(), predicted.end(), [&](const PredictedRay& r) {
      return r.side == estimates[k].side && slope_distance(r.slope, estimates[k].slope) <= tolerance;
    });
    if (!explained) out.unmatched.push_back(estimates[k]);
  }
  return out;
}

}  // namespace fucik
