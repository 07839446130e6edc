#include "fucik/spectrum_tracer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>
#include <unordered_map>

#include "fucik/error.hpp"
#include "fucik/polynomial.hpp"

namespace fucik {

void TraceWindow::validate() const {
  const bool finite = std::isfinite(alpha_min) && std::isfinite(alpha_max) && std::isfinite(beta_min) &&
                      std::isfinite(beta_max);
  if (!finite || !(alpha_min < alpha_max) || !(beta_min < beta_max)) {
    throw Error(ErrorKind::invalid_input, "trace window needs min < max on both axes");
  }
  if (grid < 2) throw Error(ErrorKind::invalid_input, "trace grid must be at least 2");
}

const char* to_string(Sweep s) { return s == Sweep::alpha ? "alpha" : "beta"; }

double residual(const RealMatrix& a, double alpha, double beta, const Vector& u) {
  if (u.size() != a.n()) throw Error(ErrorKind::invalid_input, "vector length does not match matrix");
  const double norm = u.norm();
  if (norm == 0.0) throw Error(ErrorKind::invalid_input, "residual of the zero vector");
  const PosNegParts pn = pos_neg_parts(u);
  return (a.entries() * u - alpha * pn.plus + beta * pn.minus).norm() / norm;
}

namespace {

constexpr int kPolishSteps = 6;
constexpr double kImagCutoff = 1e-6;   // in normalized window units
constexpr double kLinkFactor = 4.0;    // polyline link radius in grid steps
constexpr double kSweepOverlap = 1e-6; // slopes near 1 are kept by both sweeps

struct RawPoint {
  FucikPoint point;
  int column = 0;
};

struct Polyline {
  Sweep sweep = Sweep::alpha;
  std::vector<RawPoint> points;
};

struct PatternResult {
  std::vector<Polyline> lines;
};

class PatternSweeper {
 public:
  PatternSweeper(const RealMatrix& a, const TraceWindow& w, const Tolerances& tol, const TraceOptions& opt)
      : a_(a), w_(w), tol_(tol), accept_(opt.residual_tol * (1.0 + a.norm())) {}

  PatternResult run(const SignPattern& s) const {
    PatternResult out;
    for (Sweep sweep : {Sweep::alpha, Sweep::beta}) {
      auto cols = sweep_columns(s, sweep);
      link(cols, sweep, out.lines);
    }
    return out;
  }

 private:
  // Points of pattern s on each grid column of the fixed variable.
  std::vector<std::vector<RawPoint>> sweep_columns(const SignPattern& s, Sweep sweep) const {
    const int n = a_.n();
    Vector dplus = Vector::Zero(n);
    Vector dminus = Vector::Zero(n);
    for (int i = 0; i < n; ++i) (s[i] > 0 ? dplus : dminus)(i) = 1.0;
    const Vector& dfix = sweep == Sweep::alpha ? dplus : dminus;
    const Vector& dfree = sweep == Sweep::alpha ? dminus : dplus;
    const int degree = static_cast<int>(dfree.sum());

    std::vector<std::vector<RawPoint>> cols(static_cast<std::size_t>(w_.grid));
    if (degree == 0) return cols;

    const double fix_lo = sweep == Sweep::alpha ? w_.alpha_min : w_.beta_min;
    const double fix_hi = sweep == Sweep::alpha ? w_.alpha_max : w_.beta_max;
    const double lo = sweep == Sweep::alpha ? w_.beta_min : w_.alpha_min;
    const double hi = sweep == Sweep::alpha ? w_.beta_max : w_.alpha_max;
    const double step_fix = (fix_hi - fix_lo) / (w_.grid - 1);
    const double step_free = (hi - lo) / (w_.grid - 1);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double slack = 1e-9 * (hi - lo);
    const double scale = 1.0 + a_.norm() + std::max({std::abs(lo), std::abs(hi), std::abs(fix_lo), std::abs(fix_hi)});
    const double vanish = 1e-12 * std::pow(scale, n);

    const Matrix& A = a_.entries();
    auto shifted = [&](double fix, double free) -> Matrix {
      Matrix m = A;
      m.diagonal() -= fix * dfix + free * dfree;
      return m;
    };

    for (int k = 0; k < w_.grid; ++k) {
      const double fix = fix_lo + (fix_hi - fix_lo) * k / (w_.grid - 1);
      auto coeffs = poly::fit([&](double t) { return shifted(fix, mid + half * t).partialPivLu().determinant(); },
                              degree);
      coeffs = poly::trim(std::move(coeffs), 1e-13, vanish);
      if (coeffs.size() < 2) continue;
      for (const auto& t : poly::merge_close(poly::roots(coeffs), 1e-7)) {
        if (std::abs(t.imag()) > kImagCutoff || std::abs(t.real()) > 1.0 + 1e-6) continue;
        double free = mid + half * t.real();
        Vector u, y;
        for (int it = 0; it <= kPolishSteps; ++it) {
          const Matrix m = shifted(fix, free);
          Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
          y = svd.matrixU().col(n - 1);
          u = svd.matrixV().col(n - 1);
          if (it == kPolishSteps) break;
          const double den = y.dot(dfree.asDiagonal() * u);
          if (std::abs(den) < 1e-14) break;
          const double step = y.dot(m * u) / den;
          free += step;
          if (std::abs(step) <= 1e-15 * (1.0 + std::abs(free))) {
            const Matrix m2 = shifted(fix, free);
            Eigen::JacobiSVD<Matrix> svd2(m2, Eigen::ComputeFullV);
            u = svd2.matrixV().col(n - 1);
            break;
          }
        }
        if (free < lo - slack || free > hi + slack) continue;
        // Implicit slope d(free)/d(fix) = -<y, Dfix u> / <y, Dfree u>. Where the
        // curve moves more than one free-axis step per column, the transposed
        // sweep samples it better, so this sweep leaves the point to it.
        const double gfix = std::abs(y.dot(dfix.asDiagonal() * u)) * step_fix;
        const double gfree = std::abs(y.dot(dfree.asDiagonal() * u)) * step_free;
        if (gfix > gfree * (1.0 + kSweepOverlap) && std::max(gfix, gfree) > 1e-10 * (step_fix + step_free)) continue;
        if (!s.consistent(u, tol_.tol_sign)) {
          u = -u;
          if (!s.consistent(u, tol_.tol_sign)) continue;
        }
        FucikPoint p;
        p.alpha = sweep == Sweep::alpha ? fix : free;
        p.beta = sweep == Sweep::alpha ? free : fix;
        p.u = u;
        p.pattern = s;
        p.residual = residual(a_, p.alpha, p.beta, u);
        if (p.residual > accept_) continue;
        cols[static_cast<std::size_t>(k)].push_back({std::move(p), k});
      }
    }
    return cols;
  }

  // Greedy nearest-neighbour linking between consecutive columns.
  void link(std::vector<std::vector<RawPoint>>& cols, Sweep sweep, std::vector<Polyline>& out) const {
    const double radius = kLinkFactor * std::max(w_.alpha_step(), w_.beta_step());
    std::vector<std::size_t> open;  // indices into out, ending at the previous column
    for (int k = 0; k < w_.grid; ++k) {
      auto& col = cols[static_cast<std::size_t>(k)];
      struct Pair {
        double d;
        std::size_t line;
        std::size_t pt;
      };
      std::vector<Pair> pairs;
      for (std::size_t li : open) {
        const FucikPoint& last = out[li].points.back().point;
        for (std::size_t j = 0; j < col.size(); ++j) {
          const double d = std::hypot(col[j].point.alpha - last.alpha, col[j].point.beta - last.beta);
          if (d <= radius) pairs.push_back({d, li, j});
        }
      }
      std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        return x.d != y.d ? x.d < y.d : (x.line != y.line ? x.line < y.line : x.pt < y.pt);
      });
      std::vector<char> line_used(out.size(), 0);
      std::vector<char> pt_used(col.size(), 0);
      std::vector<std::size_t> next_open;
      for (const Pair& p : pairs) {
        if (line_used[p.line] || pt_used[p.pt]) continue;
        line_used[p.line] = 1;
        pt_used[p.pt] = 1;
        out[p.line].points.push_back(std::move(col[p.pt]));
        next_open.push_back(p.line);
      }
      for (std::size_t j = 0; j < col.size(); ++j) {
        if (pt_used[j]) continue;
        out.push_back({sweep, {std::move(col[j])}});
        next_open.push_back(out.size() - 1);
      }
      std::sort(next_open.begin(), next_open.end());
      open = std::move(next_open);
    }
  }

  const RealMatrix& a_;
  const TraceWindow& w_;
  const Tolerances& tol_;
  double accept_;
};

// Spatial hash for deduplicating identical (alpha, beta, +-u) points.
class PointIndex {
 public:
  explicit PointIndex(double cell) : cell_(cell) {}

  bool contains(const FucikPoint& p, const std::vector<FucikPoint>& pts, double tol) const {
    const auto [cx, cy] = cell_of(p);
    for (long dx = -1; dx <= 1; ++dx) {
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = map_.find(key(cx + dx, cy + dy));
        if (it == map_.end()) continue;
        for (int idx : it->second) {
          const FucikPoint& q = pts[static_cast<std::size_t>(idx)];
          if (std::abs(q.alpha - p.alpha) <= tol && std::abs(q.beta - p.beta) <= tol &&
              std::abs(q.u.dot(p.u)) >= 1.0 - 1e-8) {
            return true;
          }
        }
      }
    }
    return false;
  }

  void insert(const FucikPoint& p, int idx) {
    const auto [cx, cy] = cell_of(p);
    map_[key(cx, cy)].push_back(idx);
  }

 private:
  std::pair<long, long> cell_of(const FucikPoint& p) const {
    return {static_cast<long>(std::floor(p.alpha / cell_)), static_cast<long>(std::floor(p.beta / cell_))};
  }
  static long long key(long x, long y) { return (static_cast<long long>(x) << 32) ^ (y & 0xffffffffLL); }

  double cell_;
  std::unordered_map<long long, std::vector<int>> map_;
};

}  // namespace

FucikPointSet trace(const RealMatrix& a, const TraceWindow& window, const Tolerances& tol,
                    const TraceOptions& options) {
  window.validate();
  tol.validate();
  const int n = a.n();
  if (n > options.max_dimension || n > 62) {
    throw Error(ErrorKind::capacity, "matrix dimension " + std::to_string(n) + " exceeds the trace cap of " +
                                         std::to_string(options.max_dimension));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<PatternResult> results(count);
  PatternSweeper sweeper(a, window, tol, options);

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(count)));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < count; b = next++) {
      results[b] = sweeper.run(SignPattern::from_bits(n, b));
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  FucikPointSet out;
  const double dedup_tol = 1e-9 * (1.0 + a.norm() + std::abs(window.alpha_max) + std::abs(window.beta_max));
  PointIndex index(std::max(window.alpha_step(), window.beta_step()));
  for (std::uint64_t b = 0; b < count; ++b) {
    for (auto& line : results[b].lines) {
      Branch br;
      br.pattern = SignPattern::from_bits(n, b);
      br.sweep = line.sweep;
      for (auto& rp : line.points) {
        if (index.contains(rp.point, out.points, dedup_tol)) continue;
        const int idx = static_cast<int>(out.points.size());
        index.insert(rp.point, idx);
        out.points.push_back(std::move(rp.point));
        br.indices.push_back(idx);
      }
      if (!br.indices.empty()) out.branches.push_back(std::move(br));
    }
  }
  return out;
}

namespace {

struct Arm {
  int branch;
  Side side;
  std::vector<const FucikPoint*> pts;
  double min_dist = std::numeric_limits<double>::infinity();
};

}  // namespace

std::vector<SlopeEstimate> numerical_slopes(double lambda, const FucikPointSet& set, double radius) {
  std::vector<Arm> arms;
  for (std::size_t b = 0; b < set.branches.size(); ++b) {
    std::optional<Arm> cur;
    auto close = [&] {
      if (cur) arms.push_back(std::move(*cur));
      cur.reset();
    };
    for (int idx : set.branches[b].indices) {
      const FucikPoint& p = set.points[static_cast<std::size_t>(idx)];
      const double x = p.alpha - lambda;
      const double y = p.beta - lambda;
      const double d = std::hypot(x, y);
      if (d > radius || x == y) {
        close();
        continue;
      }
      const Side side = y < x ? Side::plus : Side::minus;
      if (cur && cur->side != side) close();
      if (!cur) cur = Arm{static_cast<int>(b), side, {}};
      cur->pts.push_back(&p);
      cur->min_dist = std::min(cur->min_dist, d);
    }
    close();
  }

  std::vector<SlopeEstimate> raw;
  for (const Arm& arm : arms) {
    if (arm.min_dist > radius / 8.0) continue;
    std::vector<std::pair<double, double>> xy;
    double sx = 0.0, sy = 0.0;
    for (const FucikPoint* p : arm.pts) {
      const double x = p->alpha - lambda;
      const double y = p->beta - lambda;
      const double d = std::hypot(x, y);
      if (d < radius / 4.0) continue;
      xy.emplace_back(x, y);
      sx += std::abs(x);
      sy += std::abs(y);
    }
    if (xy.size() < 4) continue;
    const bool steep = sy > sx;
    // Cubic through the origin: dep = c1 ind + c2 ind^2 + c3 ind^3.
    Matrix m(static_cast<Eigen::Index>(xy.size()), 3);
    Vector rhs(static_cast<Eigen::Index>(xy.size()));
    double dx = 0.0, dy = 0.0;
    for (std::size_t i = 0; i < xy.size(); ++i) {
      const double ind = steep ? xy[i].second : xy[i].first;
      const double dep = steep ? xy[i].first : xy[i].second;
      const auto r = static_cast<Eigen::Index>(i);
      m(r, 0) = ind;
      m(r, 1) = ind * ind;
      m(r, 2) = ind * ind * ind;
      rhs(r) = dep;
      const double d = std::hypot(xy[i].first, xy[i].second);
      dx += xy[i].first / d;
      dy += xy[i].second / d;
    }
    const Vector c = m.colPivHouseholderQr().solve(rhs);
    if ((m * c - rhs).cwiseAbs().maxCoeff() > 1e-2 * radius) continue;

    SlopeEstimate e;
    e.side = arm.side;
    e.branch = arm.branch;
    e.samples = static_cast<int>(xy.size());
    const double dn = std::hypot(dx, dy);
    e.dalpha = dx / dn;
    e.dbeta = dy / dn;
    if (steep) {
      e.vertical = std::abs(c(0)) <= 1e-12;
      e.slope = e.vertical ? std::numeric_limits<double>::infinity() : 1.0 / c(0);
    } else {
      e.slope = c(0);
    }
    raw.push_back(e);
  }

  // Merge arms describing the same ray.
  std::vector<SlopeEstimate> out;
  std::vector<double> weight;
  for (const auto& e : raw) {
    bool merged = false;
    for (std::size_t k = 0; k < out.size(); ++k) {
      auto& o = out[k];
      const double angle = std::acos(std::clamp(o.dalpha * e.dalpha + o.dbeta * e.dbeta, -1.0, 1.0));
      const bool same = o.side == e.side && o.vertical == e.vertical &&
                        (o.vertical || std::abs(o.slope - e.slope) <= 1e-3 * std::max(1.0, std::abs(o.slope)));
      if (same && angle < 0.5) {
        if (!o.vertical) {
          o.slope = (o.slope * weight[k] + e.slope * e.samples) / (weight[k] + e.samples);
        }
        weight[k] += e.samples;
        o.samples += e.samples;
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back(e);
      weight.push_back(e.samples);
    }
  }
  std::sort(out.begin(), out.end(), [](const SlopeEstimate& x, const SlopeEstimate& y) {
    if (x.side != y.side) return x.side < y.side;
    if (x.slope != y.slope) return x.slope < y.slope;
    return x.dalpha < y.dalpha;
  });
  return out;
}

}  // namespace fucik
