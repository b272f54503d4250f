#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "whittaker/errors.hpp"

namespace whittaker::detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kScan = 0.5;
constexpr int kQuietSteps = 4;  // consecutive small samples that close a window edge

// Moves from `center` in direction `dir` until the integrand stays small.
double grow_edge(const std::function<double(double)>& mod, double center, double dir,
                 double& peak, const LatticeOptions& opts) {
  double x = center;
  int quiet = 0;
  while (std::abs(x - center) < opts.reach) {
    x += dir * kScan;
    const double m = mod(x);
    peak = std::max(peak, m);
    quiet = m <= opts.cutoff * peak ? quiet + 1 : 0;
    if (quiet >= kQuietSteps) return x;
  }
  return x;
}

bool converged(double change, cplx value, double l1, double tol) {
  return change <= tol * std::abs(value) || change <= 64.0 * kEps * l1;
}

}  // namespace

Estimate line_integral(const std::function<cplx(double)>& f, double center,
                       const LatticeOptions& opts) {
  auto mod = [&](double u) { return std::abs(f(u)); };
  double peak = mod(center);
  const double lo = grow_edge(mod, center, -1.0, peak, opts);
  const double hi = grow_edge(mod, center, +1.0, peak, opts);
  if (peak == 0.0) return {0.0, 0.0};

  // Nested lattices anchored at lo: level k adds the odd multiples.
  double h = opts.h0;
  cplx sum = 0.0;
  double l1 = 0.0;
  for (int k = 0; lo + k * h <= hi; ++k) {
    const cplx v = f(lo + k * h);
    sum += v;
    l1 += std::abs(v);
  }
  cplx value = h * sum;
  double change = std::numeric_limits<double>::infinity();
  for (int level = 0; level < opts.max_levels; ++level) {
    for (int k = 0; lo + (k + 0.5) * h <= hi; ++k) {
      const cplx v = f(lo + (k + 0.5) * h);
      sum += v;
      l1 += std::abs(v);
    }
    h *= 0.5;
    const cplx refined = h * sum;
    change = std::abs(refined - value);
    value = refined;
    if (level >= 1 && converged(change, value, h * l1, opts.tol)) return {value, change};
  }
  std::ostringstream os;
  os << "line quadrature did not settle (change " << change << ", value " << std::abs(value) << ")";
  throw Unconverged(os.str());
}

Estimate box_integral(const std::function<cplx(double, double)>& f, std::array<double, 2> lo,
                      std::array<double, 2> hi, const LatticeOptions& opts) {
  double h = opts.h0;
  auto level_sum = [&](double step, double& l1) {
    cplx s = 0.0;
    l1 = 0.0;
    const int nx = int(std::floor((hi[0] - lo[0]) / step + 1e-9));
    const int ny = int(std::floor((hi[1] - lo[1]) / step + 1e-9));
    for (int i = 0; i <= nx; ++i) {
      for (int j = 0; j <= ny; ++j) {
        const cplx v = f(lo[0] + i * step, lo[1] + j * step);
        s += v;
        l1 += std::abs(v);
      }
    }
    return s * step * step;
  };
  double l1 = 0.0;
  cplx value = level_sum(h, l1);
  double change = std::numeric_limits<double>::infinity();
  for (int level = 0; level < opts.max_levels; ++level) {
    h *= 0.5;
    const cplx refined = level_sum(h, l1);
    change = std::abs(refined - value);
    value = refined;
    if (level >= 1 && converged(change, value, h * h * l1, opts.tol)) return {value, change};
  }
  std::ostringstream os;
  os << "plane quadrature did not settle (change " << change << ", value " << std::abs(value) << ")";
  throw Unconverged(os.str());
}

Estimate plane_integral(const std::function<cplx(double, double)>& f,
                        std::array<double, 2> center, const LatticeOptions& opts) {
  std::array<double, 2> lo = {center[0] - 1.0, center[1] - 1.0};
  std::array<double, 2> hi = {center[0] + 1.0, center[1] + 1.0};
  double peak = std::abs(f(center[0], center[1]));
  // Largest modulus along one edge of the current box.
  auto edge_max = [&](int axis, double at) {
    const int other = 1 - axis;
    double m = 0.0;
    const int n = int(std::floor((hi[other] - lo[other]) / kScan + 1e-9));
    for (int k = 0; k <= n; ++k) {
      const double t = lo[other] + k * kScan;
      const double v = axis == 0 ? std::abs(f(at, t)) : std::abs(f(t, at));
      m = std::max(m, v);
    }
    return m;
  };
  std::array<int, 4> quiet = {0, 0, 0, 0};
  for (bool grew = true; grew;) {
    grew = false;
    for (int side = 0; side < 4; ++side) {
      const int axis = side / 2;
      const bool upper = side % 2 == 1;
      double& edge = upper ? hi[axis] : lo[axis];
      if (quiet[side] >= kQuietSteps || std::abs(edge - center[axis]) >= opts.reach) continue;
      const double m = edge_max(axis, edge);
      peak = std::max(peak, m);
      if (m <= opts.cutoff * peak) {
        ++quiet[side];
      } else {
        quiet[side] = 0;
      }
      edge += upper ? kScan : -kScan;
      grew = true;
    }
  }
  if (peak == 0.0) return {0.0, 0.0};
  return box_integral(f, lo, hi, opts);
}

}  // namespace whittaker::detail
