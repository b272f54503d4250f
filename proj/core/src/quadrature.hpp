#pragma once

#include <array>
#include <functional>

#include "whittaker/arch_whittaker.hpp"

namespace whittaker::detail {

// Trapezoid sums on uniform lattices for analytic integrands with fast
// decay; the error of such sums falls geometrically with the step, so the
// step is halved until two successive levels agree.
struct LatticeOptions {
  double tol = 1e-13;      // relative change between levels
  double h0 = 0.25;        // initial step
  int max_levels = 9;
  double cutoff = 1e-22;   // window edge, relative to the peak modulus
  double reach = 80.0;     // furthest the window may grow from the centre
};

// Integral of f over R. The window grows from `center` in half-unit steps
// until |f| stays below cutoff * peak.
Estimate line_integral(const std::function<cplx(double)>& f, double center,
                       const LatticeOptions& opts = {});

// Integral of f over R^2, window found by growing a box around `center`.
Estimate plane_integral(const std::function<cplx(double, double)>& f,
                        std::array<double, 2> center, const LatticeOptions& opts = {});

// Same on a fixed box (no window search).
Estimate box_integral(const std::function<cplx(double, double)>& f, std::array<double, 2> lo,
                      std::array<double, 2> hi, const LatticeOptions& opts = {});

}  // namespace whittaker::detail
