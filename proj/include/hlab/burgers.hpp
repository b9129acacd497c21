#pragma once
// Hopf-Lax solver for V_t + (V_x)^2 = 0 with piecewise-linear initial data,
// and the entropy solution v = V_x of v_t + (v^2)_x = 0. The minimization
// V(x,t) = inf_y { V0(y) + (x-y)^2/(4t) } is exact: with piecewise-linear V0
// the infimum is attained at a breakpoint, at an interior stationary point
// y = x - 2*slope*t of a piece, or on a tail.

#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "hlab/piecewise.hpp"

namespace hlab {

// Piecewise-linear function on the whole line: values at breakpoints, linear
// interpolation between, affine tails with the given slopes.
struct PiecewiseLinearFn {
    std::vector<double> xs;
    std::vector<double> vals;
    double left_slope = 0.0;
    double right_slope = 0.0;

    PiecewiseLinearFn(std::vector<double> xs_, std::vector<double> vals_,
                      double left, double right);

    double eval(double x) const;
    double lipschitz() const;
};

struct HopfLaxValue {
    double value;
    double minimizer; // smallest minimizing y
};

// t must be positive; V(x,0) = V0(x) holds by definition (use eval).
HopfLaxValue hopf_lax(const PiecewiseLinearFn& V0, double x, double t);

// v(x,t) = (x - y*)/(2t) with y* the smallest minimizer, which selects the
// entropy-consistent branch at shocks; at t = 0 returns the left derivative
// of V0 at x.
double entropy_solution(const PiecewiseLinearFn& V0, double x, double t);

// Closed-form Hopf-Lax value for the two-slope wedge profile that equals
// v_minus*x left of the origin and v_plus*x right of it at time zero.
double asymptotic_profile_value(double v_minus, double v_plus, double x, double t);

// (left tail slope, right tail slope) = the initial slope limits at -/+ inf.
std::pair<double, double> slopes_at_infinity(const PiecewiseLinearFn& V0);

// Antiderivative of a continuous profile as a PiecewiseLinearFn, normalized
// to vanish at 0. Interior quadratic pieces are sampled every `mesh`; tails
// are exact (the profile is constant there). Chord error <= Lip(v0)*mesh^2/8.
PiecewiseLinearFn antiderivative_fn(const PiecewiseLinearProfile& v0, double mesh);

// integral of phi(x)*v(x,t) dx for compactly supported piecewise-linear phi,
// computed as -integral of phi'(x)*V(x,t) dx piece by piece.
double weighted_solution_integral(const PiecewiseLinearFn& V0,
                                  const PiecewiseLinearProfile& phi, double t);

// Rows "x,t,V,v" over the grid, outer loop over ts, inner over xs.
void write_field_csv(std::ostream& os, const PiecewiseLinearFn& V0,
                     std::span<const double> xs, std::span<const double> ts);

} // namespace hlab
