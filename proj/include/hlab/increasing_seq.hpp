#pragma once
// Increasing sequences of planar points and the width functional built on
// them. A sequence is increasing when both coordinates strictly increase;
// points sharing a coordinate are incomparable.

#include <cstdint>
#include <optional>
#include <span>

#include "hlab/poisson_plane.hpp"

namespace hlab {

// Width of the smallest box admitting an m-point increasing sequence, or
// "infinite" when none exists within the search cap.
class Width {
public:
    static Width finite(double v) { return Width(v, false); }
    static Width infinite() { return Width(0.0, true); }
    bool is_infinite() const { return infinite_; }
    double value() const;

private:
    Width(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

struct RateEval {
    double x;
    double value;
};

// Length of the longest increasing subsequence; patience sorting, O(m log m).
// Input order does not matter.
int lis_length(std::span<const PlanarPoint> pts);

// Exhaustive maximum over increasing subsequences; refuses more than 20
// points. Oracle for lis_length.
int lis_length_bruteforce(std::span<const PlanarPoint> pts);

// Smallest h > 0 such that (corner.x, corner.x+h] x (corner.t, corner.t+tau]
// holds an increasing sequence of m store points; infinite if no such h within
// width_cap. The infimum is attained at a point's x coordinate, found by one
// x-ordered patience sweep that stops as soon as pile m forms.
Width gamma(const PointStore& store, PlanarPoint corner, std::int64_t m,
            double tau, double width_cap);

// Same sweep, but reports the absolute x coordinate of the point attaining
// the width (gamma's value is that x minus corner.x). Lets callers reuse the
// coordinate without reintroducing rounding.
std::optional<double> gamma_achieving_x(const PointStore& store, PlanarPoint corner,
                                        std::int64_t m, double tau, double width_cap);

// Law-of-large-numbers limits: L(sb, st)/s -> 2*sqrt(bt) for the count in a
// box, Gamma([sa], st)/s -> a^2/(4t) for the width.
double lln_L(double b, double t);
double lln_gamma(double a, double t);

// Large-deviation rate for the box count: 2x*acosh(x/2) - 2*sqrt(x^2-4) at
// x >= 2, zero below.
RateEval rate_I(double x);

// Lower-tail width bound exp(-0.5*sqrt(a^2-4hs) * I(2+hs/a^2)); requires
// a <= h*s < a^2/4.
double lower_tail_bound(double a, double s, double h);

struct TailBoundConstants {
    double B0 = 1e2;
    double B1 = 1.0;
    double d0 = 0.1;
    double C0 = 1.0;
    double C1 = 1e-2;
};

// Upper-tail width bound C0*exp(-C1*s^3 h^3 / a^4) with existential constants
// exposed as configuration; requires a >= B0 and B1*a^(4/3) <= h*s <= d0*a^2.
double upper_tail_bound(double a, double s, double h,
                        const TailBoundConstants& c = {});

// Cramer rate x - 1 - log(x) for mean-1 exponentials; x > 0.
double kappa(double x);

} // namespace hlab
