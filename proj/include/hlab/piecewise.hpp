#pragma once
// Continuous piecewise-linear profiles with constant tails. Used for the
// initial perturbation shape and for compactly supported test functions;
// integrals and the antiderivative are closed-form.

#include <cstddef>
#include <vector>

namespace hlab {

class PiecewiseLinearProfile {
public:
    // Breakpoints strictly increasing, one value per breakpoint; linear in
    // between, constant (first/last value) outside.
    PiecewiseLinearProfile(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const;

    // Integral over [a, b] (sign-aware if a > b); exact trapezoid per piece.
    double integral(double a, double b) const;

    // Antiderivative normalized to vanish at 0.
    double antiderivative(double x) const { return integral(0.0, x); }

    double sup_abs() const;
    double left_tail() const { return ys_.front(); }
    double right_tail() const { return ys_.back(); }
    bool compactly_supported() const;

    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }

    static PiecewiseLinearProfile constant(double c);
    // Symmetric tent: 0 outside [-half_width, half_width], peak at 0.
    static PiecewiseLinearProfile tent(double half_width, double peak);

private:
    std::vector<double> xs_, ys_;
    std::vector<double> cum_; // integral from xs_[0] to each breakpoint
};

} // namespace hlab
