#include "hlab/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "hlab/errors.hpp"

namespace hlab {

PiecewiseLinearProfile::PiecewiseLinearProfile(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.empty() || xs_.size() != ys_.size())
        throw config_error("profile: need matching, nonempty breakpoints and values");
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
        if (!(xs_[i] < xs_[i + 1]))
            throw config_error("profile: breakpoints must be strictly increasing");
    for (double v : xs_)
        if (!std::isfinite(v)) throw config_error("profile: breakpoints must be finite");
    for (double v : ys_)
        if (!std::isfinite(v)) throw config_error("profile: values must be finite");
    cum_.assign(xs_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
        cum_[i + 1] = cum_[i] + 0.5 * (ys_[i] + ys_[i + 1]) * (xs_[i + 1] - xs_[i]);
}

double PiecewiseLinearProfile::operator()(double x) const {
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    double f = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
    return ys_[i] + f * (ys_[i + 1] - ys_[i]);
}

double PiecewiseLinearProfile::integral(double a, double b) const {
    if (a > b) return -integral(b, a);
    // Antiderivative measured from the first breakpoint; quadratic inside a
    // piece, linear on the constant tails.
    auto F = [this](double x) -> double {
        if (x <= xs_.front()) return ys_.front() * (x - xs_.front());
        if (x >= xs_.back()) return cum_.back() + ys_.back() * (x - xs_.back());
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
        double dx = x - xs_[i];
        double slope = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
        return cum_[i] + ys_[i] * dx + 0.5 * slope * dx * dx;
    };
    return F(b) - F(a);
}

double PiecewiseLinearProfile::sup_abs() const {
    double m = 0.0;
    for (double v : ys_) m = std::max(m, std::abs(v));
    return m;
}

bool PiecewiseLinearProfile::compactly_supported() const {
    return ys_.front() == 0.0 && ys_.back() == 0.0;
}

PiecewiseLinearProfile PiecewiseLinearProfile::constant(double c) {
    return PiecewiseLinearProfile({0.0}, {c});
}

PiecewiseLinearProfile PiecewiseLinearProfile::tent(double half_width, double peak) {
    if (!(half_width > 0.0)) throw config_error("tent: half_width must be positive");
    return PiecewiseLinearProfile({-half_width, 0.0, half_width}, {0.0, peak, 0.0});
}

} // namespace hlab
