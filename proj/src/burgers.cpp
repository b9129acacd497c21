#include "hlab/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hlab/errors.hpp"
#include "hlab/io.hpp"

namespace hlab {

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<double> xs_, std::vector<double> vals_,
                                     double left, double right)
    : xs(std::move(xs_)), vals(std::move(vals_)), left_slope(left), right_slope(right) {
    if (xs.empty() || xs.size() != vals.size())
        throw config_error("PiecewiseLinearFn: need matching, nonempty breakpoints and values");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (!(xs[i] < xs[i + 1]))
            throw config_error("PiecewiseLinearFn: breakpoints must be strictly increasing");
    if (!std::isfinite(left) || !std::isfinite(right))
        throw config_error("PiecewiseLinearFn: tail slopes must be finite");
}

double PiecewiseLinearFn::eval(double x) const {
    if (x <= xs.front()) return vals.front() + left_slope * (x - xs.front());
    if (x >= xs.back()) return vals.back() + right_slope * (x - xs.back());
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    double f = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return vals[i] + f * (vals[i + 1] - vals[i]);
}

double PiecewiseLinearFn::lipschitz() const {
    double m = std::max(std::abs(left_slope), std::abs(right_slope));
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        m = std::max(m, std::abs((vals[i + 1] - vals[i]) / (xs[i + 1] - xs[i])));
    return m;
}

HopfLaxValue hopf_lax(const PiecewiseLinearFn& V0, double x, double t) {
    if (!(t > 0.0)) throw domain_violation("hopf_lax: t must be positive");

    // Candidates are the breakpoints, the per-segment stationary points
    // y = x - 2*slope*t when they fall inside their segment, and the two
    // tail stationary points. Visiting them in ascending y with a strict
    // comparison keeps the smallest minimizer on ties. One pass, no sort.
    HopfLaxValue best{0.0, 0.0};
    bool have = false;
    auto consider = [&](double c, double val) {
        double d = x - c;
        double v = val + d * d / (4.0 * t);
        if (!have || v < best.value) {
            best = {v, c};
            have = true;
        }
    };

    double y = x - 2.0 * V0.left_slope * t;
    if (y < V0.xs.front())
        consider(y, V0.vals.front() + (y - V0.xs.front()) * V0.left_slope);
    for (std::size_t i = 0; i + 1 < V0.xs.size(); ++i) {
        consider(V0.xs[i], V0.vals[i]);
        double slope = (V0.vals[i + 1] - V0.vals[i]) / (V0.xs[i + 1] - V0.xs[i]);
        y = x - 2.0 * slope * t;
        if (y > V0.xs[i] && y < V0.xs[i + 1])
            consider(y, V0.vals[i] + (y - V0.xs[i]) * slope);
    }
    consider(V0.xs.back(), V0.vals.back());
    y = x - 2.0 * V0.right_slope * t;
    if (y > V0.xs.back())
        consider(y, V0.vals.back() + (y - V0.xs.back()) * V0.right_slope);
    return best;
}

double entropy_solution(const PiecewiseLinearFn& V0, double x, double t) {
    if (t < 0.0) throw domain_violation("entropy_solution: t must be nonnegative");
    if (t == 0.0) {
        // left derivative of V0, so the initial field is left-continuous
        if (x <= V0.xs.front()) return V0.left_slope;
        if (x > V0.xs.back()) return V0.right_slope;
        auto it = std::lower_bound(V0.xs.begin(), V0.xs.end(), x);
        std::size_t i = static_cast<std::size_t>(it - V0.xs.begin());
        if (V0.xs[i] == x) {
            if (i == 0) return V0.left_slope;
            return (V0.vals[i] - V0.vals[i - 1]) / (V0.xs[i] - V0.xs[i - 1]);
        }
        return (V0.vals[i] - V0.vals[i - 1]) / (V0.xs[i] - V0.xs[i - 1]);
    }
    auto hl = hopf_lax(V0, x, t);
    return (x - hl.minimizer) / (2.0 * t);
}

double asymptotic_profile_value(double v_minus, double v_plus, double x, double t) {
    if (t < 0.0) throw domain_violation("asymptotic_profile_value: t must be nonnegative");
    auto wedge = [&](double yy) { return yy < 0.0 ? v_minus * yy : (yy > 0.0 ? v_plus * yy : 0.0); };
    if (t == 0.0) return wedge(x);
    auto obj = [&](double yy) {
        double d = x - yy;
        return wedge(yy) + d * d / (4.0 * t);
    };
    double best = obj(0.0);
    double y = x - 2.0 * v_minus * t;
    if (y < 0.0) best = std::min(best, obj(y));
    y = x - 2.0 * v_plus * t;
    if (y > 0.0) best = std::min(best, obj(y));
    return best;
}

std::pair<double, double> slopes_at_infinity(const PiecewiseLinearFn& V0) {
    return {V0.left_slope, V0.right_slope};
}

PiecewiseLinearFn antiderivative_fn(const PiecewiseLinearProfile& v0, double mesh) {
    const auto& bp = v0.breakpoints();
    std::vector<double> xs, vals;
    if (bp.size() == 1) {
        xs = {bp.front()};
    } else {
        if (!(mesh > 0.0)) throw config_error("antiderivative_fn: mesh must be positive");
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            double a = bp[i], b = bp[i + 1];
            auto steps = static_cast<std::size_t>(std::ceil((b - a) / mesh));
            for (std::size_t k = 0; k < steps; ++k)
                xs.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(steps));
        }
        xs.push_back(bp.back());
    }
    vals.reserve(xs.size());
    for (double x : xs) vals.push_back(v0.antiderivative(x));
    return PiecewiseLinearFn(std::move(xs), std::move(vals), v0.left_tail(), v0.right_tail());
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

double weighted_solution_integral(const PiecewiseLinearFn& V0,
                                  const PiecewiseLinearProfile& phi, double t) {
    if (!phi.compactly_supported())
        throw domain_violation("weighted_solution_integral: phi must vanish outside its breakpoints");
    if (t < 0.0) throw domain_violation("weighted_solution_integral: t must be nonnegative");
    auto V = [&](double x) { return t == 0.0 ? V0.eval(x) : hopf_lax(V0, x, t).value; };
    const auto& xs = phi.breakpoints();
    const auto& ys = phi.values();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        if (slope == 0.0) continue;
        total -= slope * integrate(V, xs[i], xs[i + 1], 1e-11);
    }
    return total;
}

void write_field_csv(std::ostream& os, const PiecewiseLinearFn& V0,
                     std::span<const double> xs, std::span<const double> ts) {
    os << kCsvVersionHeader << '\n';
    os << "x,t,V,v\n";
    for (double t : ts)
        for (double x : xs) {
            double V = t == 0.0 ? V0.eval(x) : hopf_lax(V0, x, t).value;
            double v = entropy_solution(V0, x, t);
            os << fmt_shortest(x) << ',' << fmt_shortest(t) << ','
               << fmt_shortest(V) << ',' << fmt_shortest(v) << '\n';
        }
}

} // namespace hlab
