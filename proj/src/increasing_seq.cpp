#include "hlab/increasing_seq.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hlab/errors.hpp"

namespace hlab {

double Width::value() const {
    if (infinite_) throw domain_violation("Width: value() on infinite width");
    return value_;
}

namespace {

// Sort key making patience handle coordinate ties: equal x are scanned in
// decreasing t so they can never chain with each other.
void sort_for_patience(std::vector<PlanarPoint>& v) {
    std::sort(v.begin(), v.end(), [](const PlanarPoint& a, const PlanarPoint& b) {
        return a.x != b.x ? a.x < b.x : a.t > b.t;
    });
}

// Pushes one point through the patience piles (tails = smallest ending t per
// length). Returns the new pile count if a pile was created, 0 otherwise.
int patience_step(std::vector<double>& tails, double t) {
    auto it = std::lower_bound(tails.begin(), tails.end(), t);
    if (it == tails.end()) {
        tails.push_back(t);
        return static_cast<int>(tails.size());
    }
    *it = t;
    return 0;
}

} // namespace

int lis_length(std::span<const PlanarPoint> pts) {
    std::vector<PlanarPoint> v(pts.begin(), pts.end());
    sort_for_patience(v);
    std::vector<double> tails;
    tails.reserve(v.size());
    for (const auto& p : v) patience_step(tails, p.t);
    return static_cast<int>(tails.size());
}

namespace {

int brute_extend(const std::vector<PlanarPoint>& v, std::size_t idx) {
    int best = 1;
    for (std::size_t j = idx + 1; j < v.size(); ++j)
        if (v[j].x > v[idx].x && v[j].t > v[idx].t)
            best = std::max(best, 1 + brute_extend(v, j));
    return best;
}

} // namespace

int lis_length_bruteforce(std::span<const PlanarPoint> pts) {
    if (pts.size() > 20)
        throw domain_violation("lis_length_bruteforce: refusing more than 20 points");
    std::vector<PlanarPoint> v(pts.begin(), pts.end());
    sort_for_patience(v);
    int best = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        best = std::max(best, brute_extend(v, i));
    return best;
}

std::optional<double> gamma_achieving_x(const PointStore& store, PlanarPoint corner,
                                        std::int64_t m, double tau, double width_cap) {
    if (m < 0) throw domain_violation("gamma: m must be nonnegative");
    if (!(tau > 0.0)) throw domain_violation("gamma: tau must be positive");
    if (!(width_cap > 0.0)) return std::nullopt;
    if (m == 0) return corner.x;

    // Sweep strip by strip so the search stops generating points once pile m
    // forms; deep caps never pay for the whole rectangle.
    const double w = store.strip_width();
    const Rectangle rect{corner.x, corner.x + width_cap, corner.t, corner.t + tau};
    const std::int64_t s_lo = static_cast<std::int64_t>(std::floor(rect.x_lo / w));
    const std::int64_t s_hi = static_cast<std::int64_t>(std::ceil(rect.x_hi / w));
    std::vector<double> tails;
    for (std::int64_t s = s_lo; s < s_hi; ++s) {
        Rectangle strip_rect = rect;
        strip_rect.x_lo = std::max(rect.x_lo, static_cast<double>(s) * w);
        strip_rect.x_hi = std::min(rect.x_hi, static_cast<double>(s + 1) * w);
        for (const auto& p : store.collect_sorted_x(strip_rect)) {
            if (patience_step(tails, p.t) == m) return p.x;
        }
    }
    return std::nullopt;
}

Width gamma(const PointStore& store, PlanarPoint corner, std::int64_t m,
            double tau, double width_cap) {
    auto x = gamma_achieving_x(store, corner, m, tau, width_cap);
    if (!x) return Width::infinite();
    return Width::finite(*x - corner.x);
}

double lln_L(double b, double t) {
    if (b < 0.0 || t < 0.0) throw domain_violation("lln_L: negative box");
    return 2.0 * std::sqrt(b * t);
}

double lln_gamma(double a, double t) {
    if (a < 0.0) throw domain_violation("lln_gamma: negative count");
    if (!(t > 0.0)) throw domain_violation("lln_gamma: time must be positive");
    return a * a / (4.0 * t);
}

RateEval rate_I(double x) {
    if (x < 0.0) throw domain_violation("rate_I: negative argument");
    if (x < 2.0) return {x, 0.0};
    double v = 2.0 * x * std::acosh(x / 2.0) - 2.0 * std::sqrt(x * x - 4.0);
    return {x, v};
}

double lower_tail_bound(double a, double s, double h) {
    if (!(a > 0.0) || !(s > 0.0) || !(h > 0.0))
        throw domain_violation("lower_tail_bound: a, s, h must be positive");
    double hs = h * s;
    if (!(a <= hs) || !(hs < a * a / 4.0))
        throw domain_violation("lower_tail_bound: need a <= h*s < a^2/4");
    double root = std::sqrt(a * a - 4.0 * hs);
    return std::exp(-0.5 * root * rate_I(2.0 + hs / (a * a)).value);
}

double upper_tail_bound(double a, double s, double h, const TailBoundConstants& c) {
    if (!(a > 0.0) || !(s > 0.0) || !(h > 0.0))
        throw domain_violation("upper_tail_bound: a, s, h must be positive");
    if (a < c.B0)
        throw domain_violation("upper_tail_bound: a below B0");
    double hs = h * s;
    if (hs < c.B1 * std::pow(a, 4.0 / 3.0) || hs > c.d0 * a * a)
        throw domain_violation("upper_tail_bound: h*s outside [B1*a^(4/3), d0*a^2]");
    double a4 = a * a * a * a;
    return c.C0 * std::exp(-c.C1 * s * s * s * h * h * h / a4);
}

double kappa(double x) {
    if (!(x > 0.0)) throw domain_violation("kappa: argument must be positive");
    return x - 1.0 - std::log(x);
}

} // namespace hlab
