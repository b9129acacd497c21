#include "hlab/poisson_plane.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hlab/errors.hpp"
#include "hlab/io.hpp"
#include "hlab/rng.hpp"

namespace hlab {

namespace {

// Cells are (i*w, (i+1)*w] in x, so the strip holding x is ceil(x/w)-1; using
// floor and letting the membership filter clean up boundary cases costs at
// most one extra cell per query edge.
std::int64_t floor_div(double v, double w) {
    return static_cast<std::int64_t>(std::floor(v / w));
}

// Canonical x order: ascending x, descending t on ties, so a patience sweep
// over the result never chains two points sharing an x coordinate.
bool by_x(const PlanarPoint& a, const PlanarPoint& b) {
    return a.x != b.x ? a.x < b.x : a.t > b.t;
}

} // namespace

PointStore::PointStore(std::uint64_t global_seed, double strip_width)
    : seed_(global_seed), width_(strip_width) {
    if (!(strip_width > 0.0) || !std::isfinite(strip_width))
        throw config_error("PointStore: strip_width must be positive and finite");
}

std::pair<std::int64_t, std::int64_t> PointStore::row_range(double t_lo, double t_hi) {
    std::int64_t lo = std::max<std::int64_t>(0, floor_div(t_lo, kTimeChunk));
    std::int64_t hi = static_cast<std::int64_t>(std::ceil(t_hi / kTimeChunk));
    return {lo, std::max(lo, hi)};
}

std::vector<PlanarPoint> PointStore::generate_cell(std::int64_t strip, std::int64_t chunk) const {
    const double x_lo = static_cast<double>(strip) * width_;
    const double t_lo = static_cast<double>(chunk) * kTimeChunk;
    SplitMix64 rng(mix_seed({seed_, 0x63656c6cULL,
                             static_cast<std::uint64_t>(strip),
                             static_cast<std::uint64_t>(chunk)}));
    const double mean = width_ * kTimeChunk;
    int n = poisson_count(rng, mean);
    std::vector<PlanarPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        PlanarPoint p;
        // Redraw on exact coordinate collisions inside the cell; across cells
        // equal x cannot happen (disjoint half-open strips) and equal t has
        // vanishing probability.
        for (;;) {
            p.x = x_lo + width_ * rng.uniform01();
            bool dup = false;
            for (const auto& q : pts) dup = dup || (q.x == p.x);
            if (!dup) break;
        }
        for (;;) {
            p.t = t_lo + kTimeChunk * rng.uniform01();
            bool dup = false;
            for (const auto& q : pts) dup = dup || (q.t == p.t);
            if (!dup) break;
        }
        pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end(), by_x);
    return pts;
}

const std::vector<PlanarPoint>& PointStore::realized_cell(std::int64_t strip, std::int64_t chunk) {
    auto key = std::make_pair(strip, chunk);
    auto it = cells_.find(key);
    if (it == cells_.end())
        it = cells_.emplace(key, generate_cell(strip, chunk)).first;
    return it->second;
}

std::vector<PlanarPoint> PointStore::points_in(const Rectangle& rect) {
    std::vector<PlanarPoint> out;
    if (rect.area() == 0.0) return out;
    auto [row_lo, row_hi] = row_range(rect.t_lo, rect.t_hi);
    std::int64_t s_lo = floor_div(rect.x_lo, width_);
    std::int64_t s_hi = static_cast<std::int64_t>(std::ceil(rect.x_hi / width_));
    for (std::int64_t s = s_lo; s < s_hi; ++s)
        for (std::int64_t r = row_lo; r < row_hi; ++r)
            for (const auto& p : realized_cell(s, r))
                if (rect.contains(p)) out.push_back(p);
    std::sort(out.begin(), out.end(), by_x);
    return out;
}

std::vector<PlanarPoint> PointStore::collect_sorted_x(const Rectangle& rect) const {
    std::vector<PlanarPoint> out;
    if (rect.area() == 0.0) return out;
    auto [row_lo, row_hi] = row_range(rect.t_lo, rect.t_hi);
    std::int64_t s_lo = floor_div(rect.x_lo, width_);
    std::int64_t s_hi = static_cast<std::int64_t>(std::ceil(rect.x_hi / width_));
    for (std::int64_t s = s_lo; s < s_hi; ++s)
        for (std::int64_t r = row_lo; r < row_hi; ++r)
            for (const auto& p : generate_cell(s, r))
                if (rect.contains(p)) out.push_back(p);
    std::sort(out.begin(), out.end(), by_x);
    return out;
}

std::vector<PlanarPoint> PointStore::row_points(const Rectangle& rect, std::int64_t row) const {
    std::vector<PlanarPoint> out;
    if (rect.area() == 0.0 || row < 0) return out;
    std::int64_t s_lo = floor_div(rect.x_lo, width_);
    std::int64_t s_hi = static_cast<std::int64_t>(std::ceil(rect.x_hi / width_));
    for (std::int64_t s = s_lo; s < s_hi; ++s)
        for (const auto& p : generate_cell(s, row))
            if (rect.contains(p)) out.push_back(p);
    std::sort(out.begin(), out.end(), [](const PlanarPoint& a, const PlanarPoint& b) {
        return a.t != b.t ? a.t < b.t : a.x < b.x;
    });
    return out;
}

std::vector<PlanarPoint> scale_points(std::vector<PlanarPoint> pts, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw domain_violation("scale_points: scale factor must be positive and finite");
    for (auto& p : pts) {
        p.x *= lambda;
        p.t /= lambda;
    }
    return pts;
}

void write_points_csv(std::ostream& os, std::span<const PlanarPoint> pts) {
    os << kCsvVersionHeader << '\n';
    os << "x,t\n";
    for (const auto& p : pts)
        os << fmt_sig17(p.x) << ',' << fmt_sig17(p.t) << '\n';
}

} // namespace hlab
