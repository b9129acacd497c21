#pragma once
// Reproducible unit-rate Poisson field on the upper half plane (t > 0).
// Space is cut into cells of strip_width x kTimeChunk; each cell's points are
// generated from a SplitMix64 stream keyed by (global_seed, strip, chunk), so
// any query sees the same field regardless of query order or history.
//
// Mutation notes: points_in() realizes cells into an internal cache and is the
// only mutating query. collect_sorted_x() / row_points() regenerate cells on
// the fly, never touch the cache, and are safe to call concurrently.

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace hlab {

struct PlanarPoint {
    double x = 0.0;
    double t = 0.0;
};

// Half-open box (x_lo, x_hi] x (t_lo, t_hi]. Degenerate boxes are allowed and
// simply contain nothing.
struct Rectangle {
    double x_lo = 0.0, x_hi = 0.0;
    double t_lo = 0.0, t_hi = 0.0;

    bool contains(const PlanarPoint& p) const {
        return p.x > x_lo && p.x <= x_hi && p.t > t_lo && p.t <= t_hi;
    }
    double area() const {
        double w = x_hi - x_lo, h = t_hi - t_lo;
        return (w > 0 && h > 0) ? w * h : 0.0;
    }
};

class PointStore {
public:
    static constexpr double kTimeChunk = 8.0;

    explicit PointStore(std::uint64_t global_seed, double strip_width = 1.0);

    std::uint64_t global_seed() const { return seed_; }
    double strip_width() const { return width_; }

    // Cached query, sorted by x ascending. Realizes any missing cells.
    std::vector<PlanarPoint> points_in(const Rectangle& rect);

    // Streaming queries (no cache, const). Same points as points_in.
    std::vector<PlanarPoint> collect_sorted_x(const Rectangle& rect) const;

    // One horizontal chunk row of the rectangle, sorted by (t, x). Row index
    // r covers t in (r*kTimeChunk, (r+1)*kTimeChunk]; use row_range() to get
    // the rows overlapping a time interval.
    std::vector<PlanarPoint> row_points(const Rectangle& rect, std::int64_t row) const;
    static std::pair<std::int64_t, std::int64_t> row_range(double t_lo, double t_hi);

    std::size_t realized_cells() const { return cells_.size(); }

private:
    std::vector<PlanarPoint> generate_cell(std::int64_t strip, std::int64_t chunk) const;
    const std::vector<PlanarPoint>& realized_cell(std::int64_t strip, std::int64_t chunk);

    std::uint64_t seed_;
    double width_;
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<PlanarPoint>> cells_;
};

// Map (x, t) -> (lambda*x, t/lambda); order by x is preserved. lambda must be
// positive. Exact (bitwise invertible) when lambda is a power of two.
std::vector<PlanarPoint> scale_points(std::vector<PlanarPoint> pts, double lambda);

// Header "x,t", one point per row, 17 significant digits, sorted by x.
void write_points_csv(std::ostream& os, std::span<const PlanarPoint> pts);

} // namespace hlab
