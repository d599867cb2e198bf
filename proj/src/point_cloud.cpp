#include "holoifs/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace holoifs {

namespace {

struct CellKey {
    std::int64_t x, y;
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        const auto h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ull ^
                       (static_cast<std::uint64_t>(k.y) + 0x7F4A7C159E3779B9ull + (static_cast<std::uint64_t>(k.x) << 6));
        return static_cast<std::size_t>(h);
    }
};

CellKey key_of(Complex z, double cell) {
    return {static_cast<std::int64_t>(std::floor(z.real() / cell)), static_cast<std::int64_t>(std::floor(z.imag() / cell))};
}

}  // namespace

PointCloud::PointCloud(std::vector<Complex> points) : points_(std::move(points)) {
    if (points_.empty()) return;
    double xmin = points_[0].real(), xmax = xmin, ymin = points_[0].imag(), ymax = ymin;
    for (const auto& p : points_) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double w = xmax - xmin, h = ymax - ymin;
    const double n = static_cast<double>(points_.size());
    cell_ = std::max({std::sqrt(w * h / n), std::max(w, h) / n, 1e-300});
    auto dims = [&] {
        nx_ = static_cast<std::int64_t>(std::floor(w / cell_)) + 1;
        ny_ = static_cast<std::int64_t>(std::floor(h / cell_)) + 1;
    };
    dims();
    while (static_cast<double>(nx_) * static_cast<double>(ny_) > 4.0 * n + 16.0) {
        cell_ *= 1.5;
        dims();
    }
    x0_ = xmin;
    y0_ = ymin;

    const auto ncells = static_cast<std::size_t>(nx_ * ny_);
    std::vector<std::uint32_t> counts(ncells + 1, 0);
    std::vector<std::uint32_t> cell_of(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto cx = std::clamp<std::int64_t>(static_cast<std::int64_t>((points_[i].real() - x0_) / cell_), 0, nx_ - 1);
        const auto cy = std::clamp<std::int64_t>(static_cast<std::int64_t>((points_[i].imag() - y0_) / cell_), 0, ny_ - 1);
        cell_of[i] = static_cast<std::uint32_t>(cy * nx_ + cx);
        ++counts[cell_of[i] + 1];
    }
    for (std::size_t c = 0; c < ncells; ++c) counts[c + 1] += counts[c];
    cell_start_ = counts;
    cell_items_.resize(points_.size());
    std::vector<std::uint32_t> fill(counts.begin(), counts.end() - 1);
    for (std::size_t i = 0; i < points_.size(); ++i) cell_items_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
}

std::size_t PointCloud::nearest_index(Complex z) const {
    const auto cx = static_cast<std::int64_t>(std::floor((z.real() - x0_) / cell_));
    const auto cy = static_cast<std::int64_t>(std::floor((z.imag() - y0_) / cell_));
    auto outside = [](std::int64_t c, std::int64_t n) -> std::int64_t {
        if (c < 0) return -c;
        if (c >= n) return c - (n - 1);
        return 0;
    };
    const std::int64_t k0 = std::max(outside(cx, nx_), outside(cy, ny_));
    const std::int64_t kmax = std::max({std::abs(cx), std::abs(cx - (nx_ - 1)), std::abs(cy), std::abs(cy - (ny_ - 1))});

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    auto visit = [&](std::int64_t x, std::int64_t y) {
        if (x < 0 || y < 0 || x >= nx_ || y >= ny_) return;
        const auto c = static_cast<std::size_t>(y * nx_ + x);
        for (auto j = cell_start_[c]; j < cell_start_[c + 1]; ++j) {
            const auto idx = cell_items_[j];
            const double d = std::abs(points_[idx] - z);
            if (d < best || (d == best && idx < best_i)) {
                best = d;
                best_i = idx;
            }
        }
    };
    for (std::int64_t k = k0; k <= kmax; ++k) {
        if (k == 0) {
            visit(cx, cy);
        } else {
            const std::int64_t xl = std::max(cx - k, std::int64_t{0}), xh = std::min(cx + k, nx_ - 1);
            for (std::int64_t x = xl; x <= xh; ++x) {
                visit(x, cy - k);
                visit(x, cy + k);
            }
            const std::int64_t yl = std::max(cy - k + 1, std::int64_t{0}), yh = std::min(cy + k - 1, ny_ - 1);
            for (std::int64_t y = yl; y <= yh; ++y) {
                visit(cx - k, y);
                visit(cx + k, y);
            }
        }
        if (best <= static_cast<double>(k) * cell_) break;
    }
    return best_i;
}

double PointCloud::distance(Complex z) const { return std::abs(points_[nearest_index(z)] - z); }

double hausdorff(const PointCloud& a, const PointCloud& b) {
    double d = 0.0;
    for (const auto& p : a.points()) d = std::max(d, b.distance(p));
    for (const auto& p : b.points()) d = std::max(d, a.distance(p));
    return d;
}

double hausdorff(std::span<const Complex> a, std::span<const Complex> b) {
    return hausdorff(PointCloud(std::vector<Complex>(a.begin(), a.end())),
                     PointCloud(std::vector<Complex>(b.begin(), b.end())));
}

std::size_t GridDeduper::KeyHash::operator()(const Key& k) const noexcept { return CellKeyHash{}({k.x, k.y}); }

bool GridDeduper::insert(Complex z) {
    const auto k = key_of(z, cell_);
    return seen_.insert({k.x, k.y}).second;
}

std::vector<Complex> grid_dedup(std::span<const Complex> points, double cell) {
    GridDeduper seen(cell);
    std::vector<Complex> out;
    for (const auto& p : points)
        if (seen.insert(p)) out.push_back(p);
    return out;
}

std::vector<Complex> dedup_within(std::span<const Complex> points, double tol) {
    std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> grid;
    std::vector<Complex> out;
    for (const auto& p : points) {
        const auto k = key_of(p, tol);
        bool dup = false;
        for (std::int64_t dx = -1; dx <= 1 && !dup; ++dx)
            for (std::int64_t dy = -1; dy <= 1 && !dup; ++dy) {
                auto it = grid.find({k.x + dx, k.y + dy});
                if (it == grid.end()) continue;
                for (auto idx : it->second)
                    if (std::abs(out[idx] - p) <= tol) {
                        dup = true;
                        break;
                    }
            }
        if (!dup) {
            grid[k].push_back(out.size());
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace holoifs
