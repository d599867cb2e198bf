#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "holoifs/maps.hpp"

namespace holoifs {

/// Immutable planar point set with a uniform-grid index for exact nearest
/// neighbour queries.
class PointCloud {
public:
    PointCloud() = default;
    explicit PointCloud(std::vector<Complex> points);

    const std::vector<Complex>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    /// Index of the closest point; the cloud must be non-empty.
    std::size_t nearest_index(Complex z) const;
    double distance(Complex z) const;

private:
    std::vector<Complex> points_;
    double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
    std::int64_t nx_ = 1, ny_ = 1;
    std::vector<std::uint32_t> cell_start_;  // CSR layout over cells
    std::vector<std::uint32_t> cell_items_;
};

/// Symmetric Hausdorff distance between two non-empty point sets.
double hausdorff(std::span<const Complex> a, std::span<const Complex> b);
double hausdorff(const PointCloud& a, const PointCloud& b);

/// Streaming form of grid_dedup: insert() accepts a point iff its cell is new.
class GridDeduper {
public:
    explicit GridDeduper(double cell) : cell_(cell) {}
    bool insert(Complex z);

private:
    struct Key {
        std::int64_t x, y;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    double cell_;
    std::unordered_set<Key, KeyHash> seen_;
};

/// Keeps the first point of every cell of side `cell` (input order preserved).
std::vector<Complex> grid_dedup(std::span<const Complex> points, double cell);

/// Keeps points that are farther than `tol` from every earlier kept point.
std::vector<Complex> dedup_within(std::span<const Complex> points, double tol);

}  // namespace holoifs
