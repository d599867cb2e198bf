#pragma once

#include <optional>
#include <vector>

#include "holoifs/maps.hpp"

namespace holoifs {

/// Truncated power series c_1 z + … + c_N z^N at a fixed point (the fixed
/// point itself is the origin of the local coordinate).
class PowerSeriesGerm {
public:
    static constexpr double kTailTarget = 1e-10;

    /// `coefficients[k]` is c_{k+1}. Without an explicit radius the sample
    /// radius is 0.25 over a root-test growth estimate, shrunk until the
    /// geometric tail bound drops below kTailTarget.
    static PowerSeriesGerm from_coefficients(std::vector<Complex> coefficients,
                                             std::optional<double> sample_radius = std::nullopt);

    int order() const { return static_cast<int>(c_.size()); }
    /// c_n for n ≥ 1; zero beyond the order.
    Complex coefficient(int n) const;
    const std::vector<Complex>& coefficients() const { return c_; }
    Complex multiplier() const { return coefficient(1); }
    double sample_radius() const { return radius_; }
    /// Estimated truncation error on |z| ≤ sample_radius.
    double tail_bound() const { return tail_; }
    /// Set when |c_1| > 0.9: the Koenigs divisors λ^n − λ get small.
    bool ill_conditioned() const { return ill_conditioned_; }

    Complex evaluate(Complex z) const;
    Complex derivative(Complex z) const;

private:
    std::vector<Complex> c_;
    double radius_ = 0.0;
    double tail_ = 0.0;
    bool ill_conditioned_ = false;

    friend PowerSeriesGerm koenigs(const PowerSeriesGerm& r, int order);
};

/// outer∘inner truncated to the smaller order.
PowerSeriesGerm compose(const PowerSeriesGerm& outer, const PowerSeriesGerm& inner);
/// Series reversion; throws NonInvertible if c_1 = 0.
PowerSeriesGerm invert(const PowerSeriesGerm& germ);
Complex evaluate(const PowerSeriesGerm& germ, Complex z);

/// Taylor series of map(fixpoint + z) − fixpoint. Throws NotAFixedPoint
/// unless |map(fixpoint) − fixpoint| ≤ 1e-12·max(1, |fixpoint|).
PowerSeriesGerm series_of_map(const HoloMap& map, Complex fixpoint, int order = 32);

/// Koenigs linearizer K, K'(0) = 1, with R∘K = K∘(λ·). Throws
/// InvalidMultiplier unless 0 < |λ| < 1.
PowerSeriesGerm koenigs(const PowerSeriesGerm& r, int order = 32);

/// The l germs K∘(ν·)∘K⁻¹ over the l-th roots ν of λ, principal root first
/// and then counterclockwise.
std::vector<PowerSeriesGerm> functional_roots(const PowerSeriesGerm& r, int l);

/// Self-composition g^l as a series.
PowerSeriesGerm iterate(const PowerSeriesGerm& g, int l);

}  // namespace holoifs
