#pragma once

#include <functional>
#include <vector>

#include "holoifs/maps.hpp"

namespace holoifs {

// Hyperbolic metrics here use the unit-disk density |dw|/(1-|w|^2)
// (curvature -4). Distances are half of the curvature -1 convention.

/// d_Ω(z1, z2) for a disk Ω: artanh of the pseudo-hyperbolic distance after
/// moving Ω to the unit disk.
double hyp_dist_disk(const Disk& disk, Complex z1, Complex z2);

/// The hyperbolic ball {z : d_Ω(z, center) < rho} as a Euclidean disk.
Disk hyp_ball_disk(const Disk& disk, Complex center, double rho);

/// Largest r with B(center, r) inside the hyperbolic ball of radius rho.
double hyp_ball_inradius(const Disk& disk, Complex center, double rho);

/// Open real interval (lo, hi), lo < hi.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double a, double b);
    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

/// Ω_θ(I): the upper half of the disk D_θ(I) whose boundary meets ℝ at the
/// ends of I with angles θ and π−θ, its mirror image, and I itself.
class PoincareDomain {
public:
    PoincareDomain(Interval interval, double theta);

    const Interval& interval() const { return interval_; }
    double theta() const { return theta_; }
    /// Center of the circle carrying the upper boundary arc (below ℝ for θ < π/2).
    Complex upper_arc_center() const { return {interval_.mid(), offset_}; }
    double arc_radius() const { return radius_; }
    /// Topmost boundary point.
    Complex apex() const;

    bool contains(Complex z) const;
    /// Positive inside, negative outside: (R − |z − c|)/R against the arc of
    /// the matching half plane. Points on ℝ are scored against I.
    double relative_margin(Complex z) const;
    /// `count` points of the upper arc strictly between the endpoints,
    /// followed by their mirror images.
    std::vector<Complex> boundary_samples(std::size_t count) const;

private:
    Interval interval_;
    double theta_;
    double radius_;
    double offset_;
};

PoincareDomain poincare_domain(Interval interval, double theta);

/// Hyperbolic distance from z to I inside ℂ_I = ℂ \ (ℝ \ I), by the chain
/// u = affine(z) ∈ ℂ_(−1,1), s = exp(i·asin u) onto the right half plane,
/// followed by a golden-section search along the image geodesic of I.
double hyp_dist_slit(Interval interval, Complex z);

/// Density of the hyperbolic metric of ℂ_I at z (same normalization).
double slit_density(Interval interval, Complex z);

/// κ(θ): the common hyperbolic distance from ∂Ω_θ(I) to I in ℂ_I.
double kappa(double theta);

struct KoebeBounds {
    double inner;
    double outer;
};

/// Radii with B(0, inner) ⊂ φ(B(0, tR)) ⊂ B(0, outer) for univalent φ on
/// B(0, R), φ(0) = 0, |φ'(0)| = deriv0.
KoebeBounds koebe_bounds(double R, double t, double deriv0);

/// Bound on |φ'(x)|/|φ'(y)| over the closed sub-disk of relative radius s,
/// for every univalent φ on the disk: ((1+s)/(1−s))^4.
double distortion_ratio_bound(double s);

struct SullContainment {
    bool contained;
    double worst_margin;  // relative margin, see PoincareDomain::relative_margin
};

using ComplexFn = std::function<Complex(Complex)>;

/// Samples ∂Ω_θ(I), maps it through the real univalent g and checks the
/// image against Ω_θ'(g(I)). Throws NotReal if g(z̄) ≠ conj g(z) on the
/// samples, OutsideDomain if a sample leaves V.
SullContainment check_sull_containment(const ComplexFn& g, const Disk& v, Interval interval, double theta,
                                       double theta_prime, std::size_t samples = 256);
SullContainment check_sull_containment(const HoloMap& g, const Disk& v, Interval interval, double theta,
                                       double theta_prime, std::size_t samples = 256);

/// Smallest θ' in [θ, max_theta] passing check_sull_containment, by bisection
/// (containment is monotone in θ'). Returns a negative value if none does.
double smallest_sull_angle(const ComplexFn& g, const Disk& v, Interval interval, double theta, double max_theta,
                           double tol = 1e-6);

}  // namespace holoifs
