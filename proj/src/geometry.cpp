#include "holoifs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holoifs/errors.hpp"

namespace holoifs {

namespace {

Complex to_unit(const Disk& disk, Complex z) {
    const Complex w = (z - disk.center) / disk.radius;
    if (!(std::abs(w) < 1.0)) throw OutsideDomain("point " + std::to_string(z.real()) + "+" +
                                                  std::to_string(z.imag()) + "i is not inside the disk");
    return w;
}

// u ↦ exp(i·asin u) = √(1−u²) + iu, analytic off the slits, onto Re s > 0.
// The unit-circle arc {e^{ix} : |x| < π/2} is the image of (−1, 1).
Complex slit_to_half_plane(Interval interval, Complex z) {
    if (z.imag() == 0.0 && (z.real() <= interval.lo || z.real() >= interval.hi))
        throw OnSlit("point " + std::to_string(z.real()) + " lies on the slits of the interval");
    const Complex u = (z - interval.mid()) / (0.5 * interval.length());
    return std::sqrt(1.0 - u * u) + Complex(0.0, 1.0) * u;
}

// Hyperbolic distance in the right half plane, density 1/(2 Re s).
double half_plane_dist(Complex s1, Complex s2) {
    const double p = std::abs(s1 - s2) / std::abs(s1 + std::conj(s2));
    return std::atanh(std::min(p, 1.0));
}

}  // namespace

double hyp_dist_disk(const Disk& disk, Complex z1, Complex z2) {
    const Complex w1 = to_unit(disk, z1), w2 = to_unit(disk, z2);
    const double p = std::abs(w1 - w2) / std::abs(1.0 - std::conj(w1) * w2);
    return std::atanh(std::min(p, 1.0));
}

Disk hyp_ball_disk(const Disk& disk, Complex center, double rho) {
    if (!(rho > 0.0)) throw DomainError("hyperbolic radius must be positive");
    const Complex a = to_unit(disk, center);
    const double t = std::tanh(rho);
    const double a2 = std::norm(a);
    const double den = 1.0 - t * t * a2;
    const Complex c = a * (1.0 - t * t) / den;
    const double r = t * (1.0 - a2) / den;
    return Disk(disk.center + disk.radius * c, disk.radius * r);
}

double hyp_ball_inradius(const Disk& disk, Complex center, double rho) {
    const Disk ball = hyp_ball_disk(disk, center, rho);
    return ball.radius - std::abs(center - ball.center);
}

Interval::Interval(double a, double b) : lo(a), hi(b) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw DomainError("interval needs lo < hi");
}

PoincareDomain::PoincareDomain(Interval interval, double theta) : interval_(interval), theta_(theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) throw DomainError("angle must lie in (0, pi)");
    const double c = 0.5 * interval.length();
    radius_ = c / std::sin(theta);
    offset_ = -c / std::tan(theta);
}

Complex PoincareDomain::apex() const { return {interval_.mid(), offset_ + radius_}; }

double PoincareDomain::relative_margin(Complex z) const {
    if (z.imag() == 0.0) {
        const double c = 0.5 * interval_.length();
        return (c - std::abs(z.real() - interval_.mid())) / c;
    }
    const Complex center(interval_.mid(), z.imag() > 0.0 ? offset_ : -offset_);
    return (radius_ - std::abs(z - center)) / radius_;
}

bool PoincareDomain::contains(Complex z) const { return relative_margin(z) > 0.0; }

std::vector<Complex> PoincareDomain::boundary_samples(std::size_t count) const {
    // The upper arc runs from hi (angle φ0) to lo (angle π − φ0) about the center.
    const Complex center = upper_arc_center();
    const double phi0 = std::atan2(-offset_, interval_.hi - center.real());
    const double phi1 = std::numbers::pi - phi0;
    std::vector<Complex> out;
    out.reserve(2 * count);
    for (std::size_t k = 1; k <= count; ++k) {
        const double phi = phi0 + (phi1 - phi0) * static_cast<double>(k) / static_cast<double>(count + 1);
        out.push_back(center + std::polar(radius_, phi));
    }
    for (std::size_t k = 0; k < count; ++k) out.push_back(std::conj(out[k]));
    return out;
}

PoincareDomain poincare_domain(Interval interval, double theta) { return PoincareDomain(interval, theta); }

double hyp_dist_slit(Interval interval, Complex z) {
    const Complex s = slit_to_half_plane(interval, z);
    if (z.imag() == 0.0) return 0.0;  // on I itself; the search below only gets within ~1e-13
    auto f = [&](double x) { return half_plane_dist(s, std::polar(1.0, x)); };
    // Distance to points along a geodesic is unimodal in the geodesic parameter.
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = -0.5 * std::numbers::pi, b = 0.5 * std::numbers::pi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    return std::min({f1, f2, f(0.5 * (a + b))});
}

double slit_density(Interval interval, Complex z) {
    const Complex s = slit_to_half_plane(interval, z);
    const double c = 0.5 * interval.length();
    const Complex u = (z - interval.mid()) / c;
    // ds/du = i·s/√(1−u²)
    const double ds = std::abs(s) / std::abs(std::sqrt(1.0 - u * u));
    return ds / (2.0 * s.real() * c);
}

double kappa(double theta) {
    const Interval unit(-1.0, 1.0);
    return hyp_dist_slit(unit, PoincareDomain(unit, theta).apex());
}

KoebeBounds koebe_bounds(double R, double t, double deriv0) {
    if (!(R > 0.0) || !(t > 0.0 && t < 1.0) || !(deriv0 > 0.0))
        throw DomainError("koebe_bounds needs R > 0, 0 < t < 1, deriv0 > 0");
    return {t / 4.0 * R * deriv0, t / ((1.0 - t) * (1.0 - t)) * R * deriv0};
}

double distortion_ratio_bound(double s) {
    if (!(s >= 0.0 && s < 1.0)) throw DomainError("relative radius must lie in [0, 1)");
    return std::pow((1.0 + s) / (1.0 - s), 4);
}

SullContainment check_sull_containment(const ComplexFn& g, const Disk& v, Interval interval, double theta,
                                       double theta_prime, std::size_t samples) {
    auto real_tol = [](Complex w) { return 1e-12 * std::max(1.0, std::abs(w)); };
    auto checked = [&](Complex z) {
        if (!v.contains(z)) throw OutsideDomain("sample of the angle domain leaves V");
        const Complex w = g(z);
        const Complex wc = g(std::conj(z));
        if (std::abs(wc - std::conj(w)) > real_tol(w)) throw NotReal("map is not real-symmetric on the samples");
        return w;
    };
    const Complex ga = checked(Complex(interval.lo, 0.0));
    const Complex gb = checked(Complex(interval.hi, 0.0));
    if (std::abs(ga.imag()) > real_tol(ga) || std::abs(gb.imag()) > real_tol(gb))
        throw NotReal("map does not send the interval ends to the real line");
    const Interval target(std::min(ga.real(), gb.real()), std::max(ga.real(), gb.real()));
    const PoincareDomain source(interval, theta);
    const PoincareDomain dest(target, theta_prime);

    double worst = std::numeric_limits<double>::infinity();
    for (const Complex& z : source.boundary_samples(samples)) worst = std::min(worst, dest.relative_margin(checked(z)));
    return {worst >= -1e-9, worst};
}

SullContainment check_sull_containment(const HoloMap& g, const Disk& v, Interval interval, double theta,
                                       double theta_prime, std::size_t samples) {
    return check_sull_containment([&](Complex z) { return eval(g, z); }, v, interval, theta, theta_prime, samples);
}

double smallest_sull_angle(const ComplexFn& g, const Disk& v, Interval interval, double theta, double max_theta,
                           double tol) {
    auto ok = [&](double tp) { return check_sull_containment(g, v, interval, theta, tp).contained; };
    if (!ok(max_theta)) return -1.0;
    if (ok(theta)) return theta;
    double lo = theta, hi = max_theta;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace holoifs
