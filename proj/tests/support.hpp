#pragma once

// Shared fixtures and independent oracles for the test binaries. Nothing here
// calls into the library's numerics except to build systems.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "holoifs/maps.hpp"

namespace testsupport {

using holoifs::Complex;
using holoifs::Disk;
using holoifs::HoloMap;
using holoifs::IfsSystem;
using holoifs::Word;

inline HoloMap aff(double a, double b) { return HoloMap::affine(Complex(a, 0.0), Complex(b, 0.0)); }

inline Disk cantor_domain(double radius = 2.0) { return Disk(Complex(0.5, 0.0), radius); }

inline IfsSystem thirds(double radius = 2.0) { return IfsSystem({aff(1.0 / 3, 0), aff(1.0 / 3, 2.0 / 3)}, cantor_domain(radius)); }
inline IfsSystem thirds_reflected() { return IfsSystem({aff(1.0 / 3, 0), aff(-1.0 / 3, 1)}, cantor_domain()); }
inline IfsSystem thirds_squared() {
    return IfsSystem({aff(1.0 / 9, 0), aff(1.0 / 9, 2.0 / 9), aff(1.0 / 9, 2.0 / 3), aff(1.0 / 9, 8.0 / 9)},
                     cantor_domain());
}
inline IfsSystem thirds_shifted() { return IfsSystem({aff(1.0 / 3, 0), aff(1.0 / 3, 0.5)}, cantor_domain()); }
inline IfsSystem halves() { return IfsSystem({aff(0.5, 0), aff(0.5, 0.5)}, cantor_domain()); }
inline IfsSystem single() { return IfsSystem({aff(0.5, 0)}, Disk(Complex(0, 0), 1.0)); }
inline IfsSystem j6() {
    return IfsSystem({HoloMap::sqrt_branch(Complex(-6, 0), 1), HoloMap::sqrt_branch(Complex(-6, 0), -1)},
                     Disk(Complex(0, 0), 4.0));
}

inline Word word(std::vector<int> letters, int m = 2) { return Word(std::move(letters), m); }

// Euclidean distance from x to the middle-thirds Cantor set, exact up to
// 3^-depth. Recurses only into intervals that can still matter.
inline double cantor_distance(Complex z, int depth = 30) {
    const double x = z.real();
    double best = 1e300;
    struct Frame {
        double lo, len;
        int level;
    };
    std::vector<Frame> stack{{0.0, 1.0, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        const double gap = std::max({f.lo - x, x - (f.lo + f.len), 0.0});
        if (gap >= best) continue;
        if (f.level == depth) {
            best = gap;
            continue;
        }
        // nearer child on top of the stack, so the first leaf is already close
        const double third = f.len / 3.0;
        const Frame left{f.lo, third, f.level + 1}, right{f.lo + 2.0 * third, third, f.level + 1};
        const bool right_nearer = x > f.lo + 0.5 * f.len;
        stack.push_back(right_nearer ? left : right);
        stack.push_back(right_nearer ? right : left);
    }
    return std::hypot(best, z.imag());
}

// Distance from z to the slit-plane interval (lo, hi) through a chain
// different from the library's: u ↦ √((1+u)/(1−u)) sends the slit plane to
// the right half plane and the interval to the positive axis, where the
// curvature −4 distance to that axis is asinh(|Im s|/Re s)/2.
inline double slit_distance_oracle(double lo, double hi, Complex z) {
    const double c = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
    const Complex u = (z - m) / c;
    const Complex s = std::sqrt((1.0 + u) / (1.0 - u));
    return 0.5 * std::asinh(std::abs(s.imag()) / s.real());
}

// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n = 2000) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int k = 1; k < n; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline Complex random_in_disk(std::mt19937_64& rng, const Disk& d, double shrink = 0.95) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double r = d.radius * shrink * std::sqrt(U(rng));
    const double t = 2.0 * M_PI * U(rng);
    return d.center + std::polar(r, t);
}

inline Word random_word(std::mt19937_64& rng, int alphabet, int length) {
    std::uniform_int_distribution<int> L(0, alphabet - 1);
    std::vector<int> letters(static_cast<std::size_t>(length));
    for (int& l : letters) l = L(rng);
    return Word(std::move(letters), alphabet);
}

}  // namespace testsupport
