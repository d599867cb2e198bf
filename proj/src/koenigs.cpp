#include "holoifs/koenigs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holoifs/errors.hpp"

namespace holoifs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr int kDefaultOrder = 32;

using Coeffs = std::vector<Complex>;  // index n holds the z^n coefficient, index 0 unused

// Σ_{j≥1} f_j·u^j with u(0) = 0, truncated at `order`.
Coeffs compose_tail(const Coeffs& f, const Coeffs& u, int order) {
    const auto N = static_cast<std::size_t>(order);
    Coeffs out(N + 1, 0.0);
    Coeffs power(N + 1, 0.0);  // u^j
    for (std::size_t n = 1; n <= N && n < u.size(); ++n) power[n] = u[n];
    for (std::size_t j = 1; j <= N; ++j) {
        if (j < f.size() && f[j] != 0.0)
            for (std::size_t n = j; n <= N; ++n) out[n] += f[j] * power[n];
        if (j == N) break;
        Coeffs next(N + 1, 0.0);
        for (std::size_t a = j; a <= N; ++a) {
            if (power[a] == 0.0) continue;
            for (std::size_t b = 1; a + b <= N && b < u.size(); ++b) next[a + b] += power[a] * u[b];
        }
        power = std::move(next);
    }
    return out;
}

// Solves for the unknown series s in Σ_j a_j (s^j)_n = rhs_n, one
// coefficient at a time: s_n·(a_1 − shift_n) = rhs_n − Σ_{j≥2} a_j (s^j)_n.
// Reversion uses shift = 0, rhs = δ_{n1}; Koenigs uses shift_n = λ^n.
template <class Shift>
Coeffs solve_triangular(const Coeffs& a, Complex s1, int order, Shift shift) {
    const auto N = static_cast<std::size_t>(order);
    // pow[j][n] = (s^j)_n
    std::vector<Coeffs> pow(N + 1, Coeffs(N + 1, 0.0));
    Coeffs s(N + 1, 0.0);
    s[1] = s1;
    pow[1][1] = s1;
    auto coeff = [&](std::size_t j) { return j < a.size() ? a[j] : Complex(0.0); };
    for (std::size_t n = 2; n <= N; ++n) {
        Complex sum = 0.0;
        for (std::size_t j = 2; j <= n; ++j) {
            Complex p = 0.0;
            for (std::size_t i = 1; i + (j - 1) <= n; ++i) p += s[i] * pow[j - 1][n - i];
            pow[j][n] = p;
            sum += coeff(j) * p;
        }
        s[n] = -sum / (coeff(1) - shift(n));
        pow[1][n] = s[n];
    }
    // The diagonal pow[n][n] = s1^n is covered by the loop for j = n.
    return s;
}

Coeffs padded(const PowerSeriesGerm& g) {
    Coeffs out(1, 0.0);
    out.insert(out.end(), g.coefficients().begin(), g.coefficients().end());
    return out;
}

PowerSeriesGerm from_padded(const Coeffs& c) {
    return PowerSeriesGerm::from_coefficients(Coeffs(c.begin() + 1, c.end()));
}

struct Taylor {
    Complex value;
    Coeffs tail;  // index n ≥ 1
};

double binomial_half(int n) {
    double b = 1.0;
    for (int k = 0; k < n; ++k) b *= (0.5 - k) / (k + 1);
    return b;
}

Taylor taylor(const HoloMap& map, Complex z0, int order) {
    const auto N = static_cast<std::size_t>(order);
    return std::visit(
        Overloaded{
            [&](const HoloMap::Affine& a) {
                Taylor t{a.alpha * z0 + a.b, Coeffs(N + 1, 0.0)};
                t.tail[1] = a.alpha;
                return t;
            },
            [&](const HoloMap::SqrtBranch& s) {
                // s·√(p + h) = s·√p·(1 + h/p)^{1/2}
                const Complex p = z0 - s.c;
                const Complex root = static_cast<double>(s.sign) * std::sqrt(p);
                Taylor t{root, Coeffs(N + 1, 0.0)};
                Complex inv_pow = 1.0;
                for (std::size_t n = 1; n <= N; ++n) {
                    inv_pow /= p;
                    t.tail[n] = root * binomial_half(static_cast<int>(n)) * inv_pow;
                }
                return t;
            },
            [&](const HoloMap::Composite& c) {
                Taylor acc = taylor(c.parts.back(), z0, order);
                for (auto it = c.parts.rbegin() + 1; it != c.parts.rend(); ++it) {
                    const Taylor outer = taylor(*it, acc.value, order);
                    acc = {outer.value, compose_tail(outer.tail, acc.tail, order)};
                }
                return acc;
            },
            [&](const HoloMap::InverseOf& inv) {
                const Complex x0 = invert(*inv.inner, z0);
                const Taylor fwd = taylor(*inv.inner, x0, order);
                if (std::abs(fwd.tail[1]) == 0.0) throw NonInvertible("inner map has vanishing derivative");
                return Taylor{x0, solve_triangular(fwd.tail, 1.0 / fwd.tail[1], order, [](std::size_t) { return 0.0; })};
            },
        },
        map.variant());
}

}  // namespace

PowerSeriesGerm PowerSeriesGerm::from_coefficients(std::vector<Complex> coefficients, std::optional<double> sample_radius) {
    if (coefficients.empty()) throw DomainError("power series needs at least one coefficient");
    PowerSeriesGerm g;
    g.c_ = std::move(coefficients);
    const int N = g.order();

    // Root-test growth over the upper half of the coefficients, falling back
    // to all non-linear terms for short or sparse series.
    auto growth_over = [&](int from) {
        double grow = 0.0;
        for (int n = std::max(from, 2); n <= N; ++n)
            grow = std::max(grow, std::pow(std::abs(g.coefficient(n)), 1.0 / n));
        return grow;
    };
    double grow = growth_over(N / 2);
    const bool polynomial_like = grow == 0.0;
    if (polynomial_like) grow = growth_over(2);

    auto tail_at = [&](double r) {
        if (polynomial_like || grow == 0.0) return 0.0;
        // |c_n| ≤ C·grow^n fitted on the upper half, summed past N.
        double C = 0.0;
        for (int n = std::max(N / 2, 2); n <= N; ++n)
            C = std::max(C, std::abs(g.coefficient(n)) / std::pow(grow, n));
        const double q = r * grow;
        if (q >= 1.0) return std::numeric_limits<double>::infinity();
        return C * std::pow(q, N + 1) / (1.0 - q);
    };

    if (sample_radius) {
        g.radius_ = *sample_radius;
    } else {
        g.radius_ = grow > 0.0 ? 0.25 / grow : 1.0;
        while (tail_at(g.radius_) > kTailTarget) g.radius_ *= 0.8;
    }
    g.tail_ = tail_at(g.radius_);
    return g;
}

Complex PowerSeriesGerm::coefficient(int n) const {
    if (n < 1 || n > order()) return 0.0;
    return c_[static_cast<std::size_t>(n - 1)];
}

Complex PowerSeriesGerm::evaluate(Complex z) const {
    Complex acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc * z;
}

Complex PowerSeriesGerm::derivative(Complex z) const {
    Complex acc = 0.0;
    for (int n = order(); n >= 1; --n) acc = acc * z + static_cast<double>(n) * coefficient(n);
    return acc;
}

PowerSeriesGerm compose(const PowerSeriesGerm& outer, const PowerSeriesGerm& inner) {
    return from_padded(compose_tail(padded(outer), padded(inner), std::min(outer.order(), inner.order())));
}

PowerSeriesGerm invert(const PowerSeriesGerm& germ) {
    if (germ.multiplier() == 0.0) throw NonInvertible("series with vanishing linear term has no inverse");
    return from_padded(solve_triangular(padded(germ), 1.0 / germ.multiplier(), germ.order(),
                                        [](std::size_t) { return Complex(0.0); }));
}

Complex evaluate(const PowerSeriesGerm& germ, Complex z) { return germ.evaluate(z); }

PowerSeriesGerm series_of_map(const HoloMap& map, Complex fixpoint, int order) {
    if (order < 1) throw DomainError("series order must be positive");
    const Complex image = eval(map, fixpoint);
    if (std::abs(image - fixpoint) > 1e-12 * std::max(1.0, std::abs(fixpoint)))
        throw NotAFixedPoint("map moves the point by " + std::to_string(std::abs(image - fixpoint)));
    return from_padded(taylor(map, fixpoint, order).tail);
}

PowerSeriesGerm koenigs(const PowerSeriesGerm& r, int order) {
    const Complex lambda = r.multiplier();
    const double mod = std::abs(lambda);
    if (!(mod > 0.0 && mod < 1.0)) throw InvalidMultiplier("Koenigs linearization needs 0 < |lambda| < 1");
    if (order < 1) throw DomainError("series order must be positive");
    // Coefficients past the order of R are zero, which is exact for polynomials.
    const int N = order;
    Coeffs rc = padded(r);
    rc.resize(static_cast<std::size_t>(N) + 1, 0.0);
    // R∘K = K∘(λ·): k_n(λ^n − λ) = Σ_{j≥2} r_j (K^j)_n.
    const Coeffs k = solve_triangular(rc, 1.0, N, [&](std::size_t n) { return std::pow(lambda, static_cast<int>(n)); });
    PowerSeriesGerm out = from_padded(k);
    out.ill_conditioned_ = mod > 0.9;
    return out;
}

PowerSeriesGerm iterate(const PowerSeriesGerm& g, int l) {
    if (l < 1) throw DomainError("iterate needs l >= 1");
    PowerSeriesGerm acc = g;
    for (int k = 1; k < l; ++k) acc = compose(g, acc);
    return acc;
}

std::vector<PowerSeriesGerm> functional_roots(const PowerSeriesGerm& r, int l) {
    if (l < 1) throw DomainError("functional_roots needs l >= 1");
    const Complex lambda = r.multiplier();
    if (!(std::abs(lambda) > 0.0 && std::abs(lambda) < 1.0))
        throw InvalidMultiplier("functional roots need 0 < |lambda| < 1");
    if (l == 1) return {r};
    const PowerSeriesGerm K = koenigs(r, std::max(r.order(), kDefaultOrder));
    const PowerSeriesGerm Kinv = invert(K);
    const double mod = std::pow(std::abs(lambda), 1.0 / l);
    const double arg = std::arg(lambda);
    std::vector<PowerSeriesGerm> out;
    for (int k = 0; k < l; ++k) {
        const Complex nu = std::polar(mod, (arg + 2.0 * std::numbers::pi * k) / l);
        Coeffs scaled = padded(Kinv);
        for (auto& c : scaled) c *= nu;
        out.push_back(compose(K, from_padded(scaled)));
    }
    return out;
}

}  // namespace holoifs
