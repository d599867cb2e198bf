#include "holoifs/maps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "holoifs/errors.hpp"

namespace holoifs {

namespace {

constexpr double kSingularDerivative = 1e-300;
constexpr double kBranchTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt_complex(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", z.real(), z.imag());
    return buf;
}

double ray_distance(Complex p) {
    // distance from p to the ray (-inf, 0]
    return p.real() <= 0.0 ? std::abs(p.imag()) : std::abs(p);
}

}  // namespace

Disk::Disk(Complex c, double r) : center(c), radius(r) {
    if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw DomainError("disk needs a finite center and a positive radius");
}

std::vector<Complex> Disk::boundary_samples(std::size_t count) const {
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
        out.push_back(center + std::polar(radius, t));
    }
    return out;
}

// ---------------------------------------------------------------- Word

Word::Word(std::vector<int> letters, int alphabet_size)
    : letters_(std::move(letters)), alphabet_size_(alphabet_size) {
    if (alphabet_size_ < 1) throw IndexError("alphabet size must be positive");
    for (int i : letters_)
        if (i < 0 || i >= alphabet_size_)
            throw IndexError("letter " + std::to_string(i) + " outside alphabet of size " +
                             std::to_string(alphabet_size_));
}

Word Word::concat(const Word& tail) const {
    if (tail.alphabet_size_ != alphabet_size_) throw IndexError("concatenating words over different alphabets");
    std::vector<int> out = letters_;
    out.insert(out.end(), tail.letters_.begin(), tail.letters_.end());
    return Word(std::move(out), alphabet_size_);
}

Word Word::repeat(int times) const {
    std::vector<int> out;
    out.reserve(letters_.size() * static_cast<std::size_t>(std::max(times, 0)));
    for (int k = 0; k < times; ++k) out.insert(out.end(), letters_.begin(), letters_.end());
    return Word(std::move(out), alphabet_size_);
}

Word Word::drop_front(std::size_t n) const {
    n = std::min(n, letters_.size());
    return Word(std::vector<int>(letters_.begin() + static_cast<std::ptrdiff_t>(n), letters_.end()),
                alphabet_size_);
}

bool Word::is_prefix_of(const Word& other) const {
    return letters_.size() <= other.letters_.size() &&
           std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
}

Word Word::min_rotation() const {
    std::vector<int> best = letters_;
    std::vector<int> rot = letters_;
    for (std::size_t k = 1; k < letters_.size(); ++k) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return Word(std::move(best), alphabet_size_);
}

std::string Word::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(letters_[i]);
    }
    return s + ")";
}

std::vector<Word> words_of_length(int alphabet_size, int length) {
    std::vector<Word> out;
    std::vector<int> cur(static_cast<std::size_t>(length), 0);
    while (true) {
        out.emplace_back(cur, alphabet_size);
        int pos = length - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == alphabet_size - 1) {
            cur[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++cur[static_cast<std::size_t>(pos)];
    }
    return out;
}

// ---------------------------------------------------------------- HoloMap

HoloMap HoloMap::identity() { return affine(1.0, 0.0); }

HoloMap HoloMap::affine(Complex alpha, Complex b) { return HoloMap(Affine{alpha, b}); }

HoloMap HoloMap::sqrt_branch(Complex c, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("sqrt branch sign must be +1 or -1");
    return HoloMap(SqrtBranch{c, sign});
}

HoloMap HoloMap::composite(std::vector<HoloMap> parts) {
    if (parts.empty()) throw DomainError("composite map needs at least one part");
    return HoloMap(Composite{std::move(parts)});
}

HoloMap HoloMap::inverse_of(HoloMap inner) {
    return HoloMap(InverseOf{std::make_shared<const HoloMap>(std::move(inner))});
}

Complex HoloMap::operator()(Complex z) const { return eval(*this, z); }

std::string HoloMap::describe() const {
    return std::visit(
        Overloaded{
            [](const Affine& a) { return "affine[" + fmt_complex(a.alpha) + "*z+" + fmt_complex(a.b) + "]"; },
            [](const SqrtBranch& s) {
                return std::string(s.sign > 0 ? "+" : "-") + "sqrt[z-" + fmt_complex(s.c) + "]";
            },
            [](const Composite& c) {
                std::string s = "compose[";
                for (std::size_t i = 0; i < c.parts.size(); ++i) s += (i ? ", " : "") + c.parts[i].describe();
                return s + "]";
            },
            [](const InverseOf& inv) { return "inverse[" + inv.inner->describe() + "]"; },
        },
        v_);
}

Complex eval(const HoloMap& map, Complex z) {
    return std::visit(
        Overloaded{
            [&](const HoloMap::Affine& a) { return a.alpha * z + a.b; },
            [&](const HoloMap::SqrtBranch& s) {
                const Complex u = z - s.c;
                if (std::abs(u) == 0.0) throw DomainError("square-root branch evaluated at its branch point");
                return static_cast<double>(s.sign) * std::sqrt(u);
            },
            [&](const HoloMap::Composite& c) {
                Complex x = z;
                for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) x = eval(*it, x);
                return x;
            },
            [&](const HoloMap::InverseOf& inv) { return invert(*inv.inner, z); },
        },
        map.variant());
}

Complex deriv(const HoloMap& map, Complex z) {
    return std::visit(
        Overloaded{
            [&](const HoloMap::Affine& a) { return a.alpha; },
            [&](const HoloMap::SqrtBranch& s) {
                const Complex u = z - s.c;
                if (std::abs(u) == 0.0) throw DomainError("square-root branch differentiated at its branch point");
                return static_cast<double>(s.sign) / (2.0 * std::sqrt(u));
            },
            [&](const HoloMap::Composite& c) {
                Complex x = z;
                Complex d = 1.0;
                for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) {
                    d *= deriv(*it, x);
                    x = eval(*it, x);
                }
                return d;
            },
            [&](const HoloMap::InverseOf& inv) {
                const Complex x = invert(*inv.inner, z);
                const Complex d = deriv(*inv.inner, x);
                if (std::abs(d) < kSingularDerivative) throw SingularDerivative("inverse of a map with vanishing derivative");
                return 1.0 / d;
            },
        },
        map.variant());
}

Complex invert(const HoloMap& map, Complex y) {
    return std::visit(
        Overloaded{
            [&](const HoloMap::Affine& a) {
                if (std::abs(a.alpha) < kSingularDerivative) throw NotInImage("constant affine map has no inverse");
                return (y - a.b) / a.alpha;
            },
            [&](const HoloMap::SqrtBranch& s) {
                // y = sign*sqrt(x - c) with the principal root, so x = y^2 + c provided
                // y sits on the half-plane selected by the sign.
                const Complex back = static_cast<double>(s.sign) * std::sqrt(y * y);
                if (std::abs(back - y) > kBranchTolerance * std::max(1.0, std::abs(y)) || std::abs(y) == 0.0)
                    throw NotInImage("point " + fmt_complex(y) + " is not in the image of the selected branch");
                return y * y + s.c;
            },
            [&](const HoloMap::Composite& c) {
                Complex x = y;
                for (const auto& part : c.parts) x = invert(part, x);
                return x;
            },
            [&](const HoloMap::InverseOf& inv) { return eval(*inv.inner, y); },
        },
        map.variant());
}

HoloMap compose(const HoloMap& outer, const HoloMap& inner) {
    if (const auto* a = outer.as_affine()) {
        if (const auto* b = inner.as_affine()) return HoloMap::affine(a->alpha * b->alpha, a->alpha * b->b + a->b);
    }
    std::vector<HoloMap> parts;
    auto append = [&](const HoloMap& m) {
        if (const auto* c = std::get_if<HoloMap::Composite>(&m.variant()))
            parts.insert(parts.end(), c->parts.begin(), c->parts.end());
        else
            parts.push_back(m);
    };
    append(outer);
    append(inner);
    // merge adjacent affine pieces produced by flattening
    std::vector<HoloMap> merged;
    for (auto& p : parts) {
        if (!merged.empty() && merged.back().is_affine() && p.is_affine())
            merged.back() = compose(merged.back(), p);
        else
            merged.push_back(std::move(p));
    }
    if (merged.size() == 1) return merged.front();
    return HoloMap::composite(std::move(merged));
}

HoloMap inverse(const HoloMap& map) {
    if (const auto* a = map.as_affine()) {
        if (std::abs(a->alpha) < kSingularDerivative) throw NotInImage("constant affine map has no inverse");
        return HoloMap::affine(1.0 / a->alpha, -a->b / a->alpha);
    }
    if (const auto* inv = std::get_if<HoloMap::InverseOf>(&map.variant())) return *inv->inner;
    return HoloMap::inverse_of(map);
}

HoloMap iterate(const HoloMap& map, int n) {
    HoloMap out = HoloMap::identity();
    for (int k = 0; k < n; ++k) out = compose(out, map);
    return out;
}

// ---------------------------------------------------------------- IfsSystem

IfsSystem::IfsSystem(std::vector<HoloMap> maps, Disk domain) : maps_(std::move(maps)), domain_(domain) {
    if (maps_.empty()) throw InvalidSystem("an IFS needs at least one map");
    const auto boundary = domain_.boundary_samples(kBoundarySamples);
    margin_ = domain_.radius;
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        if (const auto* s = std::get_if<HoloMap::SqrtBranch>(&maps_[i].variant())) {
            if (ray_distance(domain_.center - s->c) <= domain_.radius)
                throw InvalidSystem("map " + std::to_string(i) + ": branch cut of the square root meets the domain");
        }
        for (const Complex p : boundary) {
            Complex img;
            try {
                img = eval(maps_[i], p);
            } catch (const Error& e) {
                throw InvalidSystem("map " + std::to_string(i) + " is not defined on the domain boundary: " + e.what());
            }
            margin_ = std::min(margin_, domain_.radius - std::abs(img - domain_.center));
        }
        if (margin_ <= kBoundaryMargin)
            throw InvalidSystem("map " + std::to_string(i) + " does not map the domain compactly into itself");
    }
}

bool IfsSystem::all_affine() const {
    return std::all_of(maps_.begin(), maps_.end(), [](const HoloMap& m) { return m.is_affine(); });
}

HoloMap compose_word(const IfsSystem& system, const Word& w) {
    if (w.alphabet_size() != static_cast<int>(system.size()))
        throw IndexError("word alphabet size " + std::to_string(w.alphabet_size()) + " does not match system with " +
                         std::to_string(system.size()) + " maps");
    HoloMap out = HoloMap::identity();
    for (int i : w.letters()) out = compose(out, system.map(static_cast<std::size_t>(i)));
    return out;
}

Complex eval_word(const IfsSystem& system, const Word& w, Complex z) {
    const auto letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) z = eval(system.map(static_cast<std::size_t>(*it)), z);
    return z;
}

Complex deriv_word(const IfsSystem& system, const Word& w, Complex z) {
    const auto letters = w.letters();
    Complex d = 1.0;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        const auto& m = system.map(static_cast<std::size_t>(*it));
        d *= deriv(m, z);
        z = eval(m, z);
    }
    return d;
}

}  // namespace holoifs
