#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace holoifs {

using Complex = std::complex<double>;

/// Open Euclidean disk B(center, radius).
struct Disk {
    Complex center;
    double radius = 1.0;

    Disk() = default;
    Disk(Complex c, double r);

    bool contains(Complex z) const { return std::abs(z - center) < radius; }
    double diameter() const { return 2.0 * radius; }
    /// `count` equispaced points on the boundary circle, starting at angle 0.
    std::vector<Complex> boundary_samples(std::size_t count) const;
};

/// Finite word over the alphabet {0, ..., alphabet_size-1}. The empty word
/// stands for the identity composition.
class Word {
public:
    Word() = default;
    Word(std::vector<int> letters, int alphabet_size);

    std::span<const int> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int alphabet_size() const { return alphabet_size_; }
    int operator[](std::size_t i) const { return letters_[i]; }

    Word concat(const Word& tail) const;
    Word repeat(int times) const;
    /// Letters after the first `n`.
    Word drop_front(std::size_t n) const;
    bool is_prefix_of(const Word& other) const;
    /// Lexicographically smallest cyclic rotation.
    Word min_rotation() const;

    std::string to_string() const;

    friend bool operator==(const Word& a, const Word& b) {
        return a.alphabet_size_ == b.alphabet_size_ && a.letters_ == b.letters_;
    }
    friend bool operator<(const Word& a, const Word& b) { return a.letters_ < b.letters_; }

private:
    std::vector<int> letters_;
    int alphabet_size_ = 1;
};

/// All words of exactly `length` letters, in lexicographic order.
std::vector<Word> words_of_length(int alphabet_size, int length);

/// A holomorphic map from a closed set of variants.
///
/// Composite parts are stored outermost first: Composite([f, g]) is f∘g.
/// SqrtBranch(c, sign) is z ↦ sign·√(z − c) with the principal square root,
/// i.e. one of the two inverse branches of z ↦ z² + c.
class HoloMap {
public:
    struct Affine {
        Complex alpha;
        Complex b;
    };
    struct SqrtBranch {
        Complex c;
        int sign = 1;
    };
    struct Composite {
        std::vector<HoloMap> parts;
    };
    struct InverseOf {
        std::shared_ptr<const HoloMap> inner;
    };
    using Variant = std::variant<Affine, SqrtBranch, Composite, InverseOf>;

    static HoloMap identity();
    static HoloMap affine(Complex alpha, Complex b);
    static HoloMap sqrt_branch(Complex c, int sign);
    static HoloMap composite(std::vector<HoloMap> parts);
    static HoloMap inverse_of(HoloMap inner);

    const Variant& variant() const { return v_; }
    const Affine* as_affine() const { return std::get_if<Affine>(&v_); }
    bool is_affine() const { return as_affine() != nullptr; }

    Complex operator()(Complex z) const;

    std::string describe() const;

private:
    explicit HoloMap(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

Complex eval(const HoloMap& map, Complex z);
Complex deriv(const HoloMap& map, Complex z);
Complex invert(const HoloMap& map, Complex y);

/// outer∘inner. Affine pairs collapse to one Affine and nested composites
/// are flattened.
HoloMap compose(const HoloMap& outer, const HoloMap& inner);
/// Closed-form inverse for Affine, unwrapping for InverseOf, otherwise InverseOf.
HoloMap inverse(const HoloMap& map);
/// n-fold self-composition; n == 0 gives the identity.
HoloMap iterate(const HoloMap& map, int n);

/// A finite holomorphic IFS on a disk Ω.
///
/// Construction checks the sampled boundary certificate: 256 equispaced
/// points of ∂Ω must map strictly inside Ω with margin 1e-9 under every
/// map. Square-root branches must keep their branch cut away from Ω.
class IfsSystem {
public:
    static constexpr std::size_t kBoundarySamples = 256;
    static constexpr double kBoundaryMargin = 1e-9;

    IfsSystem(std::vector<HoloMap> maps, Disk domain);

    std::size_t size() const { return maps_.size(); }
    const HoloMap& map(std::size_t i) const { return maps_.at(i); }
    const std::vector<HoloMap>& maps() const { return maps_; }
    const Disk& domain() const { return domain_; }
    bool all_affine() const;
    /// Smallest (radius − |g(p) − center|) over sampled boundary points p.
    double containment_margin() const { return margin_; }

private:
    std::vector<HoloMap> maps_;
    Disk domain_;
    double margin_ = 0.0;
};

/// g_w = g_{w[0]} ∘ … ∘ g_{w[n-1]}; the empty word gives the identity and
/// purely affine words collapse to a single Affine.
HoloMap compose_word(const IfsSystem& system, const Word& w);

/// Evaluates g_w(z) letter by letter without building a HoloMap.
Complex eval_word(const IfsSystem& system, const Word& w, Complex z);
/// g_w'(z) by the chain rule.
Complex deriv_word(const IfsSystem& system, const Word& w, Complex z);

}  // namespace holoifs
