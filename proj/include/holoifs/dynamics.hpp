#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holoifs/attractor.hpp"
#include "holoifs/maps.hpp"
#include "holoifs/point_cloud.hpp"

namespace holoifs {

/// β_w with its multiplier g_w'(β_w).
struct PeriodicPoint {
    Word word;
    Complex point;
    Complex multiplier;
};

/// Affine words use b/(1−α); other words iterate g_w from the center of Ω
/// and finish with a Newton polish. Throws NoConvergence after 10^5 steps.
PeriodicPoint fixed_point(const IfsSystem& system, const Word& w);

struct MultiplierSpectrum {
    std::vector<PeriodicPoint> entries;
    int max_word_length = 0;

    /// Multipliers with duplicates (within tol) removed, in entry order.
    std::vector<Complex> distinct_multipliers(double tol = 1e-9) const;
    bool contains(Complex multiplier, double tol = 1e-9) const;
};

/// One entry per periodic orbit: only words equal to their minimal cyclic
/// rotation are enumerated, then (point, multiplier) duplicates are dropped.
MultiplierSpectrum spectrum(const IfsSystem& system, int max_len, std::uint64_t word_cap = 10'000'000);

/// The inverse dynamics φ on the attractor, φ = g_i^{-1} on g_i(A).
///
/// Branch i claims x when x lies within the claim radius of g_i(net). The
/// radius is half the SSC margin, so a claimed point is certified to sit
/// closer to g_i(A) than to any other first-level piece.
class InverseMap {
public:
    struct Step {
        Complex point;
        int branch;
    };

    /// Throws SeparationFailure unless the SSC certificate is valid. Keeps a
    /// pointer to `system`, which must outlive the map.
    InverseMap(const IfsSystem& system, const AttractorNet& net);

    const IfsSystem& system() const { return *system_; }
    double claim_radius() const { return claim_; }
    /// Throws OutsideAttractor if no branch claims x, AmbiguousBranch if
    /// several do.
    Step operator()(Complex x) const;
    /// Branches claiming x, in index order.
    std::vector<int> claimants(Complex x) const;
    /// Distance from x to g_i(net).
    double piece_distance(int i, Complex x) const { return pieces_.at(static_cast<std::size_t>(i)).distance(x); }

private:
    const IfsSystem* system_;
    std::vector<PointCloud> pieces_;
    double claim_;
};

InverseMap::Step inverse_step(const IfsSystem& system, const AttractorNet& net, Complex x);

struct OrbitReport {
    std::vector<Complex> points;
    std::vector<int> branches;  // branches[k] took points[k] to points[k+1]
    std::optional<int> preperiod;
    std::optional<int> period;
    /// The orbit left every claim region before closing up.
    bool escaped = false;

    bool periodic() const { return period.has_value(); }
};

struct OrbitOptions {
    int max_iter = 200;
    double tol = 1e-9;
};

/// φ-orbit of x. The first pair p < q with |x_p − x_q| ≤ tol (smallest q,
/// then smallest p) fixes preperiod p and period q − p.
OrbitReport orbit(const InverseMap& phi, Complex x, const OrbitOptions& options = {});
OrbitReport orbit(const IfsSystem& system, const AttractorNet& net, Complex x, const OrbitOptions& options = {});

/// β_v for 1 ≤ |v| ≤ max_word together with g_w(β_v) for 1 ≤ |w| ≤
/// max_prefix, deduplicated at 1e-10.
std::vector<Complex> prep_points(const IfsSystem& system, int max_word, int max_prefix,
                                 std::uint64_t word_cap = 10'000'000);

/// All words of length 1..max_len in length-then-lexicographic order.
std::vector<Word> words_up_to(int alphabet_size, int max_len);

}  // namespace holoifs
