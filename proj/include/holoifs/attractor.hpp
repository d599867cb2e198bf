#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "holoifs/maps.hpp"
#include "holoifs/point_cloud.hpp"

namespace holoifs {

/// Finite point set within `epsilon` (Hausdorff) of the attractor.
class AttractorNet {
public:
    AttractorNet(std::vector<Complex> points, double epsilon, int depth);

    const std::vector<Complex>& points() const { return cloud_->points(); }
    std::size_t size() const { return cloud_->size(); }
    double epsilon() const { return epsilon_; }
    int depth() const { return depth_; }
    /// Fewer than two points: the attractor is (numerically) a singleton.
    bool degenerate() const { return size() < 2; }
    const PointCloud& cloud() const { return *cloud_; }
    /// Largest pairwise distance, via the convex hull.
    double diameter() const;

private:
    std::shared_ptr<const PointCloud> cloud_;
    double epsilon_;
    int depth_;
};

/// Uniform bound on |g_w'| over Ω for words of a given length, assembled
/// from blocks of `block` letters (each with sup bound `block_factor`) and
/// single letters (bound `letter_factor`).
struct ContractionEstimate {
    int block = 1;
    double block_factor = 0.0;
    double letter_factor = 0.0;

    double bound(int length) const;
};

/// Throws InvalidSystem when no block length up to 4 contracts.
ContractionEstimate contraction_estimate(const IfsSystem& system);

struct NetOptions {
    std::uint64_t word_cap = 10'000'000;
};

/// All images g_w(center of Ω) for |w| = n, n minimal with
/// bound(n)·diam(Ω) ≤ ε/2, deduplicated on a grid of cell ε/4. The reported
/// epsilon is the certified covering radius (≤ the request).
AttractorNet compute_net(const IfsSystem& system, double epsilon, const NetOptions& options = {});

/// ∪_i g_i(net), in map-major order.
std::vector<Complex> hutchinson_image(const IfsSystem& system, const AttractorNet& net);

double hausdorff(const AttractorNet& a, const AttractorNet& b);

struct SeparationCertificate {
    enum class Kind { SSC, StrongOSC };

    Kind kind = Kind::SSC;
    /// Smallest distance between images of different maps (sampled for OSC).
    double pairwise_distance = 0.0;
    double margin = 0.0;
    double lipschitz = 0.0;
    std::optional<std::vector<Disk>> osc_set;
    // strong OSC evidence
    bool meets_attractor = false;
    bool images_inside = false;
    bool images_disjoint = false;

    bool valid() const;
    /// Lower bound on the true distance between the first-level pieces:
    /// max(0, margin). Zero whenever the pieces may touch.
    double certified_distance() const { return margin > 0.0 ? margin : 0.0; }
};

SeparationCertificate certify_ssc(const IfsSystem& system, const AttractorNet& net);

/// O = union of `candidate` disks. Affine maps are checked in closed form;
/// other maps by boundary sampling with membership decided through inverses.
SeparationCertificate certify_strong_osc(const IfsSystem& system, const std::vector<Disk>& candidate,
                                         const AttractorNet& net);

struct RhoRadii {
    double rho_h;  // hyperbolic gap between the first-level pieces
    double rho_G;  // Euclidean radius fitting in every hyperbolic rho_h-ball about a net point
    double rho_L;  // Euclidean gap between the first-level pieces
};

/// Throws SeparationFailure unless the SSC certificate is valid.
RhoRadii rho_radius(const IfsSystem& system, const AttractorNet& net);

struct BoxRestriction {
    std::vector<Disk> disks;
    std::vector<Word> words;  // disks[k] covers g_{words[k]}(net)
    int depth = 0;
};

/// Pairwise disjoint disks around the cylinders g_w(net), |w| = depth, at the
/// first depth where every disk has diameter < eps_target.
BoxRestriction box_restriction(const IfsSystem& system, const AttractorNet& net, double eps_target,
                               const NetOptions& options = {});

/// ⌊(1 + 2·diam_A/r)²⌋: area bound on r-separated points in an r-neighbourhood
/// of a set of diameter diam_A.
long long cardinality_bound(double r, double diam_A);

}  // namespace holoifs
