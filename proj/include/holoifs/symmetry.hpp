#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holoifs/attractor.hpp"
#include "holoifs/dynamics.hpp"
#include "holoifs/maps.hpp"

namespace holoifs {

/// A system together with everything the germ machinery reads from it.
struct AnalyzedSystem {
    std::shared_ptr<const IfsSystem> system;
    AttractorNet net;
    SeparationCertificate ssc;
    std::optional<InverseMap> phi;  // present iff the SSC certificate is valid
    std::optional<RhoRadii> rho;    // likewise
    double s_floor;

    const IfsSystem& sys() const { return *system; }
    bool separated() const { return phi.has_value(); }
    /// Throws SeparationFailure when the SSC certificate is not valid.
    const InverseMap& inverse_map() const;
};

AnalyzedSystem analyze(const IfsSystem& system, double epsilon, const NetOptions& options = {});

/// inf |f_j'| over the attractor, estimated on the net and on the fixed
/// points of the single maps. Throws DegenerateDerivative below 1e-300.
double s_floor(const IfsSystem& system, const AttractorNet& net);

/// Smallest N with max_{|w|=N} max_net |g_w'| ≤ s_F.
int min_depth(const IfsSystem& system, const AttractorNet& net, double s_F, std::uint64_t eval_cap = 10'000'000);

/// First k letters of the address of x, by k applications of φ.
Word address(const InverseMap& phi, Complex x, int k);
Word address(const IfsSystem& system, const AttractorNet& net, Complex x, int k);

/// The constants shared by every germ between G and F.
struct SystemPair {
    const AnalyzedSystem* G;
    const AnalyzedSystem* F;
    double rho;     // min of the two rho_G radii
    double radius;  // (3 − √8)·rho
    double s_F;
    int N;          // min_depth(G, s_F)

    /// Both systems must be separated.
    SystemPair(const AnalyzedSystem& g, const AnalyzedSystem& f);
};

/// H = f_v⁻¹∘g_w on B(base, radius).
struct SymmetryGerm {
    Complex base;
    double radius = 0.0;
    Word word_g;
    Word word_f;
    HoloMap map = HoloMap::identity();
    Complex derivative;  // H'(base)
    Complex image;       // H(base)
    // 64-point boundary check of B(H(a), s_F·ρ/25) ⊂ H(B(a, r)) ⊂ B(H(a), ρ)
    double image_min_radius = 0.0;
    double image_max_radius = 0.0;
    bool sandwich_ok = false;
    /// Smallest slack (claim radius − distance) along the address walk.
    double address_margin = 0.0;
};

/// Throws CriterionEmpty when even the first address letter is too
/// contracting, GermInvariantViolation when |H'(a)| leaves [s_F, 1].
SymmetryGerm build_symmetry(const SystemPair& pair, Complex a, const Word& w);

struct SymmetryCheck {
    std::size_t forward_samples = 0;
    std::size_t backward_samples = 0;
    std::size_t forward_failures = 0;
    std::size_t backward_failures = 0;
    double forward_residual = 0.0;
    double backward_residual = 0.0;
    double forward_allowance = 0.0;
    double backward_allowance = 0.0;

    bool passed() const { return forward_failures == 0 && backward_failures == 0 && forward_samples > 0; }
};

/// Net points of G in B(a, r) must map near the net of F, and net points of
/// F in B(H(a), s_F·ρ/25) must pull back near the net of G.
SymmetryCheck verify_symmetry(const SymmetryGerm& germ, const SystemPair& pair, std::size_t n_samples = 64,
                              double tol = 1e-9);

/// g_w^l = f_v∘f_ṽ∘f_v⁻¹ near β_w.
struct ConjugacyRelation {
    int exponent_l = 0;
    int first_power = 0;  // k with H_k = H_{k+l}
    Word outer;           // v
    Word inner;           // ṽ
    Word source;          // w
    Complex anchor;       // β_w
    double residual = 0.0;
};

/// Germs for w^k at β_w, k = 1..k_max, searched for the first equal pair.
ConjugacyRelation detect_coincidence(const SystemPair& pair, const Word& w, int k_max = 16);

/// Agreement at 32 points of B(center, radius) within tol.
bool germs_equal(const HoloMap& a, const HoloMap& b, Complex center, double radius, double tol = 1e-9);

struct SpectrumMatch {
    Complex lambda;
    int l;
    Word word;
};

struct SpectrumCompat {
    std::vector<SpectrumMatch> matches;
    std::vector<PeriodicPoint> unmatched;
};

/// For each multiplier of G, the smallest l ≤ l_max with λ^l in σ(F).
SpectrumCompat spectrum_compat(const MultiplierSpectrum& specG, const MultiplierSpectrum& specF, int l_max = 4,
                               double tol = 1e-9);

enum class Verdict { Shared, NotShared, Inconclusive };
std::string to_string(Verdict v);

struct SharedOptions {
    double epsilon = 1e-3;
    int prep_word = 5;
    int prep_max_orbit = 64;
    double orbit_tol = 1e-9;
    int orbit_max_iter = 200;  // φ steps per orbit; a pass also needs preperiod + period ≤ prep_max_orbit
    int spectrum_len = 4;
    std::uint64_t spectrum_word_budget = 1u << 17;
    int l_max = 4;
    std::optional<int> M;  // functional-equation word length, default N + 1
    int M_extension = 4;   // M may grow up to N + M_extension
    double func_tol = 1e-9;
    int func_samples = 16;
    NetOptions net;
};

struct PrepCount {
    int passed = 0;
    int failed = 0;
    int max_orbit = 0;  // largest preperiod + period among passes
};

/// One sampled instance of f_u∘f_{u'}⁻¹ = g_t∘g_{t'}⁻¹ on g_{t'}(D).
struct FunctionalIdentity {
    std::size_t disk = 0;
    Word t, t_ref, u, u_ref;
    double residual = 0.0;
    std::size_t samples = 0;
};

struct SharedAttractorReport {
    double hausdorff = 0.0;
    double epsilon_g = 0.0;
    double epsilon_f = 0.0;
    bool ssc_g = false;
    bool ssc_f = false;
    PrepCount prep_forward;   // β_w of G under φ_F
    PrepCount prep_backward;  // β_w of F under φ_G
    int spectrum_len_g = 0, spectrum_len_f = 0;
    std::vector<SpectrumMatch> spectrum_matches_gf;
    std::vector<SpectrumMatch> spectrum_matches_fg;
    std::size_t spectrum_unmatched_gf = 0;
    std::size_t spectrum_unmatched_fg = 0;
    int min_depth = 0;
    int M = 0;
    double rho = 0.0;
    double germ_radius = 0.0;
    double s_F = 0.0;
    std::size_t box_disks = 0;
    std::vector<FunctionalIdentity> functional_equations;
    std::size_t functional_unmatched = 0;
    double functional_max_residual = 0.0;
    std::vector<std::string> notes;
    Verdict verdict = Verdict::Inconclusive;
};

SharedAttractorReport shared_attractor(const IfsSystem& G, const IfsSystem& F, const SharedOptions& options = {});

}  // namespace holoifs
