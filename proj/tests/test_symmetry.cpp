#include <doctest.h>

#include <random>

#include "holoifs/errors.hpp"
#include "holoifs/symmetry.hpp"
#include "support.hpp"

using namespace holoifs;
using namespace testsupport;

namespace {

constexpr double kEps = 1e-3;

struct Fixture {
    AnalyzedSystem G, F;
    SystemPair pair;
    Fixture(const IfsSystem& g, const IfsSystem& f) : G(analyze(g, kEps)), F(analyze(f, kEps)), pair(G, F) {}
};

HoloMap word_map(const IfsSystem& s, const Word& w) { return compose_word(s, w); }

}  // namespace

TEST_CASE("derivative floors") {
    CHECK(analyze(thirds(), kEps).s_floor == doctest::Approx(1.0 / 3));
    CHECK(analyze(thirds_reflected(), kEps).s_floor == doctest::Approx(1.0 / 3));
    CHECK(analyze(thirds_squared(), kEps).s_floor == doctest::Approx(1.0 / 9));
    // inf of 1/(2|√(z+6)|) over the Julia set, attained at z = 3
    const auto J = analyze(j6(), kEps);
    CHECK(J.s_floor == doctest::Approx(1.0 / 6).epsilon(1e-9));
    double oracle = 1e300;
    for (Complex p : J.net.points()) oracle = std::min(oracle, 0.5 / std::abs(std::sqrt(p + 6.0)));
    CHECK(J.s_floor <= oracle);
    CHECK(J.s_floor >= oracle * (1 - 1e-3));
}

TEST_CASE("minimal depth") {
    CHECK(Fixture(thirds(), thirds()).pair.N == 1);
    CHECK(Fixture(thirds(), thirds_squared()).pair.N == 2);
    CHECK(Fixture(thirds_reflected(), thirds()).pair.N == 1);
}

TEST_CASE("addresses") {
    const auto sys = thirds();
    const auto net = compute_net(sys, kEps);
    CHECK(address(sys, net, 2.0 / 3, 3) == word({1, 0, 0}));
    CHECK(address(sys, net, 0.25, 4) == word({0, 1, 0, 1}));
    CHECK(address(sys, net, 1.0, 2) == word({1, 1}));
}

TEST_CASE("pair constants") {
    Fixture fx(thirds_reflected(), thirds());
    CHECK(fx.pair.rho == doctest::Approx(std::min(fx.G.rho->rho_G, fx.F.rho->rho_G)));
    CHECK(fx.pair.radius == doctest::Approx((3 - std::sqrt(8.0)) * fx.pair.rho));
    CHECK(fx.pair.s_F == fx.F.s_floor);
    const auto H = analyze(halves(), kEps);
    CHECK_FALSE(H.separated());
    CHECK_THROWS_AS(SystemPair(H, fx.F), SeparationFailure);
}

TEST_CASE("symmetry germ examples") {
    Fixture rt(thirds_reflected(), thirds());
    const auto g = build_symmetry(rt.pair, 0.0, word({1}));
    CHECK(g.word_f == word({1}));
    std::mt19937_64 rng(0x5a01);
    for (int k = 0; k < 100; ++k) {
        const Complex z = random_in_disk(rng, Disk(0.0, g.radius), 1.0);
        CHECK(std::abs(eval(g.map, z) - (1.0 - z)) <= 1e-9);
    }
    CHECK(std::abs(g.derivative + 1.0) <= 1e-15);
    CHECK(g.sandwich_ok);

    Fixture tt(thirds(), thirds());
    const auto id = build_symmetry(tt.pair, 0.0, word({0}));
    CHECK(id.word_f == word({0}));
    for (Complex z : Disk(0.0, id.radius).boundary_samples(16)) CHECK(std::abs(eval(id.map, z) - z) <= 1e-15);

    const auto two = build_symmetry(tt.pair, 0.0, word({1, 0}));
    CHECK(two.word_f == word({1, 0}));
    for (Complex z : Disk(0.0, two.radius).boundary_samples(16)) CHECK(std::abs(eval(two.map, z) - z) <= 1e-14);

    Fixture ts(thirds(), thirds_squared());
    CHECK_THROWS_AS(build_symmetry(ts.pair, 0.0, word({0})), CriterionEmpty);
}

TEST_CASE("property: germ derivative window and image sandwich") {
    std::mt19937_64 rng(0x5a02);
    for (auto [g, f] : {std::pair{thirds_reflected(), thirds()}, std::pair{thirds(), thirds_squared()},
                        std::pair{thirds_squared(), thirds()}, std::pair{j6(), j6()}}) {
        Fixture fx(g, f);
        const auto& pts = fx.G.net.points();
        const int m = static_cast<int>(g.size());
        for (int trial = 0; trial < 12; ++trial) {
            const Complex a = pts[rng() % pts.size()];
            const Word w = random_word(rng, m, fx.pair.N + static_cast<int>(rng() % 3));
            const auto germ = build_symmetry(fx.pair, a, w);
            const double d = std::abs(germ.derivative);
            CHECK(d >= fx.pair.s_F * (1 - 1e-9));
            CHECK(d <= 1.0 + 1e-9);
            CHECK(germ.sandwich_ok);
            // independent sandwich check on 64 boundary points
            for (Complex z : Disk(a, germ.radius).boundary_samples(64)) {
                const double r = std::abs(eval(germ.map, z) - germ.image);
                CHECK(r >= fx.pair.s_F * fx.pair.rho / 25);
                CHECK(r <= fx.pair.rho);
            }
            CHECK(verify_symmetry(germ, fx.pair).passed());
        }
    }
}

TEST_CASE("property: F-words grow with the G-word") {
    Fixture fx(thirds_reflected(), thirds());
    std::mt19937_64 rng(0x5a03);
    const Word full = random_word(rng, 2, 10);
    std::size_t prev = 0;
    for (std::size_t n = 1; n <= full.size(); ++n) {
        const Word w(std::vector<int>(full.letters().begin(), full.letters().begin() + static_cast<long>(n)), 2);
        const auto germ = build_symmetry(fx.pair, 0.0, w);
        CHECK(germ.word_f.size() >= prev);
        prev = germ.word_f.size();
    }
    CHECK(prev >= 9);
}

TEST_CASE("verify_symmetry residuals") {
    Fixture tt(thirds(), thirds());
    const auto id = build_symmetry(tt.pair, 0.0, word({0}));
    const auto ci = verify_symmetry(id, tt.pair);
    CHECK(ci.passed());
    CHECK(ci.forward_residual == 0.0);

    Fixture rt(thirds_reflected(), thirds());
    const auto flip = build_symmetry(rt.pair, 0.0, word({1}));
    const auto cf = verify_symmetry(flip, rt.pair);
    CHECK(cf.passed());
    CHECK(cf.forward_residual <= 2 * kEps);

    auto bad = flip;
    bad.map = HoloMap::affine(-1.0, 1.05);
    bad.image = eval(bad.map, bad.base);
    const auto cb = verify_symmetry(bad, rt.pair);
    CHECK_FALSE(cb.passed());
    CHECK(cb.forward_residual >= 0.05 - 2 * kEps);
}

TEST_CASE("property: words map the OSC components into the attractor") {
    const auto sys = thirds();
    const auto net = compute_net(sys, kEps);
    const std::vector<Disk> O{Disk(1.0 / 6, 1.0 / 6 + 0.01), Disk(5.0 / 6, 1.0 / 6 + 0.01)};
    REQUIRE(certify_strong_osc(sys, O, net).valid());
    for (const Word& w : words_up_to(2, 3))
        for (const Disk& D : O)
            for (Complex p : net.points())
                if (D.contains(p)) CHECK(net.cloud().distance(eval_word(sys, w, p)) <= 2 * net.epsilon());
}

TEST_CASE("coincidences") {
    Fixture rt(thirds_reflected(), thirds());
    const auto rel = detect_coincidence(rt.pair, word({1}));
    CHECK(rel.exponent_l == 2);
    CHECK(rel.residual <= 1e-12);
    const auto lhs = iterate(word_map(rt.G.sys(), rel.source), rel.exponent_l);
    const auto fv = word_map(rt.F.sys(), rel.outer);
    const auto rhs = compose(fv, compose(word_map(rt.F.sys(), rel.inner), inverse(fv)));
    CHECK(germs_equal(lhs, rhs, rel.anchor, 0.01, 1e-12));
    // g_1^2 = z/9 + 2/3 = f_(1,0)
    CHECK(germs_equal(lhs, word_map(rt.F.sys(), word({1, 0})), rel.anchor, 0.01, 1e-12));

    Fixture tt(thirds(), thirds());
    const auto r0 = detect_coincidence(tt.pair, word({0}));
    CHECK(r0.exponent_l == 1);
    CHECK(r0.inner == word({0}));
    const auto r01 = detect_coincidence(tt.pair, word({0, 1}));
    CHECK(r01.exponent_l == 1);
    CHECK(r01.inner.size() == 2);
    CHECK(r01.inner.min_rotation() == word({0, 1}));
}

TEST_CASE("property: coincidences reproduce multipliers") {
    std::mt19937_64 rng(0x5a04);
    for (auto [g, f] : {std::pair{thirds_reflected(), thirds()}, std::pair{thirds(), thirds_squared()},
                        std::pair{thirds_squared(), thirds_reflected()}, std::pair{j6(), j6()}}) {
        Fixture fx(g, f);
        for (int trial = 0; trial < 6; ++trial) {
            const Word w = random_word(rng, static_cast<int>(g.size()), 1 + static_cast<int>(rng() % 3));
            const auto rel = detect_coincidence(fx.pair, w);
            const Complex lhs = std::pow(fixed_point(g, w).multiplier, rel.exponent_l);
            const Complex base = invert(word_map(f, rel.outer), rel.anchor);
            const Complex rhs = deriv_word(f, rel.inner, base);
            CHECK(std::abs(lhs - rhs) <= 1e-9);
        }
    }
}

TEST_CASE("spectrum compatibility") {
    const auto sF = spectrum(thirds(), 4);
    MultiplierSpectrum minus{{PeriodicPoint{word({1}), 0.75, -1.0 / 3}}, 1};
    const auto c = spectrum_compat(minus, sF);
    REQUIRE(c.matches.size() == 1);
    CHECK(c.matches[0].l == 2);
    MultiplierSpectrum plus{{PeriodicPoint{word({0}), 0.0, 1.0 / 3}}, 1};
    CHECK(spectrum_compat(plus, sF).matches[0].l == 1);

    const auto sG = spectrum(thirds(), 4);
    const auto sq = spectrum(thirds_squared(), 4);
    const auto gs = spectrum_compat(sG, sq);
    CHECK(gs.unmatched.empty());
    for (const auto& m : gs.matches) {
        const int n = static_cast<int>(std::lround(-std::log(std::abs(m.lambda)) / std::log(3.0)));
        CHECK(m.l == (n % 2 == 0 ? 1 : 2));
    }
    MultiplierSpectrum odd{{PeriodicPoint{word({0}), 0.0, 0.7}}, 1};
    CHECK(spectrum_compat(odd, sF).unmatched.size() == 1);
}

TEST_CASE("shared attractor verdicts") {
    const auto a = shared_attractor(thirds(), thirds_reflected());
    CHECK(a.verdict == Verdict::Shared);
    CHECK(a.hausdorff <= 2 * kEps);
    CHECK(a.prep_forward.failed == 0);
    CHECK(a.prep_backward.failed == 0);
    CHECK(a.spectrum_unmatched_gf == 0);
    for (const auto& m : a.spectrum_matches_gf) CHECK(m.l <= 2);
    CHECK_FALSE(a.functional_equations.empty());
    CHECK(a.functional_max_residual <= 1e-9);

    CHECK(shared_attractor(thirds(), thirds_squared()).verdict == Verdict::Shared);
    const auto n = shared_attractor(thirds(), thirds_shifted());
    CHECK(n.verdict == Verdict::NotShared);
    CHECK(n.hausdorff >= 1.0 / 6 - 2 * kEps);
    CHECK(shared_attractor(j6(), j6()).verdict == Verdict::Shared);
    CHECK(shared_attractor(halves(), halves()).verdict == Verdict::Inconclusive);

    SharedOptions tight;
    tight.net.word_cap = 64;
    CHECK_THROWS_AS(shared_attractor(thirds(), thirds_reflected(), tight), BudgetExceeded);
}

TEST_CASE("property: verdicts are symmetric") {
    const std::vector<IfsSystem> all{thirds(), thirds_reflected(), thirds_squared(), thirds_shifted()};
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            CHECK(shared_attractor(all[i], all[j]).verdict == shared_attractor(all[j], all[i]).verdict);
}
