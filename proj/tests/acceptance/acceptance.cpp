// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "holoifs/attractor.hpp"
#include "holoifs/cli/commands.hpp"
#include "holoifs/dynamics.hpp"
#include "holoifs/errors.hpp"
#include "holoifs/geometry.hpp"
#include "holoifs/koenigs.hpp"
#include "holoifs/symmetry.hpp"

using namespace holoifs;
using namespace testsupport;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Outcome cantor_attractor() {
    Outcome o;
    const double eps = 1e-3;
    const auto net = compute_net(thirds(), eps);
    double worst = 0.0;
    for (Complex p : net.points()) worst = std::max(worst, cantor_distance(p));
    o.require(worst <= eps, "ternary oracle distance " + num(worst) + " <= " + num(eps));
    const double h = hausdorff(net.points(), hutchinson_image(thirds(), net));
    o.require(h <= 2e-3, "d_H(net, Hutchinson image) " + num(h) + " <= 2e-3");
    o.note(std::to_string(net.size()) + " points, oracle " + num(worst) + ", Hutchinson " + num(h));
    return o;
}

Outcome ssc_certificate() {
    Outcome o;
    const double eps = 1e-3;
    const auto t = certify_ssc(thirds(), compute_net(thirds(), eps));
    o.require(t.valid(), "thirds certificate valid");
    o.require(std::abs(t.pairwise_distance - 1.0 / 3) <= 2 * eps, "thirds distance " + num(t.pairwise_distance));
    const auto h = certify_ssc(halves(), compute_net(halves(), eps));
    o.require(!h.valid(), "halves certificate invalid");
    o.require(h.certified_distance() == 0.0, "halves certified distance 0");
    o.note("thirds " + num(t.pairwise_distance) + ", halves certified " + num(h.certified_distance()) + " (sampled " +
           num(h.pairwise_distance) + ")");
    return o;
}

Outcome shared_positive() {
    Outcome o;
    for (const auto& [name, F] : {std::pair{"thirds-reflected", thirds_reflected()}, std::pair{"thirds-squared", thirds_squared()}}) {
        const auto r = shared_attractor(thirds(), F);
        o.require(r.verdict == Verdict::Shared, std::string(name) + " verdict " + to_string(r.verdict));
        o.require(!r.functional_equations.empty(), std::string(name) + " has functional equations");
        o.require(r.functional_max_residual <= 1e-9, std::string(name) + " residual " + num(r.functional_max_residual));
        o.require(r.hausdorff <= 2e-3, std::string(name) + " hausdorff " + num(r.hausdorff));
        o.note(std::string(name) + ": " + to_string(r.verdict) + ", " + std::to_string(r.functional_equations.size()) +
               " identities, max residual " + num(r.functional_max_residual) + ", d_H " + num(r.hausdorff));
    }
    return o;
}

Outcome shared_negative() {
    Outcome o;
    const auto r = shared_attractor(thirds(), thirds_shifted());
    const double gap = r.hausdorff - r.epsilon_g - r.epsilon_f;
    o.require(r.verdict == Verdict::NotShared, "verdict " + to_string(r.verdict));
    o.require(gap >= 1.0 / 6 - 2e-3, "certified gap " + num(gap));
    o.note("certified gap " + num(gap));
    return o;
}

Outcome symmetry_germ() {
    Outcome o;
    const auto G = analyze(thirds_reflected(), 1e-3);
    const auto F = analyze(thirds(), 1e-3);
    const SystemPair pair(G, F);
    const auto germ = build_symmetry(pair, 0.0, word({1}));
    std::mt19937_64 rng(0xacce55);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Complex z = random_in_disk(rng, Disk(0.0, germ.radius), 1.0);
        worst = std::max(worst, std::abs(eval(germ.map, z) - (1.0 - z)));
    }
    o.require(worst <= 1e-9, "sup |H(z) - (1 - z)| " + num(worst));
    const double d = std::abs(deriv(germ.map, 0.0));
    o.require(std::abs(d - 1.0) <= 1e-12, "|H'(0)| = " + num(d));
    o.require(d >= pair.s_F && d <= 1.0, "|H'(0)| in [s_F, 1]");
    const Complex c = eval(germ.map, 0.0);
    bool sandwich = true;
    for (Complex z : Disk(0.0, germ.radius).boundary_samples(64)) {
        const double r = std::abs(eval(germ.map, z) - c);
        sandwich = sandwich && r >= pair.s_F * pair.rho / 25 && r <= pair.rho;
    }
    o.require(sandwich, "image sandwich on 64 boundary samples");
    o.note("sup residual " + num(worst) + ", |H'(0)| " + num(d) + ", r " + num(germ.radius));
    return o;
}

Outcome conjugacy() {
    Outcome o;
    const auto G = analyze(thirds_reflected(), 1e-3);
    const auto F = analyze(thirds(), 1e-3);
    const SystemPair pair(G, F);
    const auto rel = detect_coincidence(pair, word({1}));
    o.require(rel.exponent_l == 2, "l = " + std::to_string(rel.exponent_l));
    o.require(rel.residual <= 1e-12, "residual " + num(rel.residual));
    const Complex law = std::pow(fixed_point(G.sys(), word({1})).multiplier, rel.exponent_l);
    // σ(F) keeps one entry per cycle; the 2-cycle {1/4, 3/4} is listed under (0,1)
    const auto at = fixed_point(F.sys(), word({1, 0}));
    const auto sF = spectrum(F.sys(), 2);
    bool found = false;
    for (const auto& e : sF.entries)
        found = found || (e.word == at.word.min_rotation() && std::abs(e.multiplier - law) <= 1e-10);
    o.require(std::abs(law - 1.0 / 9) <= 1e-15, "(-1/3)^2 = 1/9");
    o.require(std::abs(at.point - 0.75) <= 1e-10 && std::abs(at.multiplier - law) <= 1e-10, "f_(1,0) has 1/9 at 3/4");
    o.require(found, "sigma(F) lists the cycle of 3/4 with multiplier 1/9");
    o.note("l " + std::to_string(rel.exponent_l) + ", v " + rel.outer.to_string() + ", v~ " + rel.inner.to_string() +
           ", residual " + num(rel.residual));
    return o;
}

Outcome prep_cross_check() {
    Outcome o;
    const auto G = thirds_reflected();
    const auto F = thirds();
    const auto net = compute_net(F, 1e-3);
    const InverseMap phi(F, net);
    OrbitOptions opts;
    opts.tol = 1e-9;
    const Complex beta = fixed_point(G, word({1})).point;
    const auto r = orbit(phi, beta, opts);
    o.require(std::abs(beta - 0.75) <= 1e-15, "beta = 3/4");
    o.require(r.periodic() && *r.preperiod == 0 && *r.period == 2, "3/4 has preperiod 0, period 2");
    int checked = 0, worst = 0;
    for (const Word& w : words_up_to(2, 5)) {
        const auto ow = orbit(phi, fixed_point(G, w).point, opts);
        const bool ok = ow.periodic() && *ow.preperiod + *ow.period <= 64;
        o.require(ok, "beta_" + w.to_string() + " preperiodic within 64");
        if (ok) worst = std::max(worst, *ow.preperiod + *ow.period);
        ++checked;
    }
    o.note(std::to_string(checked) + " periodic points, largest preperiod+period " + std::to_string(worst));
    return o;
}

Outcome koenigs_roots() {
    Outcome o;
    const auto R = PowerSeriesGerm::from_coefficients({0.5, 1.0});
    const auto K = koenigs(R);
    o.require(std::abs(K.coefficient(2) + 4.0) <= 1e-9, "c_2(K) = " + num(K.coefficient(2).real()));
    const auto roots = functional_roots(R, 2);
    o.require(roots.size() == 2, "two roots");
    double worst = 0.0;
    for (const auto& g : roots) {
        o.require(std::abs(g.coefficient(1) * g.coefficient(1) - 0.5) <= 1e-10, "g'(0)^2 = 1/2");
        for (int ring = 0; ring <= 10; ++ring)
            for (Complex z : Disk(0.0, std::max(1e-6, 0.005 * ring)).boundary_samples(128))
                worst = std::max(worst, std::abs(g.evaluate(g.evaluate(z)) - R.evaluate(z)));
    }
    o.require(worst <= 1e-8, "sup |g(g(z)) - R(z)| " + num(worst));
    for (int l : {1, 2, 3, 5})
        o.require(functional_roots(R, l).size() == static_cast<std::size_t>(l), "root count for l = " + std::to_string(l));
    o.note("c_2 " + num(K.coefficient(2).real()) + ", sup |g∘g - R| on |z| <= 0.05: " + num(worst));
    return o;
}

Outcome julia() {
    Outcome o;
    const auto net = compute_net(j6(), 1e-5);
    const double eps = net.epsilon();
    o.require(net.cloud().distance(3.0) <= eps, "3 within epsilon");
    o.require(net.cloud().distance(-2.0) <= eps, "-2 within epsilon");
    o.require(net.size() >= 1000, "net has at least 1000 points");
    std::vector<std::size_t> idx(net.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::mt19937_64 rng(0x1a1a);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(std::min<std::size_t>(1000, idx.size()));
    double worst = 0.0;
    for (std::size_t i : idx) {
        const Complex z = net.points()[i];
        worst = std::max(worst, net.cloud().distance(z * z - 6.0));
    }
    o.require(worst <= 3 * eps, "forward image within 3 epsilon: " + num(worst));
    o.note(std::to_string(idx.size()) + " samples of " + std::to_string(net.size()) + ", worst " + num(worst) +
           " vs 3 eps " + num(3 * eps));
    return o;
}

Outcome geometry() {
    Outcome o;
    constexpr double kPi = std::numbers::pi;
    double prev = 0.0;
    bool increasing = true;
    for (int k = 1; k <= 20; ++k) {
        const double v = kappa(k * (kPi / 2) / 20);
        increasing = increasing && v > prev;
        prev = v;
    }
    o.require(increasing, "kappa strictly increasing on the grid");
    const Interval I(-1, 1);
    const PoincareDomain dom(I, kPi / 4);
    double lo = 1e300, hi = 0.0;
    for (Complex z : dom.boundary_samples(50)) {
        const double d = hyp_dist_slit(I, z);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    const double spread = (hi - lo) / hi;
    o.require(spread <= 1e-6, "boundary spread " + num(spread));
    for (double t : {0.1, 0.3, 3.0 - std::sqrt(8.0)}) {
        const auto kb = koebe_bounds(1.0, t, 1.0);
        double mn = 1e300, mx = 0.0;
        for (Complex z : Disk(0.0, t).boundary_samples(8192)) {
            const double m = std::abs(z / ((1.0 - z) * (1.0 - z)));
            mn = std::min(mn, m);
            mx = std::max(mx, m);
        }
        o.require(mn >= kb.inner && mx <= kb.outer * (1 + 1e-12), "Koebe bounds at t = " + num(t));
    }
    o.require(cardinality_bound(1.0 / 3, 1.0) == 49, "cardinality_bound(1/3, 1) = 49");
    o.note("kappa(pi/2) " + num(prev) + ", spread " + num(spread));
    return o;
}

Outcome determinism() {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "holoifs_acceptance";
    fs::create_directories(dir);
    const std::string g = std::string(HOLOIFS_CONFIG_DIR) + "/thirds.ifs";
    const std::string f = std::string(HOLOIFS_CONFIG_DIR) + "/thirds_reflected.ifs";
    std::vector<std::string> reports;
    for (int k = 0; k < 2; ++k) {
        const std::string path = (dir / ("run" + std::to_string(k) + ".report")).string();
        std::ostringstream out, err;
        const int code = cli::run_cli({"shared", g, f, "--report", path}, out, err);
        o.require(code == 0, "run " + std::to_string(k) + " exit code " + std::to_string(code));
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        reports.push_back(ss.str());
    }
    o.require(!reports[0].empty() && reports[0] == reports[1], "reports byte-identical");
    o.note(std::to_string(reports[0].size()) + " bytes");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Cantor-thirds attractor", cantor_attractor},
        {"SSC certificate", ssc_certificate},
        {"shared attractor (positive)", shared_positive},
        {"shared attractor (negative)", shared_negative},
        {"symmetry germ", symmetry_germ},
        {"conjugacy extraction", conjugacy},
        {"preperiodicity cross-check", prep_cross_check},
        {"Koenigs and functional roots", koenigs_roots},
        {"Julia set J6", julia},
        {"geometry", geometry},
        {"determinism", determinism},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome r;
        try {
            r = criteria[k].second();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        failed += !r.pass;
        std::printf("%s %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), r.detail.c_str());
        std::fflush(stdout);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%zu criteria, %d failed, %.2f s\n", criteria.size(), failed, secs);
    return failed == 0 ? 0 : 1;
}
