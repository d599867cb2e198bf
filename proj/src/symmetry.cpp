#include "holoifs/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holoifs/errors.hpp"
#include "holoifs/parallel.hpp"

namespace holoifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxAddressLength = 256;
constexpr std::size_t kSandwichSamples = 64;
constexpr std::size_t kGermSamples = 32;
const double kGermRadiusFactor = 3.0 - std::sqrt(8.0);

// Evenly spread points of B(center, radius) (sunflower pattern).
std::vector<Complex> disk_samples(Complex center, double radius, std::size_t count) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double rr = radius * std::sqrt((static_cast<double>(k) + 0.5) / static_cast<double>(count));
        out.push_back(center + std::polar(rr, golden * static_cast<double>(k)));
    }
    return out;
}

std::vector<Complex> points_in_disk(const AttractorNet& net, Complex center, double radius, std::size_t limit) {
    std::vector<Complex> inside;
    for (const Complex& p : net.points())
        if (std::abs(p - center) < radius) inside.push_back(p);
    if (inside.size() <= limit) return inside;
    std::vector<Complex> out;
    out.reserve(limit);
    for (std::size_t k = 0; k < limit; ++k) out.push_back(inside[k * inside.size() / limit]);
    return out;
}

Complex power(Complex z, int l) {
    Complex out = 1.0;
    for (int k = 0; k < l; ++k) out *= z;
    return out;
}

int spectrum_length_within(int m, std::uint64_t budget, int cap) {
    int L = 1;
    double total = m;
    while (L < cap) {
        const double next = total + std::pow(static_cast<double>(m), L + 1);
        if (next > static_cast<double>(budget)) break;
        total = next;
        ++L;
    }
    return L;
}

}  // namespace

const InverseMap& AnalyzedSystem::inverse_map() const {
    if (!phi) throw SeparationFailure("system has no valid SSC certificate");
    return *phi;
}

AnalyzedSystem analyze(const IfsSystem& system, double epsilon, const NetOptions& options) {
    auto sys = std::make_shared<const IfsSystem>(system);
    AttractorNet net = compute_net(*sys, epsilon, options);
    SeparationCertificate ssc = certify_ssc(*sys, net);
    std::optional<InverseMap> phi;
    std::optional<RhoRadii> rho;
    if (ssc.valid()) {
        phi.emplace(*sys, net);
        rho = rho_radius(*sys, net);
    }
    const double floor = s_floor(*sys, net);
    return AnalyzedSystem{std::move(sys), std::move(net), ssc, std::move(phi), rho, floor};
}

double s_floor(const IfsSystem& system, const AttractorNet& net) {
    double s = kInf;
    for (std::size_t j = 0; j < system.size(); ++j) {
        for (const Complex& p : net.points()) s = std::min(s, std::abs(deriv(system.map(j), p)));
        const Word single({static_cast<int>(j)}, static_cast<int>(system.size()));
        const Complex beta = fixed_point(system, single).point;
        for (std::size_t i = 0; i < system.size(); ++i) s = std::min(s, std::abs(deriv(system.map(i), beta)));
    }
    if (!(s >= 1e-300)) throw DegenerateDerivative("derivative infimum underflows");
    return s;
}

int min_depth(const IfsSystem& system, const AttractorNet& net, double s_F, std::uint64_t eval_cap) {
    if (!(s_F > 0.0 && s_F < 1.0)) throw DomainError("s_F must lie in (0, 1)");
    const int m = static_cast<int>(system.size());
    const double bound = s_F * (1.0 + 1e-12);
    for (int N = 1; N <= 64; ++N) {
        if (std::pow(static_cast<double>(m), N) * static_cast<double>(net.size()) > static_cast<double>(eval_cap))
            throw BudgetExceeded("min_depth search exceeds the evaluation cap at depth " + std::to_string(N));
        const auto words = words_of_length(m, N);
        const auto sups = parallel_map(words.size(), [&](std::size_t k) {
            const HoloMap g = compose_word(system, words[k]);
            if (const auto* a = g.as_affine()) return std::abs(a->alpha);
            double s = 0.0;
            for (const Complex& p : net.points()) s = std::max(s, std::abs(deriv_word(system, words[k], p)));
            return s;
        });
        if (*std::max_element(sups.begin(), sups.end()) <= bound) return N;
    }
    throw BudgetExceeded("min_depth exceeds 64");
}

Word address(const InverseMap& phi, Complex x, int k) {
    std::vector<int> letters;
    for (int step = 0; step < k; ++step) {
        const auto s = phi(x);
        letters.push_back(s.branch);
        x = s.point;
    }
    return Word(std::move(letters), static_cast<int>(phi.system().size()));
}

Word address(const IfsSystem& system, const AttractorNet& net, Complex x, int k) {
    return address(InverseMap(system, net), x, k);
}

SystemPair::SystemPair(const AnalyzedSystem& g, const AnalyzedSystem& f) : G(&g), F(&f) {
    if (!g.rho || !f.rho) throw SeparationFailure("both systems need valid SSC certificates");
    rho = std::min(g.rho->rho_G, f.rho->rho_G);
    radius = kGermRadiusFactor * rho;
    s_F = f.s_floor;
    N = min_depth(g.sys(), g.net, s_F);
}

SymmetryGerm build_symmetry(const SystemPair& pair, Complex a, const Word& w) {
    const IfsSystem& G = pair.G->sys();
    const IfsSystem& F = pair.F->sys();
    const InverseMap& phi = pair.F->inverse_map();

    const Complex aw = eval_word(G, w, a);
    const double target = std::abs(deriv_word(G, w, a)) * (1.0 - 1e-12);

    // Walk the F-address of g_w(a) with exact preimages; φ only picks the branch.
    std::vector<int> letters;
    Complex b = aw;
    double scale = 1.0;
    double margin = kInf;
    for (int k = 0;; ++k) {
        if (k == kMaxAddressLength) throw AddressFailure("address walk did not terminate");
        const auto who = phi.claimants(b);
        if (who.size() != 1)
            throw AddressFailure(who.empty() ? "address walk left the attractor" : "ambiguous address letter");
        const int i = who[0];
        Complex next;
        try {
            next = invert(F.map(static_cast<std::size_t>(i)), b);
        } catch (const NotInImage& e) {
            throw AddressFailure(e.what());
        }
        const double factor = std::abs(deriv(F.map(static_cast<std::size_t>(i)), next));
        if (scale * factor < target) break;
        scale *= factor;
        margin = std::min(margin, phi.claim_radius() - phi.piece_distance(i, b));
        letters.push_back(i);
        b = next;
    }
    if (letters.empty())
        throw CriterionEmpty("|f'_{V_1}| is already below |g'_w(a)| for w = " + w.to_string());

    SymmetryGerm germ;
    germ.base = a;
    germ.radius = pair.radius;
    germ.word_g = w;
    germ.word_f = Word(std::move(letters), static_cast<int>(F.size()));
    germ.map = compose(inverse(compose_word(F, germ.word_f)), compose_word(G, w));
    germ.derivative = deriv(germ.map, a);
    germ.image = eval(germ.map, a);
    germ.address_margin = margin;

    const double d = std::abs(germ.derivative);
    if (d < pair.s_F - 1e-9 || d > 1.0 + 1e-9)
        throw GermInvariantViolation("|H'(a)| = " + std::to_string(d) + " outside [s_F, 1]");

    germ.image_min_radius = kInf;
    germ.image_max_radius = 0.0;
    try {
        for (const Complex& z : Disk(a, pair.radius).boundary_samples(kSandwichSamples)) {
            const double rr = std::abs(eval(germ.map, z) - germ.image);
            germ.image_min_radius = std::min(germ.image_min_radius, rr);
            germ.image_max_radius = std::max(germ.image_max_radius, rr);
        }
        germ.sandwich_ok = germ.image_min_radius > pair.s_F * pair.rho / 25.0 && germ.image_max_radius < pair.rho;
    } catch (const Error&) {
        germ.sandwich_ok = false;
    }
    return germ;
}

SymmetryCheck verify_symmetry(const SymmetryGerm& germ, const SystemPair& pair, std::size_t n_samples, double tol) {
    const AttractorNet& netG = pair.G->net;
    const AttractorNet& netF = pair.F->net;
    SymmetryCheck out;

    const auto forward = points_in_disk(netG, germ.base, germ.radius, n_samples);
    std::vector<double> res;
    double lip = 0.0;
    for (const Complex& x : forward) {
        try {
            res.push_back(netF.cloud().distance(eval(germ.map, x)));
            lip = std::max(lip, std::abs(deriv(germ.map, x)));
        } catch (const Error&) {
            res.push_back(kInf);
        }
    }
    out.forward_samples = forward.size();
    out.forward_allowance = tol + lip * netG.epsilon() + netF.epsilon();
    for (double r : res) {
        out.forward_residual = std::max(out.forward_residual, r);
        if (!(r <= out.forward_allowance)) ++out.forward_failures;
    }

    const auto backward = points_in_disk(netF, germ.image, pair.s_F * pair.rho / 25.0, n_samples);
    res.clear();
    double min_deriv = kInf;
    for (const Complex& y : backward) {
        try {
            const Complex x = invert(germ.map, y);
            res.push_back(netG.cloud().distance(x));
            min_deriv = std::min(min_deriv, std::abs(deriv(germ.map, x)));
        } catch (const Error&) {
            res.push_back(kInf);
        }
    }
    out.backward_samples = backward.size();
    out.backward_allowance = tol + netG.epsilon() + (min_deriv > 0.0 ? netF.epsilon() / min_deriv : kInf);
    for (double r : res) {
        out.backward_residual = std::max(out.backward_residual, r);
        if (!(r <= out.backward_allowance)) ++out.backward_failures;
    }
    return out;
}

bool germs_equal(const HoloMap& a, const HoloMap& b, Complex center, double radius, double tol) {
    try {
        for (const Complex& z : disk_samples(center, radius, kGermSamples))
            if (!(std::abs(eval(a, z) - eval(b, z)) <= tol)) return false;
    } catch (const Error&) {
        return false;
    }
    return true;
}

ConjugacyRelation detect_coincidence(const SystemPair& pair, const Word& w, int k_max) {
    if (w.empty()) throw DomainError("detect_coincidence needs a non-empty word");
    const IfsSystem& G = pair.G->sys();
    const IfsSystem& F = pair.F->sys();
    const Complex beta = fixed_point(G, w).point;

    std::vector<std::optional<SymmetryGerm>> germs(static_cast<std::size_t>(k_max) + 1);
    std::vector<bool> tried(germs.size(), false);
    auto germ = [&](int k) -> const SymmetryGerm* {
        const auto idx = static_cast<std::size_t>(k);
        if (!tried[idx]) {
            tried[idx] = true;
            try {
                germs[idx] = build_symmetry(pair, beta, w.repeat(k));
            } catch (const CriterionEmpty&) {
            }
        }
        return germs[idx] ? &*germs[idx] : nullptr;
    };

    for (int j = 2; j <= k_max; ++j) {
        const SymmetryGerm* hj = germ(j);
        if (!hj) continue;
        for (int i = 1; i < j; ++i) {
            const SymmetryGerm* hi = germ(i);
            if (!hi || !germs_equal(hi->map, hj->map, beta, 0.9 * pair.radius)) continue;

            const Word& v = hi->word_f;
            const Word& full = hj->word_f;
            if (full == v) throw PrefixViolation("coinciding germs share the F-word " + v.to_string());
            if (full.is_prefix_of(v))
                throw PrefixViolation("F-word " + full.to_string() + " of the later germ is a prefix of " + v.to_string());
            if (!v.is_prefix_of(full))
                throw PrefixViolation("F-word " + full.to_string() + " does not extend " + v.to_string());

            ConjugacyRelation rel;
            rel.exponent_l = j - i;
            rel.first_power = i;
            rel.outer = v;
            rel.inner = full.drop_front(v.size());
            rel.source = w;
            rel.anchor = beta;
            const Word wl = w.repeat(rel.exponent_l);
            const HoloMap fv = compose_word(F, v);
            for (const Complex& z : disk_samples(beta, 0.5 * pair.radius * pair.s_F, kGermSamples)) {
                const Complex lhs = eval_word(G, wl, z);
                const Complex rhs = eval(fv, eval_word(F, rel.inner, invert(fv, z)));
                rel.residual = std::max(rel.residual, std::abs(lhs - rhs));
            }
            return rel;
        }
    }
    throw NoCoincidence("no coinciding germs among powers 1.." + std::to_string(k_max) + " of " + w.to_string());
}

SpectrumCompat spectrum_compat(const MultiplierSpectrum& specG, const MultiplierSpectrum& specF, int l_max, double tol) {
    SpectrumCompat out;
    std::vector<Complex> seen;
    for (const PeriodicPoint& e : specG.entries) {
        if (std::any_of(seen.begin(), seen.end(), [&](Complex m) { return std::abs(m - e.multiplier) <= tol * std::abs(m); }))
            continue;
        seen.push_back(e.multiplier);
        bool matched = false;
        for (int l = 1; l <= l_max && !matched; ++l) {
            const Complex target = power(e.multiplier, l);
            // Relative tolerance: multipliers of long words are tiny.
            if (specF.contains(target, tol * std::abs(target))) {
                out.matches.push_back({e.multiplier, l, e.word});
                matched = true;
            }
        }
        if (!matched) out.unmatched.push_back(e);
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Shared: return "Shared";
        case Verdict::NotShared: return "NotShared";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

PrepCount prep_check(const AnalyzedSystem& source, const AnalyzedSystem& target, const SharedOptions& options) {
    PrepCount count;
    const InverseMap& phi = target.inverse_map();
    const auto words = words_up_to(static_cast<int>(source.sys().size()), options.prep_word);
    const auto results = parallel_map(words.size(), [&](std::size_t k) {
        const Complex beta = fixed_point(source.sys(), words[k]).point;
        const OrbitReport rep = orbit(phi, beta, {options.orbit_max_iter, options.orbit_tol});
        return rep.periodic() ? *rep.preperiod + *rep.period : -1;
    });
    for (int r : results) {
        if (r >= 0 && r <= options.prep_max_orbit) {
            ++count.passed;
            count.max_orbit = std::max(count.max_orbit, r);
        } else {
            ++count.failed;
        }
    }
    return count;
}

struct SweepResult {
    std::vector<FunctionalIdentity> identities;
    std::size_t unmatched = 0;
};

SweepResult functional_sweep(const SystemPair& pair, const BoxRestriction& box, int M, const SharedOptions& options) {
    const IfsSystem& G = pair.G->sys();
    const IfsSystem& F = pair.F->sys();
    const AttractorNet& netG = pair.G->net;
    const int m = static_cast<int>(G.size());

    auto build = [&](Complex a, const Word& t) -> std::optional<SymmetryGerm> {
        try {
            return build_symmetry(pair, a, t);
        } catch (const CriterionEmpty&) {
        } catch (const GermInvariantViolation&) {
        }
        return std::nullopt;
    };

    const auto per_disk = parallel_map(box.disks.size(), [&](std::size_t d) {
        SweepResult out;
        const Disk& disk = box.disks[d];
        const Complex a = netG.points()[netG.cloud().nearest_index(disk.center)];
        std::vector<SymmetryGerm> pool;
        for (int len = pair.N; len < M; ++len)
            for (const Word& t : words_of_length(m, len))
                if (auto g = build(a, t)) pool.push_back(std::move(*g));
        const auto samples = points_in_disk(netG, disk.center, disk.radius, static_cast<std::size_t>(options.func_samples));

        for (const Word& t : words_of_length(m, M)) {
            const auto h = build(a, t);
            const SymmetryGerm* ref = nullptr;
            if (h)
                for (const auto& p : pool)
                    if (germs_equal(h->map, p.map, a, 0.9 * pair.radius)) {
                        ref = &p;
                        break;
                    }
            if (!ref) {
                ++out.unmatched;
                continue;
            }
            FunctionalIdentity id;
            id.disk = d;
            id.t = t;
            id.t_ref = ref->word_g;
            id.u = h->word_f;
            id.u_ref = ref->word_f;
            const HoloMap fu = compose_word(F, id.u);
            const HoloMap fu_ref = compose_word(F, id.u_ref);
            for (const Complex& x : samples) {
                double r;
                try {
                    const Complex y = eval_word(G, id.t_ref, x);
                    r = std::abs(eval(fu, invert(fu_ref, y)) - eval_word(G, t, x));
                } catch (const Error&) {
                    r = kInf;
                }
                id.residual = std::max(id.residual, r);
            }
            id.samples = samples.size();
            out.identities.push_back(std::move(id));
        }
        return out;
    });

    SweepResult all;
    for (auto& r : per_disk) {
        all.unmatched += r.unmatched;
        for (auto& id : r.identities) all.identities.push_back(std::move(id));
    }
    return all;
}

}  // namespace

SharedAttractorReport shared_attractor(const IfsSystem& Gsys, const IfsSystem& Fsys, const SharedOptions& options) {
    SharedAttractorReport rep;
    const AnalyzedSystem G = analyze(Gsys, options.epsilon, options.net);
    const AnalyzedSystem F = analyze(Fsys, options.epsilon, options.net);
    rep.epsilon_g = G.net.epsilon();
    rep.epsilon_f = F.net.epsilon();
    rep.hausdorff = hausdorff(G.net, F.net);
    rep.ssc_g = G.separated();
    rep.ssc_f = F.separated();

    if (rep.hausdorff > rep.epsilon_g + rep.epsilon_f) {
        rep.notes.push_back("net Hausdorff distance exceeds the sum of covering radii");
        rep.verdict = Verdict::NotShared;
        return rep;
    }
    if (!rep.ssc_g || !rep.ssc_f) {
        rep.notes.push_back("SSC certificate missing; evidence restricted to separated systems");
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }

    try {
        rep.prep_forward = prep_check(G, F, options);
        rep.prep_backward = prep_check(F, G, options);

        const int mg = static_cast<int>(Gsys.size()), mf = static_cast<int>(Fsys.size());
        const int cap = options.l_max * options.spectrum_len;
        rep.spectrum_len_g = spectrum_length_within(mg, options.spectrum_word_budget, cap);
        rep.spectrum_len_f = spectrum_length_within(mf, options.spectrum_word_budget, cap);
        const auto small_g = spectrum(Gsys, options.spectrum_len);
        const auto small_f = spectrum(Fsys, options.spectrum_len);
        const auto big_g = spectrum(Gsys, rep.spectrum_len_g);
        const auto big_f = spectrum(Fsys, rep.spectrum_len_f);
        const auto gf = spectrum_compat(small_g, big_f, options.l_max);
        const auto fg = spectrum_compat(small_f, big_g, options.l_max);
        rep.spectrum_matches_gf = gf.matches;
        rep.spectrum_matches_fg = fg.matches;
        rep.spectrum_unmatched_gf = gf.unmatched.size();
        rep.spectrum_unmatched_fg = fg.unmatched.size();

        const SystemPair pair(G, F);
        rep.min_depth = pair.N;
        rep.rho = pair.rho;
        rep.germ_radius = pair.radius;
        rep.s_F = pair.s_F;
        const BoxRestriction box = box_restriction(Gsys, G.net, pair.radius, options.net);
        rep.box_disks = box.disks.size();

        int M = options.M.value_or(pair.N + 1);
        SweepResult sweep = functional_sweep(pair, box, M, options);
        while (sweep.unmatched > 0 && !options.M && M < pair.N + options.M_extension) {
            ++M;
            sweep = functional_sweep(pair, box, M, options);
        }
        if (M > pair.N + 1) rep.notes.push_back("functional-equation word length extended to M = " + std::to_string(M));
        rep.M = M;
        rep.functional_equations = std::move(sweep.identities);
        rep.functional_unmatched = sweep.unmatched;
        for (const auto& id : rep.functional_equations)
            rep.functional_max_residual = std::max(rep.functional_max_residual, id.residual);
    } catch (const BudgetExceeded&) {
        throw;
    } catch (const Error& e) {
        rep.notes.push_back(std::string("evidence gathering failed: ") + e.what());
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }

    const bool prep_ok = rep.prep_forward.failed == 0 && rep.prep_backward.failed == 0;
    const bool spectrum_ok = rep.spectrum_unmatched_gf == 0 && rep.spectrum_unmatched_fg == 0;
    const bool func_ok = !rep.functional_equations.empty() && rep.functional_unmatched == 0 &&
                         rep.functional_max_residual <= options.func_tol;
    if (!prep_ok) rep.notes.push_back("some periodic points are not preperiodic under the other inverse map");
    if (!spectrum_ok) rep.notes.push_back("some multipliers have no power in the other spectrum");
    if (!func_ok) rep.notes.push_back("functional-equation sweep incomplete or above tolerance");
    rep.verdict = prep_ok && spectrum_ok && func_ok ? Verdict::Shared : Verdict::Inconclusive;
    return rep;
}

}  // namespace holoifs
