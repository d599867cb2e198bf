#include "holoifs/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "holoifs/errors.hpp"
#include "holoifs/geometry.hpp"
#include "holoifs/parallel.hpp"

namespace holoifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSampledSupInflation = 1.01;
constexpr double kTangencySlack = 1e-12;

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    if (pts.size() < 3) return pts;
    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool word_is_affine(const IfsSystem& system, const Word& w) {
    for (int i : w.letters())
        if (!system.map(static_cast<std::size_t>(i)).is_affine()) return false;
    return true;
}

// Sup of |g_u'| over Ω̄ for |u| = length: by the maximum principle it sits on
// ∂Ω; the sampled value is inflated slightly unless the derivative is constant.
double sampled_sup(const IfsSystem& system, int length) {
    const auto boundary = system.domain().boundary_samples(IfsSystem::kBoundarySamples);
    double sup = 0.0;
    for (const Word& u : words_of_length(static_cast<int>(system.size()), length)) {
        double s = 0.0;
        for (const Complex& z : boundary) s = std::max(s, std::abs(deriv_word(system, u, z)));
        if (!word_is_affine(system, u)) s *= kSampledSupInflation;
        sup = std::max(sup, s);
    }
    return sup;
}

double word_count(std::size_t m, int n) { return std::pow(static_cast<double>(m), n); }

std::vector<std::vector<Complex>> first_level_images(const IfsSystem& system, const AttractorNet& net) {
    std::vector<std::vector<Complex>> out(system.size());
    for (std::size_t i = 0; i < system.size(); ++i) {
        out[i].reserve(net.size());
        for (const Complex& p : net.points()) out[i].push_back(eval(system.map(i), p));
    }
    return out;
}

bool in_image(const HoloMap& g, const Disk& d, Complex y) {
    try {
        return d.contains(invert(g, y));
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

AttractorNet::AttractorNet(std::vector<Complex> points, double epsilon, int depth)
    : cloud_(std::make_shared<const PointCloud>(std::move(points))), epsilon_(epsilon), depth_(depth) {
    if (cloud_->empty()) throw DomainError("attractor net needs at least one point");
    if (!(epsilon > 0.0)) throw DomainError("net epsilon must be positive");
}

double AttractorNet::diameter() const {
    const auto hull = convex_hull(points());
    double d = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t j = i + 1; j < hull.size(); ++j) d = std::max(d, std::abs(hull[i] - hull[j]));
    return d;
}

double ContractionEstimate::bound(int length) const {
    return std::pow(block_factor, length / block) * std::pow(letter_factor, length % block);
}

ContractionEstimate contraction_estimate(const IfsSystem& system) {
    ContractionEstimate est;
    est.letter_factor = sampled_sup(system, 1);
    if (est.letter_factor < 1.0) {
        est.block_factor = est.letter_factor;
        return est;
    }
    for (int d = 2; d <= 4; ++d) {
        const double c = sampled_sup(system, d);
        if (c < 1.0) {
            est.block = d;
            est.block_factor = c;
            return est;
        }
    }
    throw InvalidSystem("no block of up to 4 letters contracts uniformly on the domain");
}

AttractorNet compute_net(const IfsSystem& system, double epsilon, const NetOptions& options) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    const ContractionEstimate est = contraction_estimate(system);
    const std::size_t m = system.size();
    const double diam = system.domain().diameter();

    int n = 1;
    while (est.bound(n) * diam > 0.5 * epsilon) ++n;
    if (word_count(m, n) > static_cast<double>(options.word_cap))
        throw BudgetExceeded("net depth " + std::to_string(n) + " needs " + std::to_string(word_count(m, n)) +
                             " words, cap is " + std::to_string(options.word_cap));

    const double cell = 0.25 * epsilon;
    int split = 0;
    while (split < n && word_count(m, split) < 8.0 * static_cast<double>(worker_count())) ++split;
    const auto tasks = static_cast<std::size_t>(word_count(m, split));

    // Task t fixes the `split` innermost letters (most significant digit
    // first applied); the rest is a depth-first sweep.
    const auto chunks = parallel_map(tasks, [&](std::size_t t) {
        std::vector<int> digits(static_cast<std::size_t>(split));
        for (std::size_t k = digits.size(), v = t; k-- > 0; v /= m) digits[k] = static_cast<int>(v % m);
        Complex z = system.domain().center;
        for (int d : digits) z = eval(system.map(static_cast<std::size_t>(d)), z);

        GridDeduper seen(cell);
        std::vector<Complex> out;
        std::function<void(Complex, int)> dfs = [&](Complex x, int remaining) {
            if (remaining == 0) {
                if (seen.insert(x)) out.push_back(x);
                return;
            }
            for (std::size_t i = 0; i < m; ++i) dfs(eval(system.map(i), x), remaining - 1);
        };
        dfs(z, n - split);
        return out;
    });

    GridDeduper seen(cell);
    std::vector<Complex> points;
    for (const auto& chunk : chunks)
        for (const Complex& p : chunk)
            if (seen.insert(p)) points.push_back(p);
    return AttractorNet(std::move(points), est.bound(n) * diam + cell * std::sqrt(2.0), n);
}

std::vector<Complex> hutchinson_image(const IfsSystem& system, const AttractorNet& net) {
    std::vector<Complex> out;
    out.reserve(system.size() * net.size());
    for (const auto& level : first_level_images(system, net)) out.insert(out.end(), level.begin(), level.end());
    return out;
}

double hausdorff(const AttractorNet& a, const AttractorNet& b) { return hausdorff(a.cloud(), b.cloud()); }

bool SeparationCertificate::valid() const {
    if (kind == Kind::SSC) return margin > 0.0;
    return meets_attractor && images_inside && images_disjoint;
}

SeparationCertificate certify_ssc(const IfsSystem& system, const AttractorNet& net) {
    SeparationCertificate cert;
    cert.kind = SeparationCertificate::Kind::SSC;
    for (std::size_t i = 0; i < system.size(); ++i)
        for (const Complex& p : net.points()) cert.lipschitz = std::max(cert.lipschitz, std::abs(deriv(system.map(i), p)));

    const auto images = first_level_images(system, net);
    double pd = kInf;
    for (std::size_t j = 1; j < images.size(); ++j) {
        const PointCloud target(images[j]);
        for (std::size_t i = 0; i < j; ++i)
            for (const Complex& x : images[i]) pd = std::min(pd, target.distance(x));
    }
    cert.pairwise_distance = pd;
    cert.margin = pd - 2.0 * cert.lipschitz * net.epsilon();
    return cert;
}

SeparationCertificate certify_strong_osc(const IfsSystem& system, const std::vector<Disk>& candidate,
                                         const AttractorNet& net) {
    SeparationCertificate cert;
    cert.kind = SeparationCertificate::Kind::StrongOSC;
    cert.osc_set = candidate;
    for (std::size_t i = 0; i < system.size(); ++i)
        for (const Complex& p : net.points()) cert.lipschitz = std::max(cert.lipschitz, std::abs(deriv(system.map(i), p)));
    if (candidate.empty()) return cert;

    cert.meets_attractor = std::any_of(net.points().begin(), net.points().end(), [&](Complex p) {
        return std::any_of(candidate.begin(), candidate.end(), [&](const Disk& d) { return d.contains(p); });
    });

    if (system.all_affine()) {
        std::vector<std::vector<Disk>> images(system.size());
        for (std::size_t i = 0; i < system.size(); ++i) {
            const auto& a = *system.map(i).as_affine();
            for (const Disk& d : candidate) images[i].emplace_back(a.alpha * d.center + a.b, std::abs(a.alpha) * d.radius);
        }
        cert.images_inside = true;
        for (const auto& level : images)
            for (const Disk& e : level) {
                const bool inside = std::any_of(candidate.begin(), candidate.end(), [&](const Disk& d) {
                    return std::abs(e.center - d.center) + e.radius <= d.radius + kTangencySlack;
                });
                cert.images_inside = cert.images_inside && inside;
            }
        double gap = kInf;
        for (std::size_t i = 0; i < images.size(); ++i)
            for (std::size_t j = i + 1; j < images.size(); ++j)
                for (const Disk& e : images[i])
                    for (const Disk& f : images[j]) gap = std::min(gap, std::abs(e.center - f.center) - e.radius - f.radius);
        cert.images_disjoint = gap >= -kTangencySlack;
        cert.pairwise_distance = std::max(gap, 0.0);
        cert.margin = cert.pairwise_distance;
        return cert;
    }

    // Sampled path: boundary circles (plus centers) of every candidate disk.
    std::vector<Complex> samples;
    std::vector<std::size_t> owner;
    for (std::size_t k = 0; k < candidate.size(); ++k) {
        for (const Complex& z : candidate[k].boundary_samples(IfsSystem::kBoundarySamples)) {
            samples.push_back(z);
            owner.push_back(k);
        }
        samples.push_back(candidate[k].center);
        owner.push_back(k);
    }
    std::vector<std::vector<Complex>> images(system.size());
    try {
        for (std::size_t i = 0; i < system.size(); ++i)
            for (const Complex& z : samples) images[i].push_back(eval(system.map(i), z));
    } catch (const Error&) {
        return cert;  // some sample left the evaluation domain
    }
    cert.images_inside = true;
    for (const auto& level : images)
        for (const Complex& y : level) {
            double best = -kInf;
            for (const Disk& d : candidate) best = std::max(best, d.radius - std::abs(y - d.center));
            if (!(best > kTangencySlack)) cert.images_inside = false;
        }
    cert.images_disjoint = true;
    for (std::size_t i = 0; i < system.size() && cert.images_disjoint; ++i)
        for (std::size_t j = 0; j < system.size() && cert.images_disjoint; ++j) {
            if (i == j) continue;
            for (const Complex& y : images[i])
                for (const Disk& d : candidate)
                    if (in_image(system.map(j), d, y)) cert.images_disjoint = false;
        }
    double gap = kInf;
    for (std::size_t j = 1; j < images.size(); ++j) {
        const PointCloud target(images[j]);
        for (std::size_t i = 0; i < j; ++i)
            for (const Complex& y : images[i]) gap = std::min(gap, target.distance(y));
    }
    cert.pairwise_distance = cert.images_disjoint ? gap : 0.0;
    cert.margin = cert.pairwise_distance;
    return cert;
}

RhoRadii rho_radius(const IfsSystem& system, const AttractorNet& net) {
    const auto cert = certify_ssc(system, net);
    if (!cert.valid()) throw SeparationFailure("SSC certificate is not valid (margin " + std::to_string(cert.margin) + ")");
    const Disk& omega = system.domain();
    const auto images = first_level_images(system, net);

    // Pseudo-hyperbolic distance p > |w1 − w2|/(1 + |w1|) in unit-disk
    // coordinates, which bounds the Euclidean search window.
    double best_p = 1.0;
    for (std::size_t j = 1; j < images.size(); ++j) {
        auto sorted = images[j];
        std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
        const PointCloud cloud(images[j]);
        for (std::size_t i = 0; i < j; ++i)
            for (const Complex& x : images[i]) {
                const Complex w1 = (x - omega.center) / omega.radius;
                auto pseudo = [&](Complex y) {
                    const Complex w2 = (y - omega.center) / omega.radius;
                    return std::abs(w1 - w2) / std::abs(1.0 - std::conj(w1) * w2);
                };
                best_p = std::min(best_p, pseudo(cloud.points()[cloud.nearest_index(x)]));
                const double scale = omega.radius * (1.0 + std::abs(w1));
                const auto mid = std::lower_bound(sorted.begin(), sorted.end(), x.real(),
                                                  [](Complex a, double v) { return a.real() < v; });
                for (auto it = mid; it != sorted.end() && it->real() - x.real() < best_p * scale; ++it)
                    best_p = std::min(best_p, pseudo(*it));
                for (auto it = mid; it != sorted.begin();) {
                    --it;
                    if (x.real() - it->real() >= best_p * scale) break;
                    best_p = std::min(best_p, pseudo(*it));
                }
            }
    }
    RhoRadii out{};
    out.rho_h = std::atanh(best_p);
    out.rho_G = kInf;
    for (const Complex& a : net.points()) out.rho_G = std::min(out.rho_G, hyp_ball_inradius(omega, a, out.rho_h));
    out.rho_L = cert.pairwise_distance;
    return out;
}

BoxRestriction box_restriction(const IfsSystem& system, const AttractorNet& net, double eps_target,
                               const NetOptions& options) {
    if (!(eps_target > 0.0)) throw DomainError("eps_target must be positive");
    const int m = static_cast<int>(system.size());
    for (int depth = 0;; ++depth) {
        if (word_count(system.size(), depth) * static_cast<double>(net.size()) > static_cast<double>(options.word_cap))
            throw BudgetExceeded("box restriction at depth " + std::to_string(depth) + " exceeds the evaluation cap");
        const auto words = words_of_length(m, depth);
        const auto disks = parallel_map(words.size(), [&](std::size_t k) {
            double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf, lip = 0.0;
            std::vector<Complex> pts;
            pts.reserve(net.size());
            for (const Complex& p : net.points()) {
                const Complex y = eval_word(system, words[k], p);
                pts.push_back(y);
                xmin = std::min(xmin, y.real());
                xmax = std::max(xmax, y.real());
                ymin = std::min(ymin, y.imag());
                ymax = std::max(ymax, y.imag());
                lip = std::max(lip, std::abs(deriv_word(system, words[k], p)));
            }
            const Complex c(0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
            double r = 0.0;
            for (const Complex& y : pts) r = std::max(r, std::abs(y - c));
            return Disk(c, r + lip * net.epsilon());
        });

        double rmax = 0.0;
        for (const Disk& d : disks) rmax = std::max(rmax, d.radius);
        if (2.0 * rmax >= eps_target) continue;
        double gap = kInf;
        for (std::size_t a = 0; a < disks.size(); ++a)
            for (std::size_t b = a + 1; b < disks.size(); ++b)
                gap = std::min(gap, std::abs(disks[a].center - disks[b].center) - disks[a].radius - disks[b].radius);
        if (!(gap > 0.0)) {
            if (depth > 64) throw SeparationFailure("cylinder disks overlap at every depth tried");
            continue;
        }
        const double pad = std::min(0.25 * (eps_target - 2.0 * rmax), 0.25 * gap);
        BoxRestriction out;
        out.depth = depth;
        out.words = words;
        for (const Disk& d : disks) out.disks.emplace_back(d.center, d.radius + pad);
        return out;
    }
}

long long cardinality_bound(double r, double diam_A) {
    if (!(r > 0.0) || !(diam_A > 0.0)) throw DomainError("cardinality_bound needs r > 0 and diam_A > 0");
    const double q = 1.0 + 2.0 * diam_A / r;
    return static_cast<long long>(std::floor(q * q * (1.0 + 1e-9)));
}

}  // namespace holoifs
