#include "holoifs/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "holoifs/errors.hpp"
#include "holoifs/parallel.hpp"

namespace holoifs {

namespace {

constexpr int kMaxFixedPointIterations = 100000;

double total_words(int m, int max_len) {
    double total = 0.0;
    for (int k = 1; k <= max_len; ++k) total += std::pow(static_cast<double>(m), k);
    return total;
}

}  // namespace

std::vector<Word> words_up_to(int alphabet_size, int max_len) {
    std::vector<Word> out;
    for (int k = 1; k <= max_len; ++k) {
        auto level = words_of_length(alphabet_size, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

PeriodicPoint fixed_point(const IfsSystem& system, const Word& w) {
    if (w.empty()) throw DomainError("fixed_point needs a non-empty word");
    const HoloMap g = compose_word(system, w);
    if (const auto* a = g.as_affine()) return {w, a->b / (1.0 - a->alpha), a->alpha};

    Complex z = system.domain().center;
    bool converged = false;
    for (int k = 0; k < kMaxFixedPointIterations; ++k) {
        const Complex next = eval_word(system, w, z);
        const double step = std::abs(next - z);
        z = next;
        if (step < 1e-14 * std::max(1.0, std::abs(z))) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NoConvergence("fixed point iteration for word " + w.to_string() + " did not settle");
    for (int k = 0; k < 3; ++k) {
        const Complex r = eval_word(system, w, z) - z;
        const Complex polished = z - r / (deriv_word(system, w, z) - 1.0);
        if (std::abs(eval_word(system, w, polished) - polished) >= std::abs(r)) break;
        z = polished;
    }
    return {w, z, deriv_word(system, w, z)};
}

std::vector<Complex> MultiplierSpectrum::distinct_multipliers(double tol) const {
    std::vector<Complex> out;
    for (const auto& e : entries)
        if (std::none_of(out.begin(), out.end(), [&](Complex m) { return std::abs(m - e.multiplier) <= tol; }))
            out.push_back(e.multiplier);
    return out;
}

bool MultiplierSpectrum::contains(Complex multiplier, double tol) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const PeriodicPoint& e) { return std::abs(e.multiplier - multiplier) <= tol; });
}

MultiplierSpectrum spectrum(const IfsSystem& system, int max_len, std::uint64_t word_cap) {
    if (max_len < 1) throw DomainError("spectrum needs max_len >= 1");
    const int m = static_cast<int>(system.size());
    if (total_words(m, max_len) > static_cast<double>(word_cap))
        throw BudgetExceeded("spectrum up to length " + std::to_string(max_len) + " exceeds the word cap");

    std::vector<Word> words;
    for (const Word& w : words_up_to(m, max_len))
        if (w.min_rotation() == w) words.push_back(w);
    auto points = parallel_map(words.size(), [&](std::size_t k) { return fixed_point(system, words[k]); });

    // Sorting by real part keeps the (point, multiplier) dedup near linear.
    constexpr double tol = 1e-9;
    std::vector<std::size_t> order(points.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points[a].point.real() < points[b].point.real(); });
    std::vector<bool> drop(points.size(), false);
    for (std::size_t x = 0; x < order.size(); ++x)
        for (std::size_t y = x + 1; y < order.size(); ++y) {
            const auto& p = points[order[x]];
            const auto& q = points[order[y]];
            if (q.point.real() - p.point.real() > tol) break;
            if (std::abs(p.point - q.point) <= tol && std::abs(p.multiplier - q.multiplier) <= tol)
                drop[std::max(order[x], order[y])] = true;
        }

    MultiplierSpectrum out;
    out.max_word_length = max_len;
    for (std::size_t k = 0; k < points.size(); ++k)
        if (!drop[k]) out.entries.push_back(std::move(points[k]));
    return out;
}

InverseMap::InverseMap(const IfsSystem& system, const AttractorNet& net) : system_(&system) {
    const auto cert = certify_ssc(system, net);
    if (!cert.valid()) throw SeparationFailure("inverse map needs a valid SSC certificate");
    claim_ = 0.5 * cert.margin;
    for (std::size_t i = 0; i < system.size(); ++i) {
        std::vector<Complex> piece;
        piece.reserve(net.size());
        for (const Complex& p : net.points()) piece.push_back(eval(system.map(i), p));
        pieces_.emplace_back(std::move(piece));
    }
}

std::vector<int> InverseMap::claimants(Complex x) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        if (pieces_[i].distance(x) <= claim_) out.push_back(static_cast<int>(i));
    return out;
}

InverseMap::Step InverseMap::operator()(Complex x) const {
    const auto who = claimants(x);
    if (who.empty()) throw OutsideAttractor("no branch claims the point");
    if (who.size() > 1) throw AmbiguousBranch("branches " + std::to_string(who[0]) + " and " + std::to_string(who[1]) +
                                              " both claim the point");
    return {invert(system_->map(static_cast<std::size_t>(who[0])), x), who[0]};
}

InverseMap::Step inverse_step(const IfsSystem& system, const AttractorNet& net, Complex x) {
    return InverseMap(system, net)(x);
}

OrbitReport orbit(const InverseMap& phi, Complex x, const OrbitOptions& options) {
    OrbitReport report;
    report.points.push_back(x);
    for (int k = 0; k < options.max_iter; ++k) {
        InverseMap::Step step{};
        try {
            step = phi(report.points.back());
        } catch (const OutsideAttractor&) {
            report.escaped = true;
            return report;
        } catch (const NotInImage&) {
            report.escaped = true;
            return report;
        }
        report.branches.push_back(step.branch);
        report.points.push_back(step.point);
        const std::size_t q = report.points.size() - 1;
        for (std::size_t p = 0; p < q; ++p)
            if (std::abs(report.points[p] - report.points[q]) <= options.tol) {
                report.preperiod = static_cast<int>(p);
                report.period = static_cast<int>(q - p);
                return report;
            }
    }
    return report;
}

OrbitReport orbit(const IfsSystem& system, const AttractorNet& net, Complex x, const OrbitOptions& options) {
    return orbit(InverseMap(system, net), x, options);
}

std::vector<Complex> prep_points(const IfsSystem& system, int max_word, int max_prefix, std::uint64_t word_cap) {
    if (max_word < 1 || max_prefix < 0) throw DomainError("prep_points needs max_word >= 1 and max_prefix >= 0");
    const int m = static_cast<int>(system.size());
    if (total_words(m, max_word) * (1.0 + total_words(m, max_prefix)) > static_cast<double>(word_cap))
        throw BudgetExceeded("prep point enumeration exceeds the word cap");

    std::vector<Complex> raw;
    const auto prefixes = words_up_to(m, max_prefix);
    for (const Word& v : words_up_to(m, max_word)) {
        const Complex beta = fixed_point(system, v).point;
        raw.push_back(beta);
        for (const Word& w : prefixes) raw.push_back(eval_word(system, w, beta));
    }
    return dedup_within(raw, 1e-10);
}

}  // namespace holoifs
