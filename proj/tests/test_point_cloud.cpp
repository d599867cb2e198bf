#include <doctest.h>

#include <random>

#include "holoifs/point_cloud.hpp"
#include "support.hpp"

using namespace holoifs;

namespace {

// O(n·m) reference for the grid-accelerated version.
double brute_hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    auto directed = [](const std::vector<Complex>& p, const std::vector<Complex>& q) {
        double worst = 0.0;
        for (Complex x : p) {
            double best = 1e300;
            for (Complex y : q) best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace

TEST_CASE("hausdorff of trivial sets") {
    const std::vector<Complex> a{0.0}, b{1.0};
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(a, b) == doctest::Approx(1.0));
}

TEST_CASE("property: grid hausdorff equals the brute-force value") {
    std::mt19937_64 rng(0xc10d);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_int_distribution<int> N(1, 300);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Complex> a(static_cast<std::size_t>(N(rng))), b(static_cast<std::size_t>(N(rng)));
        const double spread = trial % 2 ? 1.0 : 1e-3;
        for (auto& z : a) z = Complex(U(rng), U(rng) * spread);
        for (auto& z : b) z = Complex(U(rng), U(rng) * spread) + 0.3;
        CHECK(hausdorff(a, b) == brute_hausdorff(a, b));
    }
}

TEST_CASE("property: nearest_index matches a linear scan") {
    std::mt19937_64 rng(0xc10e);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::vector<Complex> pts(500);
    for (auto& z : pts) z = Complex(U(rng), 0.01 * U(rng));
    const PointCloud cloud(pts);
    for (int k = 0; k < 200; ++k) {
        const Complex q(U(rng), U(rng));
        double best = 1e300;
        for (Complex p : pts) best = std::min(best, std::abs(p - q));
        CHECK(cloud.distance(q) == best);
        CHECK(std::abs(pts[cloud.nearest_index(q)] - q) == best);
    }
}

TEST_CASE("grid_dedup keeps first representatives within one cell diagonal") {
    std::mt19937_64 rng(0xc10f);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<Complex> pts(2000);
    for (auto& z : pts) z = Complex(U(rng), U(rng));
    const double cell = 0.05;
    const auto kept = grid_dedup(pts, cell);
    CHECK(kept.size() <= 21 * 21);
    CHECK(kept.front() == pts.front());
    CHECK(hausdorff(kept, pts) <= cell * std::sqrt(2.0));
    GridDeduper d(cell);
    std::size_t accepted = 0;
    for (Complex z : pts) accepted += d.insert(z);
    CHECK(accepted == kept.size());
}

TEST_CASE("dedup_within merges near duplicates only") {
    const std::vector<Complex> pts{0.0, 1e-12, 0.5, 0.5 + 1e-11, 1.0};
    const auto out = dedup_within(pts, 1e-10);
    REQUIRE(out.size() == 3);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.5);
    CHECK(out[2] == 1.0);
}
