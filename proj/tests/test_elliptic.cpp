#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "berscan/elliptic.hpp"
#include "berscan/oracles.hpp"

using namespace berscan;

namespace {

const WeierstrassLattice& square_lattice() {
    static const WeierstrassLattice lat{LatticeSpec{}};
    return lat;
}

}  // namespace

TEST_CASE("lemniscate oracle anchors g2 of the square lattice") {
    const double g2 = oracles::lemniscate_g2();
    // 4 * (pi / agm(1, sqrt 2))^4, independently known to ~1.8907271e2.
    CHECK(g2 == doctest::Approx(1.8907271843e2).epsilon(1e-8));
    const auto& lat = square_lattice();
    CHECK(std::abs(lat.g2().real() - g2) / g2 < 1e-10);
    CHECK(std::abs(lat.g2().imag()) < 1e-10);
    CHECK(std::abs(lat.g3()) < 1e-12);
}

TEST_CASE("truncated shell sums approach the resummed invariants") {
    const auto& lat = square_lattice();
    const Invariants inv = eisenstein_invariants(LatticeSpec{{0, 1}, 200});
    CHECK(std::abs(inv.g2 - lat.g2()) <= inv.g2_tail_bound);
    CHECK(std::abs(inv.g3 - lat.g3()) <= inv.g3_tail_bound + 1e-12);
    // Deterministic for a fixed cutoff.
    const Invariants again = eisenstein_invariants(LatticeSpec{{0, 1}, 200});
    CHECK(inv.g2 == again.g2);
    // More shells tighten the bound.
    const Invariants fine = eisenstein_invariants(LatticeSpec{{0, 1}, 800});
    CHECK(fine.g2_tail_bound < inv.g2_tail_bound / 8.0);
    CHECK(std::abs(fine.g2 - lat.g2()) <= fine.g2_tail_bound);
    CHECK_THROWS_AS(eisenstein_invariants(LatticeSpec{{0, 1}, 19}),
                    CutoffTooSmallError);
}

TEST_CASE("g2 scales like lambda^-4") {
    const Invariants base = eisenstein_shell_sum({0, 1}, 1.0, 80);
    const Invariants half = eisenstein_shell_sum({0, 1}, 0.5, 80);
    CHECK(std::abs(half.g2 - 16.0 * base.g2) <
          16.0 * base.g2_tail_bound + base.g2_tail_bound);
}

TEST_CASE("wp special values on the square lattice") {
    const auto& lat = square_lattice();
    // e1 at the half period, +sqrt(g2)/2 since g3 = 0.
    const double e1 = std::sqrt(lat.g2().real()) / 2.0;
    CHECK(std::abs(lat.wp({0.5, 0.0}) - e1) < 1e-9);
    CHECK(e1 == doctest::Approx(6.87519).epsilon(1e-5));
    // Fixed point of z -> iz mod lattice forces wp = 0.
    CHECK(std::abs(lat.wp({0.5, 0.5})) < 1e-12);
    // wp' vanishes at half periods.
    CHECK(std::abs(lat.wp_prime({0.5, 0.0})) < 1e-9);
}

TEST_CASE("wp against a direct lattice sum") {
    const auto& lat = square_lattice();
    const Complex z{0.31, 0.2};
    Complex acc = 1.0 / (z * z);
    const int K = 200;
    for (int m = -K; m <= K; ++m)
        for (int n = -K; n <= K; ++n) {
            if (m == 0 && n == 0) continue;
            const Complex w{static_cast<double>(m), static_cast<double>(n)};
            const Complex d = z - w;
            acc += 1.0 / (d * d) - 1.0 / (w * w);
        }
    // The raw sum converges slowly (~1/K), so the tolerance is loose; it
    // still pins sign conventions and scale.
    CHECK(std::abs(lat.wp(z) - acc) < 2e-2);
}

TEST_CASE("differential equation residual") {
    const auto& lat = square_lattice();
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    int tested = 0;
    while (tested < 100) {
        const Complex z{u(rng), u(rng)};
        if (lat.pole_distance(z) < 0.2) continue;
        ++tested;
        const auto pp = lat.wp_pair(z);
        const Complex lhs = pp.p_prime * pp.p_prime;
        const Complex rhs =
            4.0 * pp.p * pp.p * pp.p - lat.g2() * pp.p - lat.g3();
        CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)) < 1e-9);
    }
}

TEST_CASE("periodicity, antisymmetry, derivative consistency") {
    const auto& lat = square_lattice();
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int n = 0;
    while (n < 60) {
        const Complex z{u(rng), u(rng)};
        if (lat.pole_distance(z) < 0.2) continue;
        ++n;
        const Complex w = lat.wp(z);
        const double scale = std::max(1.0, std::abs(w));
        CHECK(std::abs(lat.wp(z + 1.0) - w) / scale < 1e-10);
        CHECK(std::abs(lat.wp(z + Complex{0, 1}) - w) / scale < 1e-10);
        CHECK(std::abs(lat.wp(Complex{0, 1} * z) + w) / scale < 1e-10);
        const double h = 1e-5;
        const Complex fd = (lat.wp(z + h) - lat.wp(z - h)) / (2.0 * h);
        CHECK(std::abs(fd - lat.wp_prime(z)) / scale < 1e-6);
    }
}

TEST_CASE("pole guard") {
    const auto& lat = square_lattice();
    CHECK_THROWS_AS(lat.wp({1e-4, 0.0}), TooCloseToPoleError);
    CHECK_THROWS_AS(lat.wp({1.0 + 1e-4, 1.0}), TooCloseToPoleError);
    CHECK(lat.pole_distance({3.5, -2.0}) == doctest::Approx(0.5));
}

TEST_CASE("wp Taylor series matches pointwise evaluation") {
    const auto& lat = square_lattice();
    const Complex z0{0.34, 0.41};
    Complex coeffs[24];
    lat.wp_series(z0, coeffs);
    const Complex w{0.05, -0.08};
    Complex horner{};
    for (int k = 23; k >= 0; --k) horner = horner * w + coeffs[k];
    CHECK(std::abs(horner - lat.wp(z0 + w)) < 1e-12);
}

TEST_CASE("quadratic differential family") {
    const QcFamily fam;
    const SlicePoint p{Complex{5.0, 0.0}};
    CHECK(std::abs(fam.quad_diff_eval(SlicePoint{}, {0.5, 0.5})) < 1e-12);
    CHECK(std::abs(fam.quad_diff_eval(p, {0.5, 0.5}) - p.c) < 1e-12);
    const Complex z{0.27, 0.13};
    const Complex q0 = fam.quad_diff_eval(p, z);
    CHECK(std::abs(fam.quad_diff_eval(p, z + 1.0) - q0) < 1e-10);
    CHECK(std::abs(fam.quad_diff_eval(p, z + Complex{0, 1}) - q0) < 1e-10);
    CHECK_THROWS_AS(fam.quad_diff_eval(p, {1.0, 0.0}), TooCloseToPoleError);
}

TEST_CASE("general tau sanity: rectangular lattice") {
    const WeierstrassLattice lat{LatticeSpec{Complex{0.0, 1.3}, 200}};
    // Rectangular lattices have real invariants.
    CHECK(std::abs(lat.g2().imag()) < 1e-10);
    CHECK(std::abs(lat.g3().imag()) < 1e-10);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    int tested = 0;
    while (tested < 20) {
        const Complex z{u(rng), 1.3 * u(rng)};
        if (lat.pole_distance(z) < 0.2) continue;
        ++tested;
        const auto pp = lat.wp_pair(z);
        const Complex lhs = pp.p_prime * pp.p_prime;
        const Complex rhs =
            4.0 * pp.p * pp.p * pp.p - lat.g2() * pp.p - lat.g3();
        CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)) < 1e-9);
        CHECK(std::abs(lat.wp(z + Complex{0.0, 1.3}) - pp.p) /
                  std::max(1.0, std::abs(pp.p)) <
              1e-9);
    }
}
