#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "berscan/holonomy.hpp"

using namespace berscan;

namespace {

const QcFamily& family() {
    static const QcFamily fam;
    return fam;
}

double char_distance(const CharacterTriple& a, const CharacterTriple& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                     std::abs(a.z - b.z)});
}

}  // namespace

TEST_CASE("zero potential gives the shear transfer") {
    const ConstantPotential zero{0.0};
    const Complex dz{0.8, -0.3};
    const TransferResult r = integrate_transfer(zero, Complex{0.2, 0.1},
                                                Complex{0.2, 0.1} + dz);
    CHECK(max_entry_distance(r.transfer, Mat2c{1.0, dz, 0.0, 1.0}) < 1e-13);
}

TEST_CASE("constant potential reproduces the oscillator") {
    // q = 2k^2 turns the equation into u'' + k^2 u = 0.
    for (const double k : {0.5, 1.7, 3.0}) {
        const ConstantPotential pot{2.0 * k * k};
        const Complex dz{1.3, 0.0};
        const TransferResult r = integrate_transfer(pot, 0.0, dz);
        CHECK(std::abs(r.transfer.trace() - 2.0 * std::cos(k * dz.real())) <
              1e-10);
        CHECK(std::abs(r.transfer.det() - 1.0) < 1e-11);
    }
    // Complex displacement as well.
    const double k = 1.1;
    const ConstantPotential pot{2.0 * k * k};
    const Complex dz{0.4, 0.7};
    const TransferResult r = integrate_transfer(pot, 0.0, dz);
    CHECK(std::abs(r.transfer.trace() - 2.0 * std::cos(k * dz)) < 1e-10);
}

TEST_CASE("reversal inverts the transfer") {
    const QcPotential pot{family(), SlicePoint{Complex{1.5, -2.0}}};
    const std::array<Complex, 3> path{Complex{0.5, 0.5}, Complex{1.2, 0.7},
                                      Complex{0.5, 0.5}};
    const TransferResult r = integrate_transfer(pot, path);
    CHECK(max_entry_distance(r.transfer, Mat2c::identity()) < 1e-10);
}

TEST_CASE("paths that graze a pole are rejected") {
    const QcPotential pot{family(), SlicePoint{}};
    CHECK_THROWS_AS(
        integrate_transfer(pot, Complex{0.9995, 0.0}, Complex{1.0005, 0.0}),
        PathTooCloseError);
}

TEST_CASE("loop paths respect clearance and endpoints") {
    const auto& lat = family().lattice();
    const LoopPath alpha = make_loop_path(lat, PathTag::Alpha);
    CHECK(alpha.vertices.front() == Complex{0.5, 0.5});
    CHECK(alpha.vertices.back() == Complex{1.5, 0.5});
    const LoopPath beta = make_loop_path(lat, PathTag::Beta);
    CHECK(beta.vertices.back() == Complex{0.5, 1.5});
    // A basepoint hugging the lattice row forces detours.
    const LoopPath near = make_loop_path(lat, PathTag::Alpha,
                                         Complex{0.5, 0.0005});
    CHECK(near.vertices.size() > 2);
    for (std::size_t i = 0; i + 1 < near.vertices.size(); ++i) {
        // Segment midpoints keep clearance.
        const Complex mid = 0.5 * (near.vertices[i] + near.vertices[i + 1]);
        CHECK(lat.pole_distance(mid) >= lat.eps_z());
    }
    // The detoured loop still computes a transfer (and the same trace as
    // any other basepoint).
    const QcPotential pot{family(), SlicePoint{Complex{0.3, 0.2}}};
    const TransferResult shifted = integrate_transfer(pot, near.vertices);
    const TransferResult plain = integrate_transfer(
        pot, make_loop_path(lat, PathTag::Alpha).vertices);
    CHECK(std::abs(shifted.transfer.trace() - plain.transfer.trace()) < 1e-7);
}

TEST_CASE("puncture monodromy is parabolic across the family") {
    for (const Complex c : {Complex{0, 0}, Complex{1, 1}, Complex{-2.5, 0},
                            Complex{4.2, -3.3}}) {
        const HolonomyResult h = holonomy(family(), SlicePoint{c});
        const Mat2c comm = h.m_alpha * h.m_beta * h.m_alpha.inverse() *
                           h.m_beta.inverse();
        CHECK(std::abs(comm.trace() + 2.0) < 1e-8);
        CHECK(std::abs(commutator_trace(h.character) + 2.0) < 1e-8);
        CHECK(std::abs(h.m_alpha.det() - 1.0) < 1e-10);
        CHECK(std::abs(h.m_beta.det() - 1.0) < 1e-10);
    }
}

TEST_CASE("commutator loop agrees with the matrix commutator") {
    const SlicePoint p{Complex{0.8, 0.6}};
    const QcPotential pot{family(), p};
    const LoopPath loop = make_loop_path(family().lattice(),
                                         PathTag::Commutator);
    const TransferResult r = integrate_transfer(pot, loop.vertices);
    const HolonomyResult h = holonomy(family(), p);
    const Mat2c comm =
        h.m_alpha * h.m_beta * h.m_alpha.inverse() * h.m_beta.inverse();
    CHECK(std::abs(r.transfer.trace() - comm.trace()) < 1e-9);
}

TEST_CASE("basepoint moves conjugate the monodromy") {
    const SlicePoint p{Complex{-1.7, 1.1}};
    const HolonomyResult base = holonomy(family(), p);
    for (const Complex bp : {Complex{0.3, 0.4}, Complex{0.71, 0.23},
                             Complex{0.4, 0.62}}) {
        HolonomyOptions opts;
        opts.basepoint = bp;
        const HolonomyResult moved = holonomy(family(), p, opts);
        CHECK(char_distance(base.character, moved.character) < 1e-8);
    }
}

TEST_CASE("homotopic polylines give equal transfer") {
    const QcPotential pot{family(), SlicePoint{Complex{2.0, 0.5}}};
    const Mat2c direct =
        integrate_transfer(pot, Complex{0.5, 0.5}, Complex{1.5, 0.5}).transfer;
    const std::array<Complex, 4> rect{Complex{0.5, 0.5}, Complex{0.5, 0.8},
                                      Complex{1.5, 0.8}, Complex{1.5, 0.5}};
    const Mat2c rerouted = integrate_transfer(pot, rect).transfer;
    CHECK(max_entry_distance(direct, rerouted) < 1e-9);
}

TEST_CASE("step halving stays within the error estimate") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 10; ++i) {
        const SlicePoint p{Complex{u(rng), u(rng)}};
        HolonomyOptions loose;
        loose.ode.tol = 1e-10;
        HolonomyOptions tight;
        tight.ode.tol = 1e-14;
        const HolonomyResult hl = holonomy(family(), p, loose);
        const HolonomyResult ht = holonomy(family(), p, tight);
        CHECK(char_distance(hl.character, ht.character) <=
              10.0 * hl.error_estimate);
    }
}

TEST_CASE("holonomy is numerically holomorphic in c") {
    std::mt19937 rng(32);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int i = 0; i < 5; ++i) {
        const SlicePoint p{Complex{u(rng), u(rng)}};
        CHECK(cr_residual(family(), p, 1e-4) < 1e-5);
        // The h^2 order shows where the defect is resolvable above the
        // floating-point floor.
        const double rc = cr_residual(family(), p, 1e-2);
        const double rh = cr_residual(family(), p, 5e-3);
        CHECK(rc / rh > 2.0);
        CHECK(rc / rh < 8.0);
    }
    CHECK(cauchy_riemann_defect([](Complex) { return Complex{1.0, 2.0}; },
                                Complex{0.3, 0.4}, 1e-4) < 1e-15);
    CHECK_THROWS_AS(cr_residual(family(), SlicePoint{}, 0.5),
                    std::invalid_argument);
}

TEST_CASE("characters separate points at grid scale") {
    std::vector<CharacterTriple> chars;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            chars.push_back(holonomy(family(),
                                     SlicePoint{Complex{-5.0 + 2.0 * i,
                                                        -5.0 + 2.0 * j}})
                                .character);
    double min_gap = 1e300;
    for (std::size_t i = 0; i < chars.size(); ++i)
        for (std::size_t j = i + 1; j < chars.size(); ++j)
            min_gap = std::min(min_gap, char_distance(chars[i], chars[j]));
    CHECK(min_gap > 1e-4);
}
