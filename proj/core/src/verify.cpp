#include "berscan/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "berscan/discreteness.hpp"
#include "berscan/holonomy.hpp"
#include "berscan/io.hpp"
#include "berscan/oracles.hpp"
#include "berscan/scan.hpp"

namespace berscan {

namespace {

struct Suite {
    SuiteResult result;

    void check(const std::string& name, bool ok, double measured,
               double bound) {
        std::ostringstream detail;
        detail << measured << " (bound " << bound << ")";
        result.checks.push_back({name, ok, detail.str()});
    }
    void check_le(const std::string& name, double measured, double bound) {
        check(name, measured <= bound, measured, bound);
    }
    void check_true(const std::string& name, bool ok,
                    const std::string& detail = "") {
        result.checks.push_back({name, ok, detail});
    }
};

Complex rand_complex(std::mt19937& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    const double re = u(rng);
    const double im = u(rng);
    return Complex{re, im};
}

Mat2c random_sl2(std::mt19937& rng) {
    while (true) {
        const Complex a = rand_complex(rng, 1.5);
        if (std::abs(a) < 0.2) continue;
        const Complex b = rand_complex(rng, 1.5);
        const Complex c = rand_complex(rng, 1.5);
        const Complex d = (1.0 + b * c) / a;
        return Mat2c{a, b, c, d};
    }
}

SuiteResult suite_moebius(unsigned seed) {
    Suite s;
    s.result.name = "moebius";
    std::mt19937 rng(seed);

    double worst_det = 0.0, worst_comm = 0.0, worst_inv = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const Mat2c m1 = random_sl2(rng);
        const Mat2c m2 = random_sl2(rng);
        const Mat2c p = compose(m1, m2);
        worst_det = std::max(worst_det,
                             std::abs(p.det() - m1.det() * m2.det()));
        worst_comm = std::max(
            worst_comm, std::abs(p.trace() - compose(m2, m1).trace()));
        worst_inv = std::max(worst_inv, max_entry_distance(
                                            compose(m1, m1.inverse()),
                                            Mat2c::identity()));
    }
    s.check_le("det multiplicative", worst_det, 1e-12);
    s.check_le("trace(m1 m2) = trace(m2 m1)", worst_comm, 1e-12);
    s.check_le("m * m^-1 = I", worst_inv, 1e-12);

    const Mat2c par{1.0, 1.0, 0.0, 1.0};
    s.check_true("classify [[1,1],[0,1]] parabolic",
                 classify(par).tag == IsometryTag::Parabolic);
    const Mat2c lox{2.0, 0.0, 0.0, 0.5};
    s.check_true("classify diag(2,1/2) loxodromic",
                 classify(lox).tag == IsometryTag::Loxodromic);
    const Mat2c ell{Complex{0, 1}, 0.0, 0.0, Complex{0, -1}};
    s.check_true("classify diag(i,-i) elliptic",
                 classify(ell).tag == IsometryTag::Elliptic);

    const Mat2c tr3{3.0, -1.0, 1.0, 0.0};  // trace 3, det 1
    const double len = translation_length(tr3);
    s.check_le("translation length at trace 3",
               std::abs(len - 2.0 * std::acosh(1.5)), 1e-12);
    s.check_le("length(m) = length(m^-1)",
               std::abs(len - translation_length(tr3.inverse())), 1e-12);
    bool threw = false;
    try {
        translation_length(par);
    } catch (const NotHyperbolicError&) {
        threw = true;
    }
    s.check_true("trace 2 raises NotHyperbolic", threw);
    const Mat2c trm3{-3.0, -1.0, 1.0, 0.0};
    s.check_le("trace -3 same length as trace 3",
               std::abs(translation_length(trm3) - len), 1e-12);
    return s.result;
}

SuiteResult suite_char(unsigned seed) {
    Suite s;
    s.result.name = "char";
    std::mt19937 rng(seed + 1);

    const WordList wl2 = word_list(2);
    s.check_true("word_list(2) = [x1, x2, x1x2]",
                 wl2.words == std::vector<std::vector<int>>{{1}, {2}, {1, 2}});
    s.check_true("word_list(3) has the 7 canonical words",
                 word_list(3).words ==
                     std::vector<std::vector<int>>{
                         {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}});

    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const Mat2c a = random_sl2(rng);
        const Mat2c b = random_sl2(rng);
        const CharacterTriple t{a.trace(), b.trace(), (a * b).trace()};
        const Mat2c comm = a * b * a.inverse() * b.inverse();
        worst = std::max(worst,
                         std::abs(commutator_trace(t) - comm.trace()));
    }
    s.check_le("Fricke commutator identity vs matrices", worst, 1e-9);

    double worst4 = 0.0;
    for (int i = 0; i < 500; ++i) {
        const Mat2c a = random_sl2(rng);
        const Mat2c b = random_sl2(rng);
        const CharacterTriple t{a.trace(), b.trace(), (a * b).trace()};
        worst4 = std::max(
            worst4, std::abs(fourth_trace(t) - (a * b.inverse()).trace()));
    }
    s.check_le("fourth trace tr(AB^-1) = xy - z", worst4, 1e-9);

    double worst_flip = 0.0;
    for (int i = 0; i < 500; ++i) {
        CharacterTriple t{rand_complex(rng, 3), rand_complex(rng, 3),
                          rand_complex(rng, 3)};
        worst_flip = std::max(worst_flip,
                              std::abs(commutator_trace(trace_flip(t)) -
                                       commutator_trace(t)));
    }
    s.check_le("kappa invariant under trace flip", worst_flip, 1e-9);

    s.check_true("(3,3,3) is fuchsian-teich",
                 classify_real_point({3, 3, 3}).tag ==
                     RealPointTag::FuchsianTeich);
    s.check_true("(0,0,0) is su2",
                 classify_real_point({0, 0, 0}).tag == RealPointTag::Su2);
    s.check_true("(3,3,4) is not-relative",
                 classify_real_point({3, 3, 4}).tag ==
                     RealPointTag::NotRelative);

    bool perm_ok = true;
    const double zm = (2.9 * 4.0 + std::sqrt(2.9 * 2.9 * 16.0 -
                                             4.0 * (2.9 * 2.9 + 16.0))) /
                      2.0;
    const std::array<CharacterTriple, 3> samples{
        CharacterTriple{3, 3, 3}, CharacterTriple{0, 0, 0},
        CharacterTriple{2.9, 4.0, zm}};
    for (const auto& t : samples) {
        const RealPointTag tag = classify_real_point(t).tag;
        const std::array<CharacterTriple, 5> perms{
            CharacterTriple{t.y, t.x, t.z}, CharacterTriple{t.z, t.y, t.x},
            CharacterTriple{t.x, t.z, t.y}, CharacterTriple{t.y, t.z, t.x},
            CharacterTriple{t.z, t.x, t.y}};
        for (const auto& p : perms)
            perm_ok = perm_ok && classify_real_point(p).tag == tag;
    }
    s.check_true("classification stable under permutations", perm_ok);
    return s.result;
}

SuiteResult suite_elliptic(unsigned seed) {
    Suite s;
    s.result.name = "elliptic";
    std::mt19937 rng(seed + 2);
    const WeierstrassLattice lat{LatticeSpec{}};

    s.check_le("g3(i) vanishes", std::abs(lat.g3()), 1e-10);
    const double g2_agm = oracles::lemniscate_g2();
    s.check_le("g2(i) matches AGM lemniscate oracle",
               std::abs(lat.g2().real() - g2_agm) / g2_agm, 1e-8);
    s.check_le("g2(i) imaginary part", std::abs(lat.g2().imag()), 1e-10);

    const Invariants shell = eisenstein_invariants(LatticeSpec{});
    s.check_le("shell sum g2 within its tail bound",
               std::abs(shell.g2 - lat.g2()),
               shell.g2_tail_bound + 1e-9);
    s.check_le("shell sum g3 within its tail bound",
               std::abs(shell.g3 - lat.g3()),
               shell.g3_tail_bound + 1e-9);

    const Invariants base = eisenstein_shell_sum(Complex{0, 1}, 1.0, 60);
    const Invariants scaled = eisenstein_shell_sum(Complex{0, 1}, 2.0, 60);
    s.check_le("g2 homogeneity under lattice scaling",
               std::abs(scaled.g2 * 16.0 - base.g2), 1e-6);

    bool guard = false;
    try {
        eisenstein_invariants(LatticeSpec{Complex{0, 1}, 10});
    } catch (const CutoffTooSmallError&) {
        guard = true;
    }
    s.check_true("cutoff below 20 shells rejected", guard);

    // Differential equation (wp')^2 = 4 wp^3 - g2 wp - g3, relative.
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    double worst_de = 0.0;
    int tested = 0;
    while (tested < 100) {
        const Complex z{u(rng), u(rng)};
        if (lat.pole_distance(z) < 0.2) continue;
        ++tested;
        const auto pp = lat.wp_pair(z);
        const Complex lhs = pp.p_prime * pp.p_prime;
        const Complex rhs =
            4.0 * pp.p * pp.p * pp.p - lat.g2() * pp.p - lat.g3();
        worst_de = std::max(worst_de, std::abs(lhs - rhs) /
                                          std::max(1.0, std::abs(lhs)));
    }
    s.check_le("wp differential equation residual", worst_de, 1e-9);

    double worst_per = 0.0, worst_anti = 0.0, worst_fd = 0.0;
    int n = 0;
    while (n < 50) {
        const Complex z{u(rng) * 2.0, u(rng) * 2.0};
        if (lat.pole_distance(z) < 0.2 ||
            lat.pole_distance(z + 1.0) < 0.2 ||
            lat.pole_distance(z + Complex{0, 1}) < 0.2 ||
            lat.pole_distance(Complex{0, 1} * z) < 0.2)
            continue;
        ++n;
        const Complex w = lat.wp(z);
        const double scale = std::max(1.0, std::abs(w));
        worst_per = std::max(worst_per,
                             std::max(std::abs(lat.wp(z + 1.0) - w),
                                      std::abs(lat.wp(z + Complex{0, 1}) - w)) /
                                 scale);
        worst_anti = std::max(
            worst_anti, std::abs(lat.wp(Complex{0, 1} * z) + w) / scale);
        const double h = 1e-5;
        const Complex fd = (lat.wp(z + h) - lat.wp(z - h)) / (2.0 * h);
        worst_fd =
            std::max(worst_fd, std::abs(fd - lat.wp_prime(z)) / scale);
    }
    s.check_le("double periodicity", worst_per, 1e-10);
    s.check_le("square-lattice antisymmetry wp(iz) = -wp(z)", worst_anti,
               1e-10);
    s.check_le("wp' matches central difference", worst_fd, 1e-6);

    const double e1 = lat.wp(Complex{0.5, 0.0}).real();
    s.check_le("wp(1/2) = sqrt(g2)/2",
               std::abs(e1 - std::sqrt(lat.g2().real()) / 2.0), 1e-8);
    s.check_le("wp((1+i)/2) = 0", std::abs(lat.wp(Complex{0.5, 0.5})), 1e-10);

    // Direct lattice-sum cross-check of wp(1/2): sum over |m|,|n| <= K of
    // 1/(z-w)^2 - 1/w^2, slowly convergent so the bound is loose.
    {
        const Complex z{0.5, 0.0};
        Complex acc = 1.0 / (z * z);
        const int K = 120;
        for (int m = -K; m <= K; ++m)
            for (int nn = -K; nn <= K; ++nn) {
                if (m == 0 && nn == 0) continue;
                const Complex w{static_cast<double>(m),
                                static_cast<double>(nn)};
                const Complex d = z - w;
                acc += 1.0 / (d * d) - 1.0 / (w * w);
            }
        s.check_le("wp(1/2) vs direct lattice sum",
                   std::abs(acc.real() - e1), 5e-2);
    }

    bool pole_guard = false;
    try {
        lat.wp(Complex{1e-5, 0.0});
    } catch (const TooCloseToPoleError&) {
        pole_guard = true;
    }
    s.check_true("wp rejects z within eps_z of the lattice", pole_guard);

    // Family periodicity of q_c.
    const QcFamily fam;
    const SlicePoint p{Complex{5.0, 0.0}};
    const Complex z0{0.31, 0.17};
    const Complex q0 = fam.quad_diff_eval(p, z0);
    s.check_le("q_c periodicity",
               std::max(std::abs(fam.quad_diff_eval(p, z0 + 1.0) - q0),
                        std::abs(fam.quad_diff_eval(p, z0 + Complex{0, 1}) -
                                 q0)) /
                   std::max(1.0, std::abs(q0)),
               1e-10);
    s.check_le("q_c(center) at c = 0 vanishes",
               std::abs(QcFamily{}.quad_diff_eval(SlicePoint{}, {0.5, 0.5})),
               1e-10);
    s.check_le("q_c(center) picks up c",
               std::abs(fam.quad_diff_eval(p, {0.5, 0.5}) - p.c), 1e-10);
    return s.result;
}

SuiteResult suite_holonomy(unsigned seed, double theta_perturb) {
    Suite s;
    s.result.name = "holonomy";
    std::mt19937 rng(seed + 3);
    const QcFamily fam{LatticeSpec{}, BasisDifferential{0.5 + theta_perturb}};

    {
        const ConstantPotential zero{0.0};
        const Complex dz{0.7, 0.4};
        const Mat2c t = integrate_transfer(zero, 0.0, dz).transfer;
        s.check_le("q = 0 gives shear [[1, dz],[0, 1]]",
                   max_entry_distance(t, Mat2c{1.0, dz, 0.0, 1.0}), 1e-12);
    }
    {
        const double k = 1.7;
        const ConstantPotential osc{2.0 * k * k};
        const Complex dz{1.1, 0.0};
        const Mat2c t = integrate_transfer(osc, 0.0, dz).transfer;
        s.check_le("constant q transfer trace 2 cos(k dz)",
                   std::abs(t.trace() - 2.0 * std::cos(k * dz.real())), 1e-10);
    }
    {
        const QcPotential pot{fam, SlicePoint{Complex{1.0, 2.0}}};
        const std::array<Complex, 3> path{Complex{0.5, 0.5},
                                          Complex{1.1, 0.9},
                                          Complex{0.5, 0.5}};
        const Mat2c t = integrate_transfer(pot, path).transfer;
        s.check_le("path followed by reversal is identity",
                   max_entry_distance(t, Mat2c::identity()), 1e-10);
    }

    double worst_par = 0.0, worst_det = 0.0;
    for (const Complex c : {Complex{0, 0}, Complex{1, 1}, Complex{-2.5, 0}}) {
        const HolonomyResult h = holonomy(fam, SlicePoint{c});
        const Mat2c comm = h.m_alpha * h.m_beta * h.m_alpha.inverse() *
                           h.m_beta.inverse();
        worst_par = std::max(worst_par, std::abs(comm.trace() + 2.0));
        worst_det = std::max({worst_det, std::abs(h.m_alpha.det() - 1.0),
                              std::abs(h.m_beta.det() - 1.0)});
    }
    s.check_le("puncture monodromy trace is -2", worst_par, 1e-8);
    s.check_le("monodromy determinants are 1", worst_det, 1e-10);

    {
        // Same parabolicity through the closed commutator loop.
        const QcPotential pot{fam, SlicePoint{Complex{0.7, -0.3}}};
        const LoopPath loop =
            make_loop_path(fam.lattice(), PathTag::Commutator);
        const Mat2c t = integrate_transfer(pot, loop.vertices).transfer;
        s.check_le("commutator loop trace is -2", std::abs(t.trace() + 2.0),
                   1e-8);
    }

    {
        const SlicePoint p{Complex{0.4, 0.9}};
        s.check_le("Cauchy-Riemann residual at h = 1e-4",
                   cr_residual(fam, p, 1e-4), 1e-5);
        // Measured where the defect dominates the floating-point floor.
        const double rc = cr_residual(fam, p, 1e-2);
        const double rh = cr_residual(fam, p, 5e-3);
        s.check_true("CR residual drops ~4x under h -> h/2",
                     rc / rh > 2.0 && rc / rh < 8.0,
                     format_g17(rc / rh));
        const double rconst = cauchy_riemann_defect(
            [](Complex) { return Complex{2.7, -1.3}; }, p.c, 1e-4);
        s.check_le("CR defect of a constant function", rconst, 1e-15);
    }

    {
        const SlicePoint p{Complex{-1.2, 0.8}};
        const HolonomyResult base = holonomy(fam, p);
        HolonomyOptions moved;
        moved.basepoint = Complex{0.23, 0.69};
        const HolonomyResult alt = holonomy(fam, p, moved);
        const double d = std::max(
            {std::abs(base.character.x - alt.character.x),
             std::abs(base.character.y - alt.character.y),
             std::abs(base.character.z - alt.character.z)});
        s.check_le("basepoint move leaves the character fixed", d, 1e-8);

        // Homotopic rectangular detour for the alpha loop.
        const QcPotential pot{fam, p};
        const std::array<Complex, 4> rect{
            Complex{0.5, 0.5}, Complex{0.5, 0.8}, Complex{1.5, 0.8},
            Complex{1.5, 0.5}};
        const Mat2c direct =
            integrate_transfer(pot, Complex{0.5, 0.5}, Complex{1.5, 0.5})
                .transfer;
        const Mat2c rerouted = integrate_transfer(pot, rect).transfer;
        s.check_le("homotopic reroute gives the same transfer",
                   max_entry_distance(direct, rerouted), 1e-9);
    }

    {
        const SlicePoint p{Complex{2.2, 1.4}};
        HolonomyOptions loose;
        loose.ode.tol = 1e-10;
        HolonomyOptions tight;
        tight.ode.tol = 1e-14;
        const HolonomyResult hl = holonomy(fam, p, loose);
        const HolonomyResult ht = holonomy(fam, p, tight);
        const double moved = std::max(
            {std::abs(hl.character.x - ht.character.x),
             std::abs(hl.character.y - ht.character.y),
             std::abs(hl.character.z - ht.character.z)});
        s.check_le("character shift within 10x the error estimate", moved,
                   10.0 * hl.error_estimate);
    }

    {
        double min_dist = 1e300;
        std::vector<CharacterTriple> chars;
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                const Complex c{-6.0 + 12.0 * (i + 0.5) / 32.0,
                                -6.0 + 12.0 * (j + 0.5) / 32.0};
                chars.push_back(holonomy(fam, SlicePoint{c}).character);
            }
        for (std::size_t i = 0; i < chars.size(); ++i)
            for (std::size_t j = i + 1; j < chars.size(); ++j) {
                const double d = std::max(
                    {std::abs(chars[i].x - chars[j].x),
                     std::abs(chars[i].y - chars[j].y),
                     std::abs(chars[i].z - chars[j].z)});
                min_dist = std::min(min_dist, d);
            }
        s.check_true("distinct c give distinct characters (min gap)",
                     min_dist > 1e-6, format_g17(min_dist));
    }
    (void)rng;
    return s.result;
}

SuiteResult suite_discreteness(unsigned seed) {
    Suite s;
    s.result.name = "discreteness";
    std::mt19937 rng(seed + 4);

    {
        const CharacterTriple t{3, 3, 3};
        const CharacterTriple f = trace_flip(t);
        s.check_true("flip of (3,3,3) is (3,3,6)",
                     std::abs(f.z - 6.0) < 1e-15);
        s.check_le("kappa preserved by flip",
                   std::abs(commutator_trace(f) + 2.0), 1e-12);
        const CharacterTriple zero{0, 0, 0};
        s.check_true("(0,0,0) is a flip fixed point",
                     std::abs(trace_flip(zero).z) == 0.0);
        s.check_true("flip is an involution",
                     std::abs(trace_flip(trace_flip(t)).z - t.z) == 0.0);
    }

    {
        const CharacterTriple base{3, 3, 3};
        s.check_true("slope 0/1 reads x",
                     simple_trace(Slope{0, 1}, base) == base.x);
        s.check_true("slope 1/0 reads y",
                     simple_trace(Slope::infinity(), base) == base.y);
        s.check_le("slope 1/1 on the modular triple",
                   std::abs(simple_trace(Slope{1, 1}, base) - 3.0), 1e-12);
        s.check_le("slope 2/1 on the modular triple",
                   std::abs(simple_trace(Slope{2, 1}, base) - 6.0), 1e-12);
    }

    {
        // Farey-flip traces vs explicit matrix words at random relative
        // characters.
        std::uniform_real_distribution<double> u(2.2, 6.0);
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            // Random relative triple (kappa = -2), Teichmueller sheet.
            double x, y, disc;
            do {
                x = u(rng);
                y = u(rng);
                disc = x * x * y * y - 4.0 * (x * x + y * y);
            } while (disc < 0.1);
            const double z = (x * y + std::sqrt(disc)) / 2.0;
            const CharacterTriple t{x, y, z};
            const auto [A, B] = oracles::fricke_matrices(t);
            for (int p = -8; p <= 8; ++p)
                for (int q = 0; q <= 8; ++q) {
                    if (q == 0 && p != 1) continue;
                    if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
                    const Slope sl{p, q};
                    const Complex flips = simple_trace(sl, t);
                    const Complex words = oracles::word_trace(sl, A, B);
                    worst = std::max(
                        worst, std::abs(flips - words) /
                                   std::max(1.0, std::abs(words)));
                }
        }
        s.check_le("simple traces match matrix words (height 8)", worst,
                   1e-9);
    }

    {
        const BqVerdict modular = bq_test(CharacterTriple{3, 3, 3});
        s.check_true("modular triple is fuchsian",
                     modular.tag == BqTag::Fuchsian);
        const BqVerdict su2 = bq_test(CharacterTriple{0, 0, 0});
        s.check_true("su2 triple is not discrete with witness 0/1",
                     su2.tag == BqTag::NotDiscrete && su2.witness &&
                         *su2.witness == Slope{0, 1});
        bool threw = false;
        try {
            bq_test(CharacterTriple{2, 2, 2});
        } catch (const NotRelativeError&) {
            threw = true;
        }
        s.check_true("non-relative character rejected", threw);
    }

    {
        // Teichmueller sheet never reports not-discrete; verdicts are
        // monotone in depth.
        std::uniform_real_distribution<double> u(2.05, 10.0);
        bool ok = true;
        bool monotone = true;
        for (int rep = 0; rep < 60; ++rep) {
            double x, y, disc;
            do {
                x = u(rng);
                y = u(rng);
                disc = x * x * y * y - 4.0 * (x * x + y * y);
            } while (disc < 0.0);
            const double z = (x * y + std::sqrt(disc)) / 2.0;
            const CharacterTriple t{x, y, z};
            BqOptions shallow;
            shallow.max_depth = 12;
            const BqVerdict v1 = bq_test(t, shallow);
            const BqVerdict v2 = bq_test(t);
            ok = ok && v1.tag != BqTag::NotDiscrete &&
                 v2.tag != BqTag::NotDiscrete;
            if (v1.tag == BqTag::NotDiscrete)
                monotone = monotone && v2.tag == BqTag::NotDiscrete;
        }
        s.check_true("Teichmueller samples never not-discrete", ok);
        s.check_true("witnesses persist under deeper search", monotone);
    }

    {
        const auto h1 = enumerate_weighted_curves(1, 1);
        s.check_true("height-1 enumeration has the 4 slopes",
                     h1.size() == 4);
        const auto h2 = enumerate_weighted_curves(2, 2);
        s.check_true("height-2, two weights enumeration has 16 entries",
                     h2.size() == 16);
        bool exact = true;
        for (const auto& wc : h2)
            exact = exact &&
                    wc.weight == 2.0 * std::numbers::pi * wc.multiple;
        s.check_true("weights are exact multiples of 2 pi", exact);
    }
    return s.result;
}

SuiteResult suite_scan(unsigned seed) {
    Suite s;
    s.result.name = "scan";
    (void)seed;
    const QcFamily fam;

    RasterConfig cfg;
    cfg.resolution = 24;
    cfg.width = 20.0;
    cfg.height = 20.0;

    const RasterResult r1 = raster(fam, cfg);
    RasterConfig cfg3 = cfg;
    cfg3.workers = 3;
    const RasterResult r3 = raster(fam, cfg3);
    s.check_true("raster independent of worker count",
                 r1.classes == r3.classes);
    s.check_true("raster finds gray pixels", r1.stats.counts[0] > 0);
    s.check_le("raster kappa defect", r1.stats.max_kappa_defect, 1e-6);

    // Conjugation symmetry: the window is conjugation-invariant, so the
    // pixel classes on mirrored rows agree.
    bool sym = true;
    const int n = cfg.resolution;
    for (int row = 0; row < n && sym; ++row)
        for (int col = 0; col < n; ++col) {
            if (r1.classes[static_cast<std::size_t>(row) * n + col] !=
                r1.classes[static_cast<std::size_t>(n - 1 - row) * n + col]) {
                sym = false;
                break;
            }
        }
    s.check_true("pixel classes symmetric under conjugation", sym);

    RasterConfig fc = cfg;
    fc.resolution = 96;
    const auto centers = find_centers(fam, fc);
    s.check_true("uniformizing center found near c = 0",
                 !centers.empty() && std::abs(centers.front().c) < 1e-6,
                 centers.empty() ? "none"
                                 : format_g17(std::abs(centers.front().c)));
    bool valid = true;
    for (const auto& rec : centers) {
        BqOptions deep;
        deep.max_depth = 80;
        valid = valid &&
                classify_real_point(rec.character).tag ==
                    RealPointTag::FuchsianTeich &&
                bq_test(rec.character, deep).tag == BqTag::Fuchsian;
    }
    s.check_true("centers validate at doubled depth", valid);
    return s.result;
}

}  // namespace

std::vector<SuiteResult> run_verify(const VerifyOptions& opts) {
    std::vector<SuiteResult> out;
    const auto want = [&](const char* name) {
        return opts.suite.empty() || opts.suite == name;
    };
    if (want("moebius")) out.push_back(suite_moebius(opts.seed));
    if (want("char")) out.push_back(suite_char(opts.seed));
    if (want("elliptic")) out.push_back(suite_elliptic(opts.seed));
    if (want("holonomy"))
        out.push_back(suite_holonomy(opts.seed, opts.theta_perturb));
    if (want("discreteness")) out.push_back(suite_discreteness(opts.seed));
    if (want("scan")) out.push_back(suite_scan(opts.seed));
    return out;
}

}  // namespace berscan
