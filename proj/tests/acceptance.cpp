// Acceptance suite: one pass/fail line per criterion, exit code = number
// of failures.  Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "berscan/discreteness.hpp"
#include "berscan/holonomy.hpp"
#include "berscan/io.hpp"
#include "berscan/oracles.hpp"
#include "berscan/scan.hpp"

using namespace berscan;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& what, bool ok,
               const std::string& detail) {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number,
                what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

Complex random_in_window(std::mt19937& rng, const RasterConfig& cfg) {
    std::uniform_real_distribution<double> ux(-0.5 * cfg.width,
                                              0.5 * cfg.width);
    std::uniform_real_distribution<double> uy(-0.5 * cfg.height,
                                              0.5 * cfg.height);
    const double re = ux(rng);
    const double im = uy(rng);
    return cfg.center + Complex{re, im};
}

}  // namespace

int main() {
    const QcFamily family;
    RasterConfig base;  // defaults: center 0, 90x90 window, res 400
    std::mt19937 rng(987654321);

    // ----- Criteria 1-3: random-sample integrity of the holonomy map.
    {
        const auto t0 = std::chrono::steady_clock::now();
        double worst_par = 0.0, worst_kappa = 0.0, worst_det = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Complex c = random_in_window(rng, base);
            const HolonomyResult h = holonomy(family, SlicePoint{c});
            const Mat2c comm = h.m_alpha * h.m_beta * h.m_alpha.inverse() *
                               h.m_beta.inverse();
            worst_par = std::max(worst_par, std::abs(comm.trace() + 2.0));
            worst_kappa = std::max(
                worst_kappa, std::abs(commutator_trace(h.character) + 2.0));
            worst_det = std::max({worst_det, std::abs(h.m_alpha.det() - 1.0),
                                  std::abs(h.m_beta.det() - 1.0)});
        }
        const double dt = seconds_since(t0);
        criterion(1, "puncture parabolicity |tr[A,B] + 2| <= 1e-8 at 100 c",
                  worst_par <= 1e-8 && dt <= 30.0,
                  "worst " + fmt(worst_par) + ", " + fmt(dt) + " s");
        const bool exact = commutator_trace({3, 3, 3}) == Complex{-2.0};
        criterion(2, "Markov identity <= 1e-6 on samples; kappa(3,3,3) = -2",
                  worst_kappa <= 1e-6 && exact, "worst " + fmt(worst_kappa));
        criterion(3, "monodromy determinants within 1e-10 of 1 on samples",
                  worst_det <= 1e-10, "worst " + fmt(worst_det));
    }

    // ----- Criterion 4: numerical holomorphy of c -> (x, y, z).
    {
        // At h = 1e-4 the defect |f'''| h^2 / 3 sits at the double-precision
        // floor (~1e-9), four orders below the bound, so the h^2 order is
        // demonstrated at the top of the admissible h range instead.
        HolonomyOptions tight;
        tight.ode.tol = 1e-14;
        double worst = 0.0;
        double ratio_sum = 0.0;
        bool all_small = true;
        for (int i = 0; i < 20; ++i) {
            const Complex c = random_in_window(rng, base);
            const double r1 = cr_residual(family, SlicePoint{c}, 1e-4, tight);
            worst = std::max(worst, r1);
            all_small = all_small && r1 <= 1e-5;
            const double rc = cr_residual(family, SlicePoint{c}, 1e-2, tight);
            const double rh = cr_residual(family, SlicePoint{c}, 5e-3, tight);
            ratio_sum += rc / std::max(rh, 1e-300);
        }
        const double mean_ratio = ratio_sum / 20.0;
        criterion(4,
                  "Cauchy-Riemann residual <= 1e-5 at h = 1e-4, ~4x drop at "
                  "h/2",
                  all_small && mean_ratio >= 2.0 && mean_ratio <= 8.0,
                  "worst " + fmt(worst) + ", mean ratio " + fmt(mean_ratio));
    }

    // ----- Criterion 5 + 9: base raster, centers, symmetry, determinism.
    RasterConfig run1 = base;
    run1.workers = 1;
    const auto t5 = std::chrono::steady_clock::now();
    const RasterResult imgA = raster(family, run1);
    const double raster_seconds = seconds_since(t5);
    const std::vector<CenterRecord> centersA = find_centers(family, run1);
    {
        const int n = run1.resolution;
        const auto cls = [&](int r, int c) {
            return imgA.classes[static_cast<std::size_t>(r) * n + c];
        };
        const auto grayish = [&](int r, int c) {
            return cls(r, c) == PixelClass::QfGray ||
                   cls(r, c) == PixelClass::CenterBlack;
        };
        // Connected gray component through the pixel nearest c = 0.
        const int r0 = n / 2, c0 = n / 2;
        long comp = 0;
        if (grayish(r0, c0)) {
            std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
            std::queue<std::pair<int, int>> q;
            q.push({r0, c0});
            seen[static_cast<std::size_t>(r0) * n + c0] = 1;
            while (!q.empty()) {
                const auto [r, c] = q.front();
                q.pop();
                ++comp;
                const int dr[4] = {1, -1, 0, 0};
                const int dc[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int rr = r + dr[k], cc = c + dc[k];
                    if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
                    if (seen[static_cast<std::size_t>(rr) * n + cc]) continue;
                    if (!grayish(rr, cc)) continue;
                    seen[static_cast<std::size_t>(rr) * n + cc] = 1;
                    q.push({rr, cc});
                }
            }
        }

        // Validated black centers with gray island interiors around them.
        int validated = 0;
        BqOptions deep = run1.bq;
        deep.max_depth *= 2;
        for (const CenterRecord& rec : centersA) {
            if (classify_real_point(rec.character).tag !=
                RealPointTag::FuchsianTeich)
                continue;
            if (bq_test(rec.character, deep).tag != BqTag::Fuchsian) continue;
            const int col = static_cast<int>(std::floor(
                (rec.c.real() - run1.center.real() + 0.5 * run1.width) /
                (run1.width / n)));
            const int row = static_cast<int>(std::floor(
                (run1.center.imag() + 0.5 * run1.height - rec.c.imag()) /
                (run1.height / n)));
            if (row < 1 || row >= n - 1 || col < 1 || col >= n - 1) continue;
            bool black_here = false;
            int gray_ring = 0;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    const PixelClass pc = cls(row + dr, col + dc);
                    if (pc == PixelClass::CenterBlack) black_here = true;
                    if (pc == PixelClass::QfGray) ++gray_ring;
                }
            if (black_here && gray_ring >= 4) ++validated;
        }

        long mismatches = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (cls(r, c) != cls(n - 1 - r, c)) ++mismatches;
        const double mismatch_frac =
            static_cast<double>(mismatches) / (static_cast<double>(n) * n);

        criterion(5,
                  "figure raster: gray component at c_F, >= 5 validated "
                  "black centers, conjugation symmetry, <= 600 s",
                  comp >= 20 && validated >= 5 && mismatch_frac <= 0.005 &&
                      raster_seconds <= 600.0,
                  "component " + std::to_string(comp) + " px, centers " +
                      std::to_string(validated) + ", asym " +
                      fmt(mismatch_frac) + ", " + fmt(raster_seconds) + " s");
    }

    // ----- Criterion 6: center validation and window growth.
    std::vector<CenterRecord> centersB;
    {
        bool all_valid = !centersA.empty();
        for (const CenterRecord& rec : centersA) {
            const auto cls = classify_real_point(rec.character);
            bool ok = cls.tag == RealPointTag::FuchsianTeich;
            ok = ok && rec.character.x.real() > 2.0 &&
                 rec.character.y.real() > 2.0 && rec.character.z.real() > 2.0;
            ok = ok &&
                 std::abs(commutator_trace(rec.character) + 2.0) <= 1e-8;
            try {
                ok = ok && bq_test(rec.character, run1.bq).tag ==
                               BqTag::Fuchsian;
            } catch (const NotRelativeError&) {
                ok = false;
            }
            all_valid = all_valid && ok;
        }
        double min_gap = 1e300;
        for (std::size_t i = 0; i < centersA.size(); ++i)
            for (std::size_t j = i + 1; j < centersA.size(); ++j)
                min_gap = std::min(min_gap,
                                   std::abs(centersA[i].c - centersA[j].c));
        RasterConfig doubled = run1;
        doubled.width *= 2.0;
        doubled.height *= 2.0;
        centersB = find_centers(family, doubled);
        criterion(6,
                  "centers real+relative+Fuchsian, pairwise distinct; 2x "
                  "window strictly adds centers",
                  all_valid && min_gap > 1e-3 &&
                      centersB.size() > centersA.size(),
                  std::to_string(centersA.size()) + " -> " +
                      std::to_string(centersB.size()) + ", min gap " +
                      fmt(min_gap));
    }

    // ----- Criterion 7: length/modulus series along the 1/0 ray.
    {
        RasterConfig strip = base;
        strip.center = Complex{100.0, 0.0};
        strip.width = 185.0;
        strip.height = 6.0;
        strip.resolution = 512;
        strip.workers = 1;
        const auto centers = find_centers(family, strip);
        bool ok = false;
        std::string detail = "series unavailable";
        try {
            const auto series = center_length_series(Slope{1, 0}, centers);
            if (series.size() >= 3) {
                bool increasing = true;
                for (std::size_t i = 1; i < series.size(); ++i)
                    increasing =
                        increasing && series[i].second > series[i - 1].second;
                double lo = 1e300, hi = 0.0;
                for (std::size_t i = series.size() - 3; i < series.size();
                     ++i) {
                    const double m = 2.0 * std::numbers::pi *
                                     series[i].first / series[i].second;
                    lo = std::min(lo, m);
                    hi = std::max(hi, m);
                }
                // Least-squares slope of l_n against 2 pi n: the lengths
                // admit a positive linear lower bound on the tail.
                double num = 0.0, den = 0.0;
                for (const auto& [nn, ll] : series) {
                    const double w = 2.0 * std::numbers::pi * nn;
                    num += w * ll;
                    den += w * w;
                }
                const double slope_fit = num / den;
                bool linear_tail = slope_fit > 0.0;
                for (std::size_t i = series.size() / 2; i < series.size();
                     ++i)
                    linear_tail = linear_tail &&
                                  series[i].second >=
                                      2.0 * std::numbers::pi *
                                          series[i].first * slope_fit * 0.95;
                ok = increasing && hi / lo <= 1.5 && linear_tail;
                std::ostringstream os;
                os << "lengths";
                for (const auto& [nn, ll] : series) os << " " << ll;
                os << "; modulus ratio " << fmt(hi / lo) << ", fit "
                   << fmt(slope_fit);
                detail = os.str();
            } else {
                detail = "only " + std::to_string(series.size()) + " terms";
            }
        } catch (const InsufficientCentersError&) {
        }
        criterion(7,
                  "grafted lengths strictly increase; 2 pi n / l_n bounded "
                  "(last-3 ratio <= 1.5)",
                  ok, detail);
    }

    // ----- Criterion 8: Farey flips vs brute-force matrix words.
    {
        double worst = 0.0;
        std::uniform_real_distribution<double> u(2.1, 7.0);
        std::uniform_real_distribution<double> v(-2.5, 2.5);
        for (int rep = 0; rep < 20; ++rep) {
            CharacterTriple t;
            if (rep % 2 == 0) {
                double x, y, disc;
                do {
                    x = u(rng);
                    y = u(rng);
                    disc = x * x * y * y - 4.0 * (x * x + y * y);
                } while (disc < 0.0);
                t = CharacterTriple{x, y, (x * y + std::sqrt(disc)) / 2.0};
            } else {
                Complex x, y, z;
                do {
                    x = Complex{v(rng), v(rng)};
                    y = Complex{v(rng), v(rng)};
                    z = (x * y + std::sqrt(x * x * y * y -
                                           4.0 * (x * x + y * y))) /
                        2.0;
                } while (std::abs(commutator_trace({x, y, z}) + 2.0) > 1e-10);
                t = CharacterTriple{x, y, z};
            }
            const auto [a, b] = oracles::fricke_matrices(t);
            for (int p = -8; p <= 8; ++p)
                for (int q = 0; q <= 8; ++q) {
                    if (q == 0 && p != 1) continue;
                    if (q > 0 && std::gcd(p < 0 ? -p : p, q) != 1) continue;
                    const Slope s{p, q};
                    const Complex flips = simple_trace(s, t);
                    const Complex words = oracles::word_trace(s, a, b);
                    worst = std::max(worst,
                                     std::abs(flips - words) /
                                         std::max(1.0, std::abs(words)));
                }
        }
        criterion(8, "simple traces match matrix words (height <= 8, 20 "
                     "relative triples)",
                  worst <= 1e-9, "worst " + fmt(worst));
    }

    // ----- Criterion 9: byte-identical pipeline outputs across workers.
    {
        RasterConfig run3 = run1;
        run3.workers = 3;
        const RasterResult imgB = raster(family, run3);
        const auto centersW3 = find_centers(family, run3);
        std::ostringstream ppm1(std::ios::binary), ppm3(std::ios::binary);
        write_ppm(ppm1, imgA);
        write_ppm(ppm3, imgB);
        const std::string json1 = centers_json(centersA);
        const std::string json3 = centers_json(centersW3);
        const std::string stats1 = raster_stats_json(run1, imgA.stats);
        const std::string stats3 = raster_stats_json(run3, imgB.stats);
        criterion(9, "worker count never changes PPM or JSON bytes",
                  ppm1.str() == ppm3.str() && json1 == json3 &&
                      stats1 == stats3,
                  ppm1.str() == ppm3.str() ? "identical" : "ppm differs");
    }

    // ----- Criterion 10: elliptic layer against independent oracles.
    {
        const auto& lat = family.lattice();
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
        const double g2_rel =
            std::abs(lat.g2().real() - oracles::lemniscate_g2()) /
            oracles::lemniscate_g2();
        criterion(10,
                  "wp ODE residual <= 1e-9; g3(i) <= 1e-10; g2(i) matches "
                  "AGM to 1e-8",
                  worst_de <= 1e-9 && std::abs(lat.g3()) <= 1e-10 &&
                      g2_rel <= 1e-8,
                  "de " + fmt(worst_de) + ", g3 " + fmt(std::abs(lat.g3())) +
                      ", g2 rel " + fmt(g2_rel));
    }

    std::printf("%s: %d %s failed\n",
                g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                g_failures, g_failures == 1 ? "criterion" : "criteria");
    return g_failures;
}
