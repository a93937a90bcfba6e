#include "berscan/scan.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

#include "berscan/errors.hpp"

namespace berscan {

namespace {

int worker_count(int hint) {
    if (hint > 0) return hint;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Static row partition: worker w takes rows w, w + n, w + 2n, ...  The
/// buffers are preallocated, so scheduling cannot affect the result.
template <typename Fn>
void parallel_rows(int rows, int workers, Fn&& fn) {
    if (workers <= 1) {
        for (int r = 0; r < rows; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int r = w; r < rows; r += workers) fn(r);
        });
    for (auto& t : pool) t.join();
}

double relative_im_residual(const CharacterTriple& t) {
    const auto one = [](Complex v) {
        return std::abs(v.imag()) / std::max(1.0, std::abs(v));
    };
    return std::max({one(t.x), one(t.y), one(t.z)});
}

double trace_scale(const CharacterTriple& t) {
    return std::max({1.0, std::abs(t.x), std::abs(t.y), std::abs(t.z)});
}

}  // namespace

CharacterTriple positive_lift(const CharacterTriple& t) {
    int neg = 0;
    if (t.x.real() < 0) ++neg;
    if (t.y.real() < 0) ++neg;
    if (t.z.real() < 0) ++neg;
    if (neg != 2) return t;
    CharacterTriple out = t;
    if (t.x.real() < 0 && t.y.real() < 0) {
        out.x = -out.x;
        out.y = -out.y;
    } else if (t.x.real() < 0 && t.z.real() < 0) {
        out.x = -out.x;
        out.z = -out.z;
    } else {
        out.y = -out.y;
        out.z = -out.z;
    }
    return out;
}

Complex pixel_coordinate(const RasterConfig& cfg, int row, int col) {
    const double fx = (static_cast<double>(col) + 0.5) /
                          static_cast<double>(cfg.resolution) -
                      0.5;
    const double fy = 0.5 - (static_cast<double>(row) + 0.5) /
                                static_cast<double>(cfg.resolution);
    return cfg.center + Complex(cfg.width * fx, cfg.height * fy);
}

namespace {

struct PointData {
    CharacterTriple character;
    BqTag verdict;
    double im_residual;
    double kappa_defect;
    double det_defect;
    double ode_error;
};

PointData evaluate_point(const QcFamily& family, Complex c,
                         const RasterConfig& cfg) {
    const HolonomyResult h = holonomy(family, SlicePoint{c}, cfg.holonomy);
    PointData d;
    d.character = h.character;
    d.im_residual = relative_im_residual(h.character);
    d.kappa_defect = std::abs(commutator_trace(h.character) + 2.0);
    d.det_defect = std::max(std::abs(h.m_alpha.det() - 1.0),
                            std::abs(h.m_beta.det() - 1.0));
    d.ode_error = h.error_estimate;
    if (d.kappa_defect <= cfg.bq.relative_tol) {
        d.verdict = bq_test(h.character, cfg.bq).tag;
    } else {
        d.verdict = BqTag::Inconclusive;
    }
    return d;
}

PixelClass verdict_class(BqTag tag) {
    switch (tag) {
        case BqTag::Fuchsian:
        case BqTag::Quasifuchsian: return PixelClass::QfGray;
        case BqTag::NotDiscrete: return PixelClass::OutsideWhite;
        case BqTag::Inconclusive: return PixelClass::Inconclusive;
    }
    return PixelClass::Inconclusive;
}

bool validate_center(const QcFamily&, const CharacterTriple& raw,
                     const RasterConfig& cfg) {
    const CharacterTriple t = positive_lift(raw);
    if (classify_real_point(t).tag != RealPointTag::FuchsianTeich)
        return false;
    try {
        return bq_test(t, cfg.bq).tag == BqTag::Fuchsian;
    } catch (const NotRelativeError&) {
        return false;
    }
}

}  // namespace

std::optional<CenterRecord> refine_center(const QcFamily& family, Complex c0,
                                          const RasterConfig& cfg) {
    Complex c = c0;
    const auto residual_of = [&](Complex at, CharacterTriple* out_tri) {
        const CharacterTriple t =
            holonomy(family, SlicePoint{at}, cfg.holonomy).character;
        if (out_tri) *out_tri = t;
        return std::array<double, 3>{t.x.imag(), t.y.imag(), t.z.imag()};
    };
    const auto norm_inf = [](const std::array<double, 3>& f) {
        return std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])});
    };

    CharacterTriple tri;
    std::array<double, 3> f = residual_of(c, &tri);
    bool converged = false;
    for (int iter = 0; iter < cfg.gn_max_iters; ++iter) {
        const double scale = trace_scale(tri);
        if (norm_inf(f) <= cfg.gn_tol * scale) {
            converged = true;
            break;
        }
        // 3x2 Jacobian by central differences in Re c and Im c.
        const double hs = cfg.gn_fd_step;
        const std::array<double, 3> fxp = residual_of(c + hs, nullptr);
        const std::array<double, 3> fxm = residual_of(c - hs, nullptr);
        const std::array<double, 3> fyp =
            residual_of(c + Complex(0.0, hs), nullptr);
        const std::array<double, 3> fym =
            residual_of(c - Complex(0.0, hs), nullptr);
        double jtj[2][2] = {{0, 0}, {0, 0}};
        double jtf[2] = {0, 0};
        for (int i = 0; i < 3; ++i) {
            const double j0 = (fxp[static_cast<std::size_t>(i)] -
                               fxm[static_cast<std::size_t>(i)]) /
                              (2.0 * hs);
            const double j1 = (fyp[static_cast<std::size_t>(i)] -
                               fym[static_cast<std::size_t>(i)]) /
                              (2.0 * hs);
            jtj[0][0] += j0 * j0;
            jtj[0][1] += j0 * j1;
            jtj[1][1] += j1 * j1;
            jtf[0] += j0 * f[static_cast<std::size_t>(i)];
            jtf[1] += j1 * f[static_cast<std::size_t>(i)];
        }
        jtj[1][0] = jtj[0][1];
        const double det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0];
        if (std::abs(det) < 1e-300) break;
        const double dx = -(jtj[1][1] * jtf[0] - jtj[0][1] * jtf[1]) / det;
        const double dy = -(-jtj[1][0] * jtf[0] + jtj[0][0] * jtf[1]) / det;
        // Damping by halving until the residual improves.
        double lambda = 1.0;
        bool stepped = false;
        const double f0 = norm_inf(f);
        while (lambda >= 1.0 / 64.0) {
            const Complex trial = c + lambda * Complex(dx, dy);
            CharacterTriple t2;
            const std::array<double, 3> f2 = residual_of(trial, &t2);
            if (norm_inf(f2) < f0) {
                c = trial;
                f = f2;
                tri = t2;
                stepped = true;
                break;
            }
            lambda /= 2.0;
        }
        if (!stepped) break;  // stalled
    }
    if (!converged) {
        const double scale = trace_scale(tri);
        if (norm_inf(f) > cfg.gn_tol * scale) return std::nullopt;
    }
    if (!validate_center(family, tri, cfg)) return std::nullopt;

    CenterRecord rec;
    rec.c = c;
    rec.character = positive_lift(tri);
    rec.residual = norm_inf(f) / trace_scale(tri);
    for (const WeightedCurve& wc : enumerate_weighted_curves(cfg.length_height, 1)) {
        const Complex tr = simple_trace(wc.slope, rec.character);
        const double half = std::abs(tr.real()) / 2.0;
        if (half > 1.0)
            rec.lengths.emplace_back(wc.slope, 2.0 * std::acosh(half));
    }
    return rec;
}

PointClassification classify_point(const QcFamily& family, Complex c,
                                   const RasterConfig& cfg) {
    const PointData d = evaluate_point(family, c, cfg);
    PointClassification out;
    out.character = d.character;
    out.verdict = d.verdict;
    out.im_residual = d.im_residual;
    out.kappa_defect = d.kappa_defect;
    out.det_defect = d.det_defect;
    out.ode_error = d.ode_error;
    out.cls = verdict_class(d.verdict);
    if (d.im_residual < cfg.seed_threshold) {
        const auto refined = refine_center(family, c, cfg);
        if (refined) {
            const double hx = 0.5 * cfg.width / cfg.resolution;
            const double hy = 0.5 * cfg.height / cfg.resolution;
            const Complex delta = refined->c - c;
            if (std::abs(delta.real()) <= hx && std::abs(delta.imag()) <= hy)
                out.cls = PixelClass::CenterBlack;
        }
    }
    return out;
}

namespace {

/// Refine the given seeds in parallel, then merge, validate and sort.
std::vector<CenterRecord> refine_and_collect(const QcFamily& family,
                                             const RasterConfig& cfg,
                                             const std::vector<Complex>& seeds) {
    std::vector<std::optional<CenterRecord>> refined(seeds.size());
    parallel_rows(static_cast<int>(seeds.size()), worker_count(cfg.workers),
                  [&](int i) {
                      refined[static_cast<std::size_t>(i)] = refine_center(
                          family, seeds[static_cast<std::size_t>(i)], cfg);
                  });
    std::vector<CenterRecord> centers;
    for (auto& r : refined)
        if (r) centers.push_back(std::move(*r));
    std::sort(centers.begin(), centers.end(),
              [](const CenterRecord& a, const CenterRecord& b) {
                  const double ma = std::abs(a.c), mb = std::abs(b.c);
                  if (ma != mb) return ma < mb;
                  if (a.c.real() != b.c.real()) return a.c.real() < b.c.real();
                  return a.c.imag() < b.c.imag();
              });
    std::vector<CenterRecord> merged;
    for (auto& rec : centers) {
        bool dup = false;
        for (const auto& kept : merged)
            if (std::abs(kept.c - rec.c) < cfg.merge_distance) {
                dup = true;
                break;
            }
        if (!dup) merged.push_back(std::move(rec));
    }
    return merged;
}

/// Below-threshold local minima of the residual grid (8-neighborhood).
std::vector<Complex> grid_seeds(const RasterConfig& cfg,
                                const std::vector<double>& residual) {
    const int n = cfg.resolution;
    const auto at = [&](int r, int c) {
        return residual[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
                        static_cast<std::size_t>(c)];
    };
    std::vector<Complex> seeds;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const double v = at(r, c);
            if (v >= cfg.seed_threshold) continue;
            bool is_min = true;
            for (int dr = -1; dr <= 1 && is_min; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
                    if (at(rr, cc) < v) {
                        is_min = false;
                        break;
                    }
                }
            if (is_min) seeds.push_back(pixel_coordinate(cfg, r, c));
        }
    return seeds;
}

}  // namespace

std::vector<std::uint8_t> RasterResult::rgb() const {
    static constexpr std::uint8_t kPalette[4][3] = {
        {160, 160, 160},  // qf-gray
        {0, 0, 0},        // center-black
        {255, 255, 255},  // outside-white
        {255, 200, 0},    // inconclusive
    };
    std::vector<std::uint8_t> buf;
    buf.reserve(classes.size() * 3);
    for (const PixelClass c : classes) {
        const auto& p = kPalette[static_cast<int>(c)];
        buf.push_back(p[0]);
        buf.push_back(p[1]);
        buf.push_back(p[2]);
    }
    return buf;
}

RasterResult raster(const QcFamily& family, const RasterConfig& cfg) {
    if (cfg.resolution < 2)
        throw std::invalid_argument("raster: resolution must be >= 2");
    if (!(cfg.width > 0.0) || !(cfg.height > 0.0))
        throw std::invalid_argument("raster: window must have positive size");
    const auto t0 = std::chrono::steady_clock::now();
    const int n = cfg.resolution;
    RasterResult out;
    out.resolution = n;
    out.classes.assign(static_cast<std::size_t>(n) * n, PixelClass::Inconclusive);
    std::vector<double> ode_err(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> kappa(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> dets(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> residual(static_cast<std::size_t>(n) * n, 1.0);

    parallel_rows(n, worker_count(cfg.workers), [&](int row) {
        for (int col = 0; col < n; ++col) {
            const std::size_t idx =
                static_cast<std::size_t>(row) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(col);
            const PointData d =
                evaluate_point(family, pixel_coordinate(cfg, row, col), cfg);
            out.classes[idx] = verdict_class(d.verdict);
            residual[idx] = d.im_residual;
            ode_err[idx] = d.ode_error;
            kappa[idx] = d.kappa_defect;
            dets[idx] = d.det_defect;
        }
    });

    // Centers are refined once, globally, and their pixels painted black:
    // a per-pixel refinement would make the black dots hostage to
    // threshold jitter at the symmetry axes.
    const auto centers = refine_and_collect(family, cfg, grid_seeds(cfg, residual));
    const double pw = cfg.width / n;
    const double ph = cfg.height / n;
    const double left = cfg.center.real() - 0.5 * cfg.width;
    const double top = cfg.center.imag() + 0.5 * cfg.height;
    for (const CenterRecord& rec : centers) {
        const double snap = 1e-9 * std::max(1.0, std::abs(rec.c));
        const int col0 = static_cast<int>(std::floor((rec.c.real() - left) / pw));
        const int row0 = static_cast<int>(std::floor((top - rec.c.imag()) / ph));
        for (int row = row0 - 1; row <= row0 + 1; ++row)
            for (int col = col0 - 1; col <= col0 + 1; ++col) {
                if (row < 0 || row >= n || col < 0 || col >= n) continue;
                const Complex px = pixel_coordinate(cfg, row, col);
                if (std::abs(px.real() - rec.c.real()) <= 0.5 * pw + snap &&
                    std::abs(px.imag() - rec.c.imag()) <= 0.5 * ph + snap)
                    out.classes[static_cast<std::size_t>(row) *
                                    static_cast<std::size_t>(n) +
                                static_cast<std::size_t>(col)] =
                        PixelClass::CenterBlack;
            }
    }

    double sum = 0.0;
    for (std::size_t i = 0; i < ode_err.size(); ++i) {
        sum += ode_err[i];
        out.stats.max_kappa_defect = std::max(out.stats.max_kappa_defect, kappa[i]);
        out.stats.max_det_defect = std::max(out.stats.max_det_defect, dets[i]);
        ++out.stats.counts[static_cast<int>(out.classes[i])];
    }
    out.stats.mean_ode_error = sum / static_cast<double>(ode_err.size());
    out.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return out;
}

namespace {

double angle_difference(double a, double b) {
    double d = std::fmod(a - b, 2.0 * std::numbers::pi);
    if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
    return std::abs(d);
}

/// Direction in the c-plane of the grafting ray of slope p/q: the ray
/// follows minus the squared conjugate of the flat geodesic direction
/// q + ip, so arg = pi - 2 arg(q + ip).  (Checked against the symmetry
/// axes: 1/0 grafts along +Re, 0/1 along -Re, +-1/1 along +-Im.)
double ray_direction(const Slope& s) {
    return std::numbers::pi -
           2.0 * std::atan2(static_cast<double>(s.p),
                            static_cast<double>(s.q));
}

/// Advisory (slope, n) labels: centers cluster into rays from c = 0, the
/// ray is matched to the small-height slope with the nearest grafting-ray
/// direction, and n counts outward.
void attribute_centers(std::vector<CenterRecord>& centers) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < centers.size(); ++i)
        if (std::abs(centers[i].c) > 1e-6) order.push_back(i);
    if (order.empty()) return;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::arg(centers[a].c) < std::arg(centers[b].c);
    });
    std::vector<std::vector<std::size_t>> rays;
    constexpr double kAngleTol = 0.12;
    for (std::size_t i : order) {
        const double ang = std::arg(centers[i].c);
        if (!rays.empty() &&
            angle_difference(ang, std::arg(centers[rays.back().back()].c)) <
                kAngleTol) {
            rays.back().push_back(i);
            continue;
        }
        rays.push_back({i});
    }
    if (rays.size() > 1 &&
        angle_difference(std::arg(centers[rays.front().front()].c),
                         std::arg(centers[rays.back().back()].c)) <
            kAngleTol) {
        rays.front().insert(rays.front().end(), rays.back().begin(),
                            rays.back().end());
        rays.pop_back();
    }
    for (auto& ray : rays) {
        std::sort(ray.begin(), ray.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(centers[a].c) < std::abs(centers[b].c);
        });
        const double theta = std::arg(centers[ray.back()].c);
        Slope grafted{0, 1};
        double best = 1e300;
        for (const WeightedCurve& wc : enumerate_weighted_curves(4, 1)) {
            const double d = angle_difference(theta, ray_direction(wc.slope));
            if (d < best) {
                best = d;
                grafted = wc.slope;
            }
        }
        if (best > 0.35) continue;  // off-catalog ray stays unlabeled
        int n = 1;
        for (std::size_t i : ray) centers[i].label = {grafted, n++};
    }
}

}  // namespace

std::vector<CenterRecord> find_centers(const QcFamily& family,
                                       const RasterConfig& cfg) {
    if (cfg.resolution < 2)
        throw std::invalid_argument("find_centers: resolution must be >= 2");
    const int n = cfg.resolution;
    std::vector<double> residual(static_cast<std::size_t>(n) * n, 0.0);
    parallel_rows(n, worker_count(cfg.workers), [&](int row) {
        for (int col = 0; col < n; ++col) {
            const Complex c = pixel_coordinate(cfg, row, col);
            const CharacterTriple t =
                holonomy(family, SlicePoint{c}, cfg.holonomy).character;
            residual[static_cast<std::size_t>(row) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(col)] = relative_im_residual(t);
        }
    });
    std::vector<CenterRecord> merged =
        refine_and_collect(family, cfg, grid_seeds(cfg, residual));
    attribute_centers(merged);
    return merged;
}

std::vector<std::pair<int, double>> center_length_series(
    Slope slope, const std::vector<CenterRecord>& centers) {
    std::vector<const CenterRecord*> ray;
    for (const auto& rec : centers)
        if (rec.label && rec.label->first == slope) ray.push_back(&rec);
    if (ray.size() < 2)
        throw InsufficientCentersError(
            "center_length_series: need at least 2 centers on the slope ray");
    std::sort(ray.begin(), ray.end(),
              [](const CenterRecord* a, const CenterRecord* b) {
                  return std::abs(a->c) < std::abs(b->c);
              });
    std::vector<std::pair<int, double>> series;
    for (const CenterRecord* rec : ray) {
        const Complex tr = simple_trace(slope, rec->character);
        series.emplace_back(rec->label->second,
                            2.0 * std::acosh(std::abs(tr.real()) / 2.0));
    }
    return series;
}

const char* to_string(PixelClass cls) {
    switch (cls) {
        case PixelClass::QfGray: return "qf-gray";
        case PixelClass::CenterBlack: return "center-black";
        case PixelClass::OutsideWhite: return "outside-white";
        case PixelClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace berscan
