#include "berscan/holonomy.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace berscan {

namespace {

constexpr int kMaxOrder = 60;

struct StepSeries {
    // Columns of the local fundamental solution: (1,0) and (0,1) data.
    std::array<Complex, kMaxOrder + 1> a;
    std::array<Complex, kMaxOrder + 1> b;
    int order;
};

// Power-series coefficients of the two basis solutions of
// u'' = -(1/2) q u about the step start.
void build_series(std::span<const Complex> q, int order, StepSeries& s) {
    s.order = order;
    s.a[0] = 1.0;
    s.a[1] = 0.0;
    s.b[0] = 0.0;
    s.b[1] = 1.0;
    for (int k = 0; k + 2 <= order; ++k) {
        Complex ca{}, cb{};
        for (int j = 0; j <= k; ++j) {
            ca += q[static_cast<std::size_t>(j)] * s.a[static_cast<std::size_t>(k - j)];
            cb += q[static_cast<std::size_t>(j)] * s.b[static_cast<std::size_t>(k - j)];
        }
        const double denom = static_cast<double>((k + 2) * (k + 1));
        s.a[static_cast<std::size_t>(k + 2)] = -0.5 * ca / denom;
        s.b[static_cast<std::size_t>(k + 2)] = -0.5 * cb / denom;
    }
}

// Truncation-tail majorant at displacement size r, including the
// derivative rows (factor k/r on the k-th term).
double tail_estimate(const StepSeries& s, double r) {
    double est = 0.0;
    double rk = std::pow(r, s.order - 3);
    for (int k = s.order - 3; k <= s.order; ++k) {
        const double mag = std::abs(s.a[static_cast<std::size_t>(k)]) +
                           std::abs(s.b[static_cast<std::size_t>(k)]);
        est += mag * rk * (1.0 + static_cast<double>(k) / std::max(r, 1e-300));
        rk *= r;
    }
    return est;
}

Mat2c eval_step(const StepSeries& s, Complex w) {
    Complex u1{}, u2{}, d1{}, d2{};
    for (int k = s.order; k >= 1; --k) {
        u1 = u1 * w + s.a[static_cast<std::size_t>(k)];
        u2 = u2 * w + s.b[static_cast<std::size_t>(k)];
        d1 = d1 * w + static_cast<double>(k) * s.a[static_cast<std::size_t>(k)];
        d2 = d2 * w + static_cast<double>(k) * s.b[static_cast<std::size_t>(k)];
    }
    u1 = u1 * w + s.a[0];
    u2 = u2 * w + s.b[0];
    return Mat2c{u1, u2, d1, d2};
}

double mat_norm(const Mat2c& m) {
    return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c),
                     std::abs(m.d), 1.0});
}

}  // namespace

TransferResult integrate_transfer(const Potential& q, Complex z_from,
                                  Complex z_to, const TransferOptions& opts) {
    const int order = std::clamp(opts.order, 8, kMaxOrder);
    TransferResult out;
    out.transfer = Mat2c::identity();
    const double len = std::abs(z_to - z_from);
    if (len == 0.0) return out;
    const Complex dir = (z_to - z_from) / len;

    std::array<Complex, kMaxOrder> qc{};
    StepSeries series;
    double pos = 0.0;
    double rel_err = 0.0;
    Complex z = z_from;
    while (pos < len) {
        const double radius = q.analyticity_radius(z);
        if (radius < q.min_clearance())
            throw PathTooCloseError("integrate_transfer: path within eps_z of a pole");
        q.series(z, std::span<Complex>(qc.data(),
                                       static_cast<std::size_t>(order - 1)));
        build_series(std::span<const Complex>(qc.data(),
                                              static_cast<std::size_t>(order - 1)),
                     order, series);

        const double omega =
            std::sqrt(0.5 * std::abs(qc[0])) + 1e-300;
        double h = std::min({len - pos, opts.step_fraction * radius,
                             4.0 / omega});
        while (tail_estimate(series, h) > opts.tol && h > 1e-13) h *= 0.6;
        if (h < 1e-13)
            throw StepUnderflowError("integrate_transfer: step size underflow");
        if (out.steps > 2'000'000)
            throw StepUnderflowError("integrate_transfer: step count exceeded");

        const bool last = pos + h >= len - 1e-15;
        const Complex z_next = last ? z_to : z_from + dir * (pos + h);
        const Mat2c step = eval_step(series, z_next - z);
        out.transfer = step * out.transfer;
        rel_err += tail_estimate(series, std::abs(z_next - z)) / mat_norm(step);
        pos = last ? len : pos + h;
        z = z_next;
        ++out.steps;
    }
    out.error_estimate = rel_err * mat_norm(out.transfer);
    return out;
}

TransferResult integrate_transfer(const Potential& q,
                                  std::span<const Complex> polyline,
                                  const TransferOptions& opts) {
    TransferResult out;
    out.transfer = Mat2c::identity();
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        TransferResult seg =
            integrate_transfer(q, polyline[i], polyline[i + 1], opts);
        out.transfer = seg.transfer * out.transfer;
        out.error_estimate += seg.error_estimate;
        out.steps += seg.steps;
    }
    return out;
}

namespace {

// Straight segment with rectilinear detours around any lattice point that
// comes within 2 eps_z.  Detours pass on the side away from the point
// (left on ties), and are deterministic.
void route_segment(const WeierstrassLattice& lat, Complex from, Complex to,
                   std::vector<Complex>& out) {
    const double clearance = 2.0 * lat.eps_z();
    const double len = std::abs(to - from);
    if (len == 0.0) return;
    const Complex u = (to - from) / len;
    const Complex n{-u.imag(), u.real()};  // left normal

    struct Hit {
        double t;
        double offset;
    };
    std::vector<Hit> hits;
    // Lattice points near the segment: scan the integer boxes the segment
    // crosses (lattice coordinates a + b*tau).
    const Complex tau = lat.spec().tau;
    const auto to_ab = [&](Complex z) {
        const double b = z.imag() / tau.imag();
        const double a = z.real() - b * tau.real();
        return std::pair<double, double>(a, b);
    };
    const auto [a0, b0] = to_ab(from);
    const auto [a1, b1] = to_ab(to);
    const int alo = static_cast<int>(std::floor(std::min(a0, a1))) - 1;
    const int ahi = static_cast<int>(std::ceil(std::max(a0, a1))) + 1;
    const int blo = static_cast<int>(std::floor(std::min(b0, b1))) - 1;
    const int bhi = static_cast<int>(std::ceil(std::max(b0, b1))) + 1;
    for (int bb = blo; bb <= bhi; ++bb) {
        for (int aa = alo; aa <= ahi; ++aa) {
            const Complex p = Complex(aa, 0.0) + Complex(bb, 0.0) * tau;
            const Complex rel = p - from;
            const double t = rel.real() * u.real() + rel.imag() * u.imag();
            if (t <= clearance || t >= len - clearance) continue;
            const double off = rel.real() * n.real() + rel.imag() * n.imag();
            if (std::abs(off) < clearance) hits.push_back({t, off});
        }
    }
    std::sort(hits.begin(), hits.end(),
              [](const Hit& x, const Hit& y) { return x.t < y.t; });

    const double r = 1.5 * clearance;
    for (const Hit& hit : hits) {
        const double side = hit.offset > 0.0 ? -1.0 : 1.0;  // away from point
        const Complex foot = from + u * hit.t;
        out.push_back(foot - u * r);
        out.push_back(foot - u * r + side * r * n);
        out.push_back(foot + u * r + side * r * n);
        out.push_back(foot + u * r);
    }
    out.push_back(to);
}

}  // namespace

LoopPath make_loop_path(const WeierstrassLattice& lat, PathTag tag,
                        Complex basepoint) {
    const Complex tau = lat.spec().tau;
    std::vector<Complex> corners;
    corners.push_back(basepoint);
    switch (tag) {
        case PathTag::Alpha:
            corners.push_back(basepoint + 1.0);
            break;
        case PathTag::Beta:
            corners.push_back(basepoint + tau);
            break;
        case PathTag::Commutator:
            // Closed square enclosing one lattice point; its transfer is
            // the puncture monodromy.
            corners.push_back(basepoint + 1.0);
            corners.push_back(basepoint + 1.0 + tau);
            corners.push_back(basepoint + tau);
            corners.push_back(basepoint);
            break;
    }
    LoopPath path;
    path.basepoint = basepoint;
    path.tag = tag;
    path.vertices.push_back(basepoint);
    for (std::size_t i = 0; i + 1 < corners.size(); ++i)
        route_segment(lat, corners[i], corners[i + 1], path.vertices);
    return path;
}

HolonomyResult holonomy(const QcFamily& family, SlicePoint p,
                        const HolonomyOptions& opts) {
    const QcPotential pot(family, p);
    const LoopPath alpha =
        make_loop_path(family.lattice(), PathTag::Alpha, opts.basepoint);
    const LoopPath beta =
        make_loop_path(family.lattice(), PathTag::Beta, opts.basepoint);
    const TransferResult ra = integrate_transfer(pot, alpha.vertices, opts.ode);
    const TransferResult rb = integrate_transfer(pot, beta.vertices, opts.ode);
    HolonomyResult out;
    out.m_alpha = ra.transfer;
    out.m_beta = rb.transfer;
    out.character = CharacterTriple{ra.transfer.trace(), rb.transfer.trace(),
                                    (ra.transfer * rb.transfer).trace()};
    out.error_estimate =
        ra.error_estimate * (1.0 + mat_norm(rb.transfer)) +
        rb.error_estimate * (1.0 + mat_norm(ra.transfer));
    return out;
}

double cr_residual(const QcFamily& family, SlicePoint p, double h,
                   const HolonomyOptions& opts) {
    if (!(h >= 1e-6 && h <= 1e-2))
        throw std::invalid_argument("cr_residual: h must lie in [1e-6, 1e-2]");
    const auto traces = [&](Complex c) {
        return holonomy(family, SlicePoint{c}, opts).character;
    };
    const Complex ih{0.0, h};
    const CharacterTriple tp = traces(p.c + h);
    const CharacterTriple tm = traces(p.c - h);
    const CharacterTriple tip = traces(p.c + ih);
    const CharacterTriple tim = traces(p.c - ih);
    const auto defect = [&](Complex fp, Complex fm, Complex fip, Complex fim) {
        const Complex dre = (fp - fm) / (2.0 * h);
        const Complex dim = (fip - fim) / (2.0 * ih);
        return std::abs(dre - dim);
    };
    return std::max({defect(tp.x, tm.x, tip.x, tim.x),
                     defect(tp.y, tm.y, tip.y, tim.y),
                     defect(tp.z, tm.z, tip.z, tim.z)});
}

}  // namespace berscan
