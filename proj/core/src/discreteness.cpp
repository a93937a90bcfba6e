#include "berscan/discreteness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "berscan/errors.hpp"

namespace berscan {

Slope Slope::make(long long p, long long q) {
    if (p == 0 && q == 0)
        throw std::invalid_argument("Slope: 0/0 is not a slope");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (q == 0) return Slope{1, 0};
    const long long g = std::gcd(p < 0 ? -p : p, q);
    return Slope{p / g, q / g};
}

std::string Slope::str() const {
    return std::to_string(p) + "/" + std::to_string(q);
}

CharacterTriple trace_flip(const CharacterTriple& t) {
    return CharacterTriple{t.x, t.y, t.x * t.y - t.z};
}

FareyNode base_superbase(const CharacterTriple& t) {
    return FareyNode{{Slope{0, 1}, Slope{1, 0}, Slope{1, 1}}, t, 2};
}

namespace {

// Third vertex of the other triangle across the edge (a, b): the Farey
// mediant "away from" c.
Slope slope_flip(const Slope& a, const Slope& b, const Slope& c) {
    const Slope plus = Slope::make(a.p + b.p, a.q + b.q);
    if (!(plus == c)) return plus;
    return Slope::make(a.p - b.p, a.q - b.q);
}

}  // namespace

Complex simple_trace(Slope s, const CharacterTriple& base, int depth_guard) {
    if (s.is_infinity()) return base.y;
    if (s.p == 0) return base.x;
    if (s.p < 0) {
        // A -> A, B -> B^{-1} negates slopes and sends z to xy - z.
        return simple_trace(Slope::make(-s.p, s.q), trace_flip(base),
                            depth_guard);
    }
    // Stern-Brocot descent between L = 0/1 (trace x) and R = 1/0 (trace y)
    // with mediant M carrying tL*tM' arithmetic via the flip identity.
    long long pl = 0, ql = 1, pr = 1, qr = 0;
    Complex tl = base.x, tr = base.y;
    Complex tm = base.z;
    for (int depth = 0; depth <= depth_guard; ++depth) {
        const long long pm = pl + pr, qm = ql + qr;
        if (s.p == pm && s.q == qm) return tm;
        // target < mediant  <=>  p*qm < pm*q
        if (s.p * qm < pm * s.q) {
            const Complex t_new = tl * tm - tr;
            pr = pm;
            qr = qm;
            tr = tm;
            tm = t_new;
        } else {
            const Complex t_new = tm * tr - tl;
            pl = pm;
            ql = qm;
            tl = tm;
            tm = t_new;
        }
    }
    throw DepthExceededError("simple_trace: Farey distance exceeds guard");
}

namespace {

struct BqSearch {
    explicit BqSearch(const BqOptions& o) : opts(o) {}

    const BqOptions& opts;
    long nodes = 0;
    int deepest = 0;
    bool exhausted = false;
    std::optional<Slope> witness;

    bool bad(Complex t) const {
        if (std::abs(t.imag()) <= opts.imag_fatten &&
            std::abs(t.real()) <= 2.0)
            return true;
        return opts.modulus_witness && std::abs(t) <= 2.0;
    }

    static double mod(Complex t) { return std::abs(t); }

    // Certified escaping cone over the directed edge (a, b) -> c.  For
    // some ordering (u, v) of the edge: |u| >= 2, |v| >= 2.5,
    // |c| >= max(|v|, growth_bound) and |u| <= 1.5 |c|.  Then the fan
    // around u grows monotonically (|t+| >= |u||t| - |t-| >= |t|), every
    // fan trace stays >= |v|, and each side flip u' = t_k t_{k+1} - u has
    // |u'| >= 2.5 |t_{k+1}| - |u| >= max, which re-enters the same
    // certificate with both endpoints >= 2.5.  The u-threshold at 2 (not
    // 2.5) matters: at grafting centers the collapsing dual curve has
    // trace barely above 2 and every triangle keeps it as a vertex.
    bool escapes(double ma, double mb, double mc) const {
        if (mc < opts.growth_bound) return false;
        const auto ordered = [&](double mu, double mv) {
            return mu >= 2.0 && mv >= 2.5 && mc >= mv && mu <= 1.5 * mc;
        };
        return ordered(ma, mb) || ordered(mb, ma);
    }

    // Directed edge (va, vb) -> vnew; returns true while no witness found.
    bool explore(const Slope& sa, Complex ta, const Slope& sb, Complex tb,
                 const Slope& sn, Complex tn, int depth) {
        deepest = std::max(deepest, depth);
        if (++nodes > opts.max_nodes) {
            exhausted = true;
            return true;
        }
        if (bad(tn)) {
            witness = sn;
            return false;
        }
        const double ma = mod(ta), mb = mod(tb), mn = mod(tn);
        if (escapes(ma, mb, mn)) return true;
        if (depth >= opts.max_depth) {
            exhausted = true;
            return true;
        }
        // Children: flip vb across (va, vnew), then va across (vb, vnew).
        {
            const Slope child = slope_flip(sa, sn, sb);
            const Complex tc = ta * tn - tb;
            if (!explore(sa, ta, sn, tn, child, tc, depth + 1)) return false;
        }
        {
            const Slope child = slope_flip(sb, sn, sa);
            const Complex tc = tb * tn - ta;
            if (!explore(sb, tb, sn, tn, child, tc, depth + 1)) return false;
        }
        return true;
    }
};

}  // namespace

BqVerdict bq_test(const CharacterTriple& t, const BqOptions& opts) {
    if (std::abs(commutator_trace(t) + 2.0) > opts.relative_tol)
        throw NotRelativeError("bq_test: character is not relative");

    BqSearch search(opts);
    const FareyNode root = base_superbase(t);
    BqVerdict verdict;
    verdict.tag = BqTag::Inconclusive;

    // Root vertex checks, in slope order.
    const std::array<Complex, 3> rt{t.x, t.y, t.z};
    for (int i = 0; i < 3; ++i) {
        if (search.bad(rt[static_cast<std::size_t>(i)])) {
            verdict.tag = BqTag::NotDiscrete;
            verdict.witness = root.slopes[static_cast<std::size_t>(i)];
            verdict.depth = 0;
            return verdict;
        }
    }

    // Expand across the three root edges (ij) -> flipped third vertex.
    constexpr int kEdges[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
    bool ok = true;
    for (const auto& e : kEdges) {
        const Slope& sa = root.slopes[static_cast<std::size_t>(e[0])];
        const Slope& sb = root.slopes[static_cast<std::size_t>(e[1])];
        const Slope& sc = root.slopes[static_cast<std::size_t>(e[2])];
        const Complex ta = rt[static_cast<std::size_t>(e[0])];
        const Complex tb = rt[static_cast<std::size_t>(e[1])];
        const Complex tc = rt[static_cast<std::size_t>(e[2])];
        const Slope child = slope_flip(sa, sb, sc);
        const Complex tchild = ta * tb - tc;
        if (!search.explore(sa, ta, sb, tb, child, tchild, 1)) {
            ok = false;
            break;
        }
    }

    verdict.depth = search.deepest;
    if (!ok) {
        verdict.tag = BqTag::NotDiscrete;
        verdict.witness = search.witness;
        return verdict;
    }
    if (search.exhausted) {
        verdict.tag = BqTag::Inconclusive;
        return verdict;
    }
    const double im = std::max(
        {std::abs(t.x.imag()), std::abs(t.y.imag()), std::abs(t.z.imag())});
    const double scale = std::max(
        {1.0, std::abs(t.x), std::abs(t.y), std::abs(t.z)});
    verdict.tag = (im <= opts.real_tol * scale) ? BqTag::Fuchsian
                                                : BqTag::Quasifuchsian;
    return verdict;
}

std::vector<WeightedCurve> enumerate_weighted_curves(int max_height,
                                                     int max_multiple) {
    if (max_height < 1 || max_multiple < 1)
        throw std::invalid_argument(
            "enumerate_weighted_curves: bounds must be >= 1");
    std::vector<Slope> slopes;
    slopes.push_back(Slope::infinity());
    for (int q = 1; q <= max_height; ++q)
        for (int p = -max_height; p <= max_height; ++p) {
            if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
            slopes.push_back(Slope{p, q});
        }
    std::sort(slopes.begin(), slopes.end(), [](const Slope& a, const Slope& b) {
        const long long ha = std::max(a.p < 0 ? -a.p : a.p, a.q);
        const long long hb = std::max(b.p < 0 ? -b.p : b.p, b.q);
        if (ha != hb) return ha < hb;
        if (a.p != b.p) return a.p < b.p;
        return a.q < b.q;
    });
    std::vector<WeightedCurve> out;
    out.reserve(slopes.size() * static_cast<std::size_t>(max_multiple));
    for (int n = 1; n <= max_multiple; ++n)
        for (const Slope& s : slopes)
            out.push_back({s, n, 2.0 * std::numbers::pi * n});
    return out;
}

const char* to_string(BqTag tag) {
    switch (tag) {
        case BqTag::Quasifuchsian: return "quasifuchsian";
        case BqTag::Fuchsian: return "fuchsian";
        case BqTag::NotDiscrete: return "not-discrete";
        case BqTag::Inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace berscan
