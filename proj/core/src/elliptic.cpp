#include "berscan/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace berscan {

namespace {

constexpr double kPi = std::numbers::pi;

// Row sums sum_{m in Z} (m + w)^{-k} for k = 2, 4, 6 in cosecant closed
// form; w off the real integers.
Complex row_sum4(Complex w) {
    const Complex s = std::sin(kPi * w);
    const Complex s2 = 1.0 / (s * s);
    const double p4 = kPi * kPi * kPi * kPi;
    return p4 * (s2 * s2 - (2.0 / 3.0) * s2);
}

Complex row_sum6(Complex w) {
    const Complex s = std::sin(kPi * w);
    const Complex c = std::cos(kPi * w);
    const Complex c2 = 1.0 / (s * s);
    const Complex t = c / s;
    const double p6 = std::pow(kPi, 6);
    return (p6 / 15.0) *
           (2.0 * c2 * t * t * t * t + 11.0 * c2 * c2 * t * t + 2.0 * c2 * c2 * c2);
}

}  // namespace

Invariants eisenstein_shell_sum(Complex tau, Complex scale, int shells) {
    Complex s4{};
    Complex s6{};
    for (int k = 1; k <= shells; ++k) {
        Complex ring4{};
        Complex ring6{};
        // Boundary of the square shell max(|m|,|n|) = k.
        const auto add = [&](int m, int n) {
            const Complex w = scale * (Complex(m, 0.0) + Complex(n, 0.0) * tau);
            const Complex w2 = w * w;
            const Complex inv4 = 1.0 / (w2 * w2);
            ring4 += inv4;
            ring6 += inv4 / w2;
        };
        for (int m = -k; m <= k; ++m) {
            add(m, k);
            add(m, -k);
        }
        for (int n = -k + 1; n <= k - 1; ++n) {
            add(k, n);
            add(-k, n);
        }
        s4 += ring4;
        s6 += ring6;
    }
    // Shell k points satisfy |w| >= |scale| * h * k with h the nearest
    // first-shell point, so the weight-2j tail is bounded by
    // sum_{k>K} 8k (h k)^{-2j} <= 8 / ((2j-2) h^{2j} K^{2j-2}).
    const double hmin = std::min(
        {1.0, std::abs(tau), std::abs(1.0 + tau), std::abs(1.0 - tau)});
    const double h = std::abs(scale) * hmin;
    const double K = static_cast<double>(shells);
    Invariants inv;
    inv.g2 = 60.0 * s4;
    inv.g3 = 140.0 * s6;
    inv.g2_tail_bound = 60.0 * 4.0 / (std::pow(h, 4) * K * K);
    inv.g3_tail_bound = 140.0 * 2.0 / (std::pow(h, 6) * K * K * K * K);
    inv.cutoff_shells = shells;
    return inv;
}

Invariants eisenstein_invariants(const LatticeSpec& lat) {
    if (lat.cutoff_shells < 20)
        throw CutoffTooSmallError(
            "eisenstein_invariants: need at least 20 lattice shells");
    return eisenstein_shell_sum(lat.tau, Complex{1.0, 0.0}, lat.cutoff_shells);
}

WeierstrassLattice::WeierstrassLattice(const LatticeSpec& spec, double eps_z)
    : spec_(spec), eps_z_(eps_z) {
    if (!(spec.tau.imag() > 0.0))
        throw std::invalid_argument("WeierstrassLattice: Im(tau) must be > 0");

    const Complex ipitau = Complex(0.0, kPi) * spec.tau;
    q_ = std::exp(ipitau);

    // Enough theta terms that q^{(n+1/2)^2 - (n+1/2)} < 1e-20 even at the
    // edge of the fundamental domain, where sin((2n+1)v) ~ e^{(2n+1)|Im v|}.
    const double imt = spec.tau.imag();
    int nmax = static_cast<int>(std::sqrt(46.0 / (kPi * imt) + 0.25)) + 3;
    nmax = std::clamp(nmax, 4, 64);
    qpow_.resize(static_cast<std::size_t>(nmax));
    for (int n = 0; n < nmax; ++n) {
        const double e = (n + 0.5) * (n + 0.5);
        Complex term = std::exp(ipitau * e);
        if (n % 2 == 1) term = -term;  // (-1)^n folded into the table
        qpow_[static_cast<std::size_t>(n)] = term;
    }

    // theta1'(0) and theta1'''(0) for the Laurent normalization constant.
    Complex d1{};
    Complex d3{};
    for (std::size_t n = 0; n < qpow_.size(); ++n) {
        const double k = 2.0 * static_cast<double>(n) + 1.0;
        d1 += qpow_[n] * k;
        d3 += qpow_[n] * k * k * k;
    }
    d1 *= 2.0;
    d3 *= -2.0;
    laurent_const_ = kPi * kPi * d3 / (3.0 * d1);

    // Exact row resummation: n = 0 row gives 2*zeta(2j), the rest decay
    // like e^{-2 pi n Im tau}.
    const double p4 = std::pow(kPi, 4);
    const double p6 = std::pow(kPi, 6);
    Complex g4 = Complex(2.0 * p4 / 90.0, 0.0);
    Complex g6 = Complex(2.0 * p6 / 945.0, 0.0);
    for (int n = 1; n <= 40; ++n) {
        const Complex w = static_cast<double>(n) * spec.tau;
        const Complex r4 = 2.0 * row_sum4(w);
        const Complex r6 = 2.0 * row_sum6(w);
        g4 += r4;
        g6 += r6;
        if (std::abs(r4) < 1e-18 * std::abs(g4) &&
            std::abs(r6) < 1e-18 * std::max(std::abs(g6), 1.0))
            break;
    }
    g2_ = 60.0 * g4;
    g3_ = 140.0 * g6;
}

Complex WeierstrassLattice::reduce(Complex z) const {
    const double b = z.imag() / spec_.tau.imag();
    const double a = z.real() - b * spec_.tau.real();
    const double mn = std::round(a);
    const double nn = std::round(b);
    return z - mn - nn * spec_.tau;
}

double WeierstrassLattice::pole_distance(Complex z) const {
    const Complex zr = reduce(z);
    double best = std::abs(zr);
    for (int m = -1; m <= 1; ++m)
        for (int n = -1; n <= 1; ++n) {
            if (m == 0 && n == 0) continue;
            best = std::min(best,
                            std::abs(zr - Complex(m, 0.0) -
                                     Complex(n, 0.0) * spec_.tau));
        }
    return best;
}

WeierstrassLattice::Theta1 WeierstrassLattice::theta1(Complex v) const {
    // sin/cos of (2n+1)v built incrementally from e^{iv}.
    const Complex e1 = std::exp(Complex(0.0, 1.0) * v);
    const Complex e2 = e1 * e1;
    Complex p = e1;  // e^{i(2n+1)v}
    Complex t0{}, t1{}, t2{}, t3{};
    for (std::size_t n = 0; n < qpow_.size(); ++n) {
        const Complex ip = 1.0 / p;
        const Complex s = (p - ip) * Complex(0.0, -0.5);
        const Complex c = (p + ip) * 0.5;
        const double k = 2.0 * static_cast<double>(n) + 1.0;
        const Complex a = qpow_[n];
        t0 += a * s;
        t1 += a * k * c;
        t2 -= a * k * k * s;
        t3 -= a * k * k * k * c;
        p *= e2;
    }
    return {2.0 * t0, 2.0 * t1, 2.0 * t2, 2.0 * t3};
}

Complex WeierstrassLattice::wp(Complex z) const { return wp_pair(z).p; }

Complex WeierstrassLattice::wp_prime(Complex z) const {
    return wp_pair(z).p_prime;
}

WeierstrassLattice::Pair WeierstrassLattice::wp_pair(Complex z) const {
    const Complex zr = reduce(z);
    if (pole_distance(zr) < eps_z_)
        throw TooCloseToPoleError("wp: z within eps_z of a lattice point");
    const Complex v = kPi * zr;
    const Theta1 th = theta1(v);
    const Complex th0sq = th.t0 * th.t0;
    const Complex num = th.t2 * th.t0 - th.t1 * th.t1;
    Pair out;
    out.p = -kPi * kPi * num / th0sq + laurent_const_;
    const Complex num3 =
        th.t3 * th0sq - 3.0 * th.t2 * th.t1 * th.t0 + 2.0 * th.t1 * th.t1 * th.t1;
    out.p_prime = -kPi * kPi * kPi * num3 / (th0sq * th.t0);
    return out;
}

void WeierstrassLattice::wp_series(Complex z0, std::span<Complex> coeffs) const {
    const std::size_t n = coeffs.size();
    if (n == 0) return;
    const Pair pp = wp_pair(z0);
    coeffs[0] = pp.p;
    if (n > 1) coeffs[1] = pp.p_prime;
    if (n > 2) coeffs[2] = (6.0 * pp.p * pp.p - 0.5 * g2_) / 2.0;
    for (std::size_t k = 1; k + 2 < n; ++k) {
        Complex conv{};
        for (std::size_t i = 0; i <= k; ++i) conv += coeffs[i] * coeffs[k - i];
        coeffs[k + 2] = 6.0 * conv / static_cast<double>((k + 2) * (k + 1));
    }
}

void QcFamily::q_series(const SlicePoint& p, Complex z0,
                        std::span<Complex> coeffs) const {
    lattice_.wp_series(z0, coeffs);
    for (auto& c : coeffs) c *= basis_.theta;
    if (!coeffs.empty()) coeffs[0] += p.c;
}

}  // namespace berscan
