#include "berscan/oracles.hpp"

#include <cmath>
#include <numbers>

namespace berscan::oracles {

double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
        const double m = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = m;
    }
    return 0.5 * (a + b);
}

double lemniscate_constant() {
    return std::numbers::pi / agm(1.0, std::sqrt(2.0));
}

double lemniscate_g2() {
    const double w = lemniscate_constant();
    return 4.0 * w * w * w * w;
}

std::string slope_word(Slope s) {
    if (s.is_infinity()) return "B";
    if (s.p == 0) return "A";
    const bool neg = s.p < 0;
    const long long p = neg ? -s.p : s.p;
    const long long q = s.q;
    long long pl = 0, ql = 1, pr = 1, qr = 0;
    std::string wl = "A", wr = "B";
    std::string wm;
    while (true) {
        const long long pm = pl + pr, qm = ql + qr;
        wm = wl + wr;
        if (pm == p && qm == q) break;
        if (p * qm < pm * q) {
            pr = pm;
            qr = qm;
            wr = wm;
        } else {
            pl = pm;
            ql = qm;
            wl = wm;
        }
    }
    if (neg)
        for (char& c : wm)
            if (c == 'B') c = 'b';
    return wm;
}

std::pair<Mat2c, Mat2c> fricke_matrices(const CharacterTriple& t) {
    const Complex disc = std::sqrt(t.z * t.z - 4.0);
    Complex zeta = (-t.z + disc) / 2.0;
    if (std::abs(zeta) < 0.5) zeta = (-t.z - disc) / 2.0;
    const Mat2c a{t.x, 1.0, -1.0, 0.0};
    const Mat2c b{0.0, zeta, -1.0 / zeta, t.y};
    return {a, b};
}

Complex word_trace(Slope s, const Mat2c& a, const Mat2c& b) {
    const std::string w = slope_word(s);
    const Mat2c binv = b.inverse();
    Mat2c prod = Mat2c::identity();
    for (const char c : w) {
        switch (c) {
            case 'A': prod = prod * a; break;
            case 'B': prod = prod * b; break;
            case 'b': prod = prod * binv; break;
            default: break;
        }
    }
    return prod.trace();
}

}  // namespace berscan::oracles
