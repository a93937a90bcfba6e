#include "berscan/char_variety.hpp"

#include <algorithm>
#include <cmath>

namespace berscan {

WordList word_list(int n) {
    if (n < 1 || n > 16)
        throw TooManyGeneratorsError(
            "word_list: generator count must be in [1, 16]");
    WordList wl;
    wl.n = n;
    wl.words.reserve((std::size_t{1} << n) - 1);
    for (int k = 1; k <= n; ++k) {
        // Subsets of size k in lexicographic order.
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
        while (true) {
            wl.words.push_back(idx);
            int i = k - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + 1 + i)
                --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<std::size_t>(j)] =
                    idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return wl;
}

std::vector<Complex> evaluate_character(std::span<const Mat2c> mats,
                                        const WordList& wl) {
    if (static_cast<int>(mats.size()) != wl.n)
        throw DimensionMismatchError(
            "evaluate_character: matrix count does not match word list");
    std::vector<Complex> traces;
    traces.reserve(wl.words.size());
    for (const auto& word : wl.words) {
        Mat2c prod = Mat2c::identity();
        for (int i : word) prod = prod * mats[static_cast<std::size_t>(i - 1)];
        traces.push_back(prod.trace());
    }
    return traces;
}

Complex commutator_trace(const CharacterTriple& t) {
    return t.x * t.x + t.y * t.y + t.z * t.z - t.x * t.y * t.z - 2.0;
}

Complex fourth_trace(const CharacterTriple& t) { return t.x * t.y - t.z; }

RealPointClass classify_real_point(const CharacterTriple& t, double tol) {
    const double im = std::max(
        {std::abs(t.x.imag()), std::abs(t.y.imag()), std::abs(t.z.imag())});
    const double rel = std::abs(commutator_trace(t) + 2.0);
    if (im > tol) return {RealPointTag::NotReal, im, rel, tol};
    if (rel > tol) return {RealPointTag::NotRelative, im, rel, tol};
    const double x = t.x.real(), y = t.y.real(), z = t.z.real();
    if (x > 2.0 && y > 2.0 && z > 2.0)
        return {RealPointTag::FuchsianTeich, im, rel, tol};
    const auto in_box = [](double v) { return v >= -2.0 && v <= 2.0; };
    if (in_box(x) && in_box(y) && in_box(z))
        return {RealPointTag::Su2, im, rel, tol};
    return {RealPointTag::Sl2rNonTeich, im, rel, tol};
}

const char* to_string(RealPointTag tag) {
    switch (tag) {
        case RealPointTag::FuchsianTeich: return "fuchsian-teich";
        case RealPointTag::Sl2rNonTeich: return "sl2r-nonteich";
        case RealPointTag::Su2: return "su2";
        case RealPointTag::NotReal: return "not-real";
        case RealPointTag::NotRelative: return "not-relative";
    }
    return "?";
}

}  // namespace berscan
