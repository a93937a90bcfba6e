#include "berscan/mat2.hpp"

#include <algorithm>
#include <cmath>

namespace berscan {

double max_entry_distance(const Mat2c& m1, const Mat2c& m2) {
    return std::max({std::abs(m1.a - m2.a), std::abs(m1.b - m2.b),
                     std::abs(m1.c - m2.c), std::abs(m1.d - m2.d)});
}

Mat2c unit_normalized(const Mat2c& m, const Mat2c* hint) {
    const Complex root = std::sqrt(m.det());
    Mat2c plus{m.a / root, m.b / root, m.c / root, m.d / root};
    if (hint == nullptr) return plus;
    Mat2c minus = -plus;
    return max_entry_distance(plus, *hint) <= max_entry_distance(minus, *hint)
               ? plus
               : minus;
}

IsometryClass classify(const Mat2c& m, double tol) {
    const Complex t = m.trace();
    const double margin = std::min(std::abs(t - 2.0), std::abs(t + 2.0));
    if (margin <= tol) {
        // Distinguish +-identity from a genuine parabolic by the
        // off-diagonal size.
        const Mat2c id = Mat2c::identity();
        const double dev =
            std::min(max_entry_distance(m, id), max_entry_distance(m, -id));
        if (dev <= tol) return {IsometryTag::IdentityLike, tol, margin};
        return {IsometryTag::Parabolic, tol, margin};
    }
    if (std::abs(t.imag()) <= tol && std::abs(t.real()) < 2.0)
        return {IsometryTag::Elliptic, tol, margin};
    return {IsometryTag::Loxodromic, tol, margin};
}

double translation_length(const Mat2c& m, double real_tol) {
    const Complex t = m.trace();
    const double scale = std::max(1.0, std::abs(t));
    if (std::abs(t.imag()) > real_tol * scale)
        throw NotHyperbolicError("translation_length: trace is not real");
    const double half = std::abs(t.real()) / 2.0;
    if (half <= 1.0)
        throw NotHyperbolicError("translation_length: |trace| <= 2");
    return 2.0 * std::acosh(half);
}

const char* to_string(IsometryTag tag) {
    switch (tag) {
        case IsometryTag::Elliptic: return "elliptic";
        case IsometryTag::Parabolic: return "parabolic";
        case IsometryTag::Loxodromic: return "loxodromic";
        case IsometryTag::IdentityLike: return "identity-like";
    }
    return "?";
}

}  // namespace berscan
