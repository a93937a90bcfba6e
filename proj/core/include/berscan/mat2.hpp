#pragma once

#include <complex>

#include "berscan/errors.hpp"

namespace berscan {

using Complex = std::complex<double>;

/// 2x2 complex matrix, used throughout for SL2(C) holonomy and monodromy
/// elements.  Entries are stored directly; unit determinant is a contract
/// of the producing code, not enforced on construction (see
/// `unit_normalized`).
struct Mat2c {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Mat2c identity() { return Mat2c{}; }

    Complex det() const { return a * d - b * c; }
    Complex trace() const { return a + d; }

    /// Inverse via the adjugate, exact for unit-determinant input.
    Mat2c inverse() const {
        const Complex s = det();
        return Mat2c{d / s, -b / s, -c / s, a / s};
    }

    Mat2c operator*(const Mat2c& o) const {
        return Mat2c{a * o.a + b * o.c, a * o.b + b * o.d,
                     c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Mat2c operator-() const { return Mat2c{-a, -b, -c, -d}; }
};

inline Mat2c compose(const Mat2c& m1, const Mat2c& m2) { return m1 * m2; }

/// Max-norm distance between entries; handy in tests and sign picking.
double max_entry_distance(const Mat2c& m1, const Mat2c& m2);

/// Rescale to unit determinant by dividing by a square root of det.
/// The root is the one closest (entrywise) to `hint`, which keeps the
/// SL2 lift continuous along a computation path; with no hint the
/// principal root is taken.
Mat2c unit_normalized(const Mat2c& m, const Mat2c* hint = nullptr);

enum class IsometryTag { Elliptic, Parabolic, Loxodromic, IdentityLike };

/// Trace classification of a unit-determinant matrix.  `margin` is the
/// distance from the trace to the parabolic boundary {-2, +2}, so callers
/// can tighten the tolerance after the fact.
struct IsometryClass {
    IsometryTag tag;
    double tolerance;
    double margin;
};

IsometryClass classify(const Mat2c& m, double tol = 1e-8);

/// Hyperbolic translation length 2*arccosh(|t|/2) of a hyperbolic element
/// (real trace, |t| > 2).  Throws NotHyperbolicError otherwise.
double translation_length(const Mat2c& m, double real_tol = 1e-9);

const char* to_string(IsometryTag tag);

}  // namespace berscan
