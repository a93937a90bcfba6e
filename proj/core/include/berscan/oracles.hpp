#pragma once

#include <string>
#include <utility>

#include "berscan/char_variety.hpp"
#include "berscan/discreteness.hpp"
#include "berscan/mat2.hpp"

namespace berscan::oracles {

/// Independent reference routes used by the verification suites and the
/// test binaries.  Nothing here shares code with the implementation paths
/// it cross-checks: g2 comes from the arithmetic-geometric mean instead of
/// Eisenstein series, simple-curve traces from explicit matrix words
/// instead of Farey flips.

/// Arithmetic-geometric mean.
double agm(double a, double b);

/// Lemniscate constant pi / agm(1, sqrt 2).
double lemniscate_constant();

/// g2 of the square lattice Z + iZ via 4 * (lemniscate constant)^4.
double lemniscate_g2();

/// Primitive word of the slope over {A, B, b = B^{-1}}: Stern-Brocot
/// concatenation with word(0/1) = "A", word(1/0) = "B"; negative slopes
/// replace B by b.
std::string slope_word(Slope s);

/// SL2 pair realizing a trace triple:
///   A = [[x, 1], [-1, 0]],  B = [[0, zeta], [-1/zeta, y]]
/// with zeta^2 + z*zeta + 1 = 0, so tr AB = z for any complex triple.
std::pair<Mat2c, Mat2c> fricke_matrices(const CharacterTriple& t);

/// Trace of the slope's word evaluated in explicit matrices.
Complex word_trace(Slope s, const Mat2c& a, const Mat2c& b);

}  // namespace berscan::oracles
