#pragma once

#include <span>
#include <vector>

#include "berscan/mat2.hpp"

namespace berscan {

/// The 2^n - 1 increasing-index words x_{i1} x_{i2} ... x_{ik},
/// 1 <= i1 < i2 < ... < ik <= n, ordered by length and then
/// lexicographically.  Indices are 1-based.
struct WordList {
    int n = 0;
    std::vector<std::vector<int>> words;
};

/// Builds the word list for n generators.  Guarded at n <= 16; beyond that
/// the list is astronomically large and certainly a caller bug.
WordList word_list(int n);

/// Trace of the product rho(w) for every word, in word-list order.
std::vector<Complex> evaluate_character(std::span<const Mat2c> mats,
                                        const WordList& wl);

/// A point of the rank-2 character variety in trace coordinates:
/// (x, y, z) = (tr rho(A), tr rho(B), tr rho(AB)).
struct CharacterTriple {
    Complex x{}, y{}, z{};
};

/// x^2 + y^2 + z^2 - xyz - 2: the trace of the commutator of any pair of
/// SL2 matrices with these traces (Fricke identity).
Complex commutator_trace(const CharacterTriple& t);

/// Fricke: tr(AB^{-1}) = xy - z.
Complex fourth_trace(const CharacterTriple& t);

enum class RealPointTag {
    FuchsianTeich,   // real, relative, all traces > 2
    Sl2rNonTeich,    // real and relative but neither of the above two boxes
    Su2,             // real, relative, all traces in [-2, 2]
    NotReal,
    NotRelative,
};

struct RealPointClass {
    RealPointTag tag;
    double realness_residual;   // max |Im| over the three traces
    double relative_residual;   // |kappa + 2|
    double tolerance;
};

/// Bass-Morgan-Shalen style sorting of a trace triple: a real character
/// comes from SL2(R) or SU(2); among the relative ones (kappa = -2) the
/// all-greater-than-2 sheet is the Teichmueller component.
RealPointClass classify_real_point(const CharacterTriple& t,
                                   double tol = 1e-6);

const char* to_string(RealPointTag tag);

}  // namespace berscan
