#pragma once

#include <complex>
#include <span>
#include <vector>

#include "berscan/errors.hpp"
#include "berscan/mat2.hpp"

namespace berscan {

/// Lattice Z + tau*Z.  `cutoff_shells` only controls the truncated
/// Eisenstein sums of `eisenstein_invariants`; the evaluation layer uses
/// exactly resummed series instead.
struct LatticeSpec {
    Complex tau{0.0, 1.0};
    int cutoff_shells = 200;
};

/// Weierstrass invariants with the truncation tail bounds of the shell sum
/// that produced them (zero for exactly resummed values).
struct Invariants {
    Complex g2{};
    Complex g3{};
    double g2_tail_bound = 0.0;
    double g3_tail_bound = 0.0;
    int cutoff_shells = 0;
};

/// Definitional truncated sums g2 = 60 sum' w^-4, g3 = 140 sum' w^-6 over
/// the nonzero points of scale*(Z + tau*Z) with max(|m|,|n|) <= shells.
/// Tail bounds from |m + n tau| >= shell * h with h the closest point of
/// the first shell.
Invariants eisenstein_shell_sum(Complex tau, Complex scale, int shells);

/// Spec'd operation: shell sum for `lat`, guarded at >= 20 shells.
Invariants eisenstein_invariants(const LatticeSpec& lat);

/// Weierstrass p-function layer for Z + tau*Z, built once and shared
/// read-only.  wp/wp_prime come from the theta-1 log-derivative form
///
///   wp(z)  = -pi^2 (th1'' th1 - th1'^2)/th1^2 + pi^2 th1'''(0)/(3 th1'(0))
///   wp'(z) = -pi^3 (th1''' th1^2 - 3 th1'' th1' th1 + 2 th1'^3)/th1^3
///
/// with all thetas at v = pi * z and the nome q = exp(i pi tau); g2 and g3
/// come from exact row resummation of the Eisenstein series (cosecant
/// closed forms per lattice row), converging like e^(-2 pi n Im tau).
class WeierstrassLattice {
  public:
    explicit WeierstrassLattice(const LatticeSpec& spec = {},
                                double eps_z = 1e-3);

    const LatticeSpec& spec() const { return spec_; }
    Complex g2() const { return g2_; }
    Complex g3() const { return g3_; }
    double eps_z() const { return eps_z_; }

    /// Distance from z to the nearest lattice point.
    double pole_distance(Complex z) const;

    /// Throws TooCloseToPoleError within eps_z of the lattice.
    Complex wp(Complex z) const;
    Complex wp_prime(Complex z) const;
    struct Pair {
        Complex p;
        Complex p_prime;
    };
    Pair wp_pair(Complex z) const;

    /// Taylor coefficients of wp about a regular point z0, generated from
    /// wp(z0), wp'(z0) by the algebraic recurrence behind wp'' = 6wp^2 - g2/2:
    ///   (k+2)(k+1) P_{k+2} = 6 sum_{i<=k} P_i P_{k-i} - (g2/2) [k=0].
    void wp_series(Complex z0, std::span<Complex> coeffs) const;

  private:
    struct Theta1 {
        Complex t0, t1, t2, t3;  // theta1 and d/dv derivatives at v
    };
    Theta1 theta1(Complex v) const;
    Complex reduce(Complex z) const;

    LatticeSpec spec_;
    double eps_z_;
    Complex q_;                    // nome exp(i pi tau)
    std::vector<Complex> qpow_;    // q^{(n+1/2)^2}, alternating sign folded in
    Complex laurent_const_;        // pi^2 th1'''(0) / (3 th1'(0))
    Complex g2_, g3_;
};

/// Coefficient of the double-pole term of the basis family.  theta = 1/2
/// makes the indicial exponents at the puncture equal, which is what forces
/// parabolic puncture monodromy in the u'' + (q/2) u = 0 convention; the
/// verify suite checks the resulting commutator trace is -2.
struct BasisDifferential {
    double theta = 0.5;
    /// Normalization this family is written in; the Schwarzian of the
    /// developing map u1/u2 equals q under it.
    const char* convention = "u'' + (q/2) u = 0";
};

/// Coordinate on the one-parameter family q_c = theta * wp + c.
struct SlicePoint {
    Complex c{};
};

/// The slice family q_c(w) = theta * wp(w) + c on a fixed lattice.
class QcFamily {
  public:
    explicit QcFamily(LatticeSpec spec = {}, BasisDifferential basis = {},
                      double eps_z = 1e-3)
        : lattice_(spec, eps_z), basis_(basis) {}

    const WeierstrassLattice& lattice() const { return lattice_; }
    const BasisDifferential& basis() const { return basis_; }

    /// q_c evaluated off the lattice (TooCloseToPoleError otherwise).
    Complex quad_diff_eval(const SlicePoint& p, Complex z) const {
        return basis_.theta * lattice_.wp(z) + p.c;
    }

    /// Taylor coefficients of q_c about z0 (theta * wp-series, + c at 0).
    void q_series(const SlicePoint& p, Complex z0,
                  std::span<Complex> coeffs) const;

  private:
    WeierstrassLattice lattice_;
    BasisDifferential basis_;
};

}  // namespace berscan
