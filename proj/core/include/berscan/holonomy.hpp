#pragma once

#include <span>
#include <vector>

#include "berscan/char_variety.hpp"
#include "berscan/elliptic.hpp"
#include "berscan/mat2.hpp"

namespace berscan {

/// Local data the transfer integrator needs from a potential q:
/// Taylor coefficients about a point and the distance to the nearest
/// singularity (the series radius).
class Potential {
  public:
    virtual ~Potential() = default;
    virtual void series(Complex z0, std::span<Complex> coeffs) const = 0;
    virtual double analyticity_radius(Complex z0) const = 0;
    virtual double min_clearance() const { return 0.0; }
};

/// q_c = theta * wp + c at a fixed slice point.
class QcPotential final : public Potential {
  public:
    QcPotential(const QcFamily& family, SlicePoint p)
        : family_(&family), p_(p) {}
    void series(Complex z0, std::span<Complex> coeffs) const override {
        family_->q_series(p_, z0, coeffs);
    }
    double analyticity_radius(Complex z0) const override {
        return family_->lattice().pole_distance(z0);
    }
    double min_clearance() const override {
        return family_->lattice().eps_z();
    }

  private:
    const QcFamily* family_;
    SlicePoint p_;
};

/// Constant q, entire in z.  Closed-form oracle cases (q = 0, q = 2k^2)
/// go through the same stepper as production code.
class ConstantPotential final : public Potential {
  public:
    explicit ConstantPotential(Complex q0) : q0_(q0) {}
    void series(Complex, std::span<Complex> coeffs) const override {
        for (auto& c : coeffs) c = Complex{};
        if (!coeffs.empty()) coeffs[0] = q0_;
    }
    double analyticity_radius(Complex) const override { return 1e300; }

  private:
    Complex q0_;
};

struct TransferOptions {
    double tol = 1e-12;       // per-step relative truncation target
    int order = 30;           // Taylor order (<= 60)
    double step_fraction = 0.35;  // of the local analyticity radius
};

struct TransferResult {
    Mat2c transfer;
    double error_estimate = 0.0;  // accumulated truncation tail, trace units
    long steps = 0;
};

/// Transfer matrix of u'' + (1/2) q u = 0 along one straight segment:
/// (u, u') at z_to = T * (u, u') at z_from.  Adaptive Taylor continuation;
/// concatenation of segments multiplies on the left.
TransferResult integrate_transfer(const Potential& q, Complex z_from,
                                  Complex z_to,
                                  const TransferOptions& opts = {});

/// Same along a polyline.
TransferResult integrate_transfer(const Potential& q,
                                  std::span<const Complex> polyline,
                                  const TransferOptions& opts = {});

enum class PathTag { Alpha, Beta, Commutator };

/// Polyline realizing a deck translation of the punctured torus: alpha is
/// z -> z + 1, beta is z -> z + tau, commutator the boundary square.
/// Vertices keep clearance >= 2 eps_z from the lattice via rectilinear
/// detours.
struct LoopPath {
    Complex basepoint;
    std::vector<Complex> vertices;
    PathTag tag;
};

LoopPath make_loop_path(const WeierstrassLattice& lat, PathTag tag,
                        Complex basepoint = Complex{0.5, 0.5});

struct HolonomyOptions {
    Complex basepoint{0.5, 0.5};
    TransferOptions ode{};
};

/// Monodromy of the slice point: transfer along alpha and beta loops from
/// the basepoint (double periodicity of q_c makes the translated-segment
/// transfer the holonomy itself), plus the trace character.
/// The transfer matrices have unit determinant up to truncation error
/// (Wronskian constancy), so this is already a canonical SL2 lift.
struct HolonomyResult {
    Mat2c m_alpha;
    Mat2c m_beta;
    CharacterTriple character;
    double error_estimate = 0.0;
};

HolonomyResult holonomy(const QcFamily& family, SlicePoint p,
                        const HolonomyOptions& opts = {});

/// Finite-difference Cauchy-Riemann defect of c -> (x, y, z) at p.c:
/// max over the three traces of |d/dRe - d/d(i Im)| with central
/// differences of step h.  h must lie in [1e-6, 1e-2].
double cr_residual(const QcFamily& family, SlicePoint p, double h,
                   const HolonomyOptions& opts = {});

/// Generic CR defect helper (used with test functions as well).
template <typename F>
double cauchy_riemann_defect(F&& f, Complex c, double h) {
    const Complex ih{0.0, h};
    const Complex dre = (f(c + h) - f(c - h)) / (2.0 * h);
    const Complex dim = (f(c + ih) - f(c - ih)) / (2.0 * ih);
    return std::abs(dre - dim);
}

}  // namespace berscan
