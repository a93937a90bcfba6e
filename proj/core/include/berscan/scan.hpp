#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "berscan/discreteness.hpp"
#include "berscan/holonomy.hpp"

namespace berscan {

/// Window + tolerances for the raster and the center finder.  The default
/// window is centered on the Fuchsian point c = 0 and wide enough to
/// contain the first grafting centers on all four symmetry axes
/// (+-21.35 and +-41.01i).
struct RasterConfig {
    Complex center{0.0, 0.0};
    double width = 90.0;
    double height = 90.0;
    int resolution = 400;
    int workers = 0;  // 0: hardware concurrency
    BqOptions bq{};
    HolonomyOptions holonomy{};
    /// Relative imaginary-residual threshold that seeds center refinement.
    double seed_threshold = 0.05;
    /// Gauss-Newton knobs: central-difference step, damping by halving,
    /// convergence at residual < gn_tol * max(1, |trace|).
    double gn_fd_step = 1e-6;
    double gn_tol = 1e-10;
    int gn_max_iters = 50;
    /// Center merge radius and the height bound of the per-center length
    /// table.
    double merge_distance = 1e-6;
    int length_height = 2;
};

enum class PixelClass : std::uint8_t {
    QfGray = 0,
    CenterBlack = 1,
    OutsideWhite = 2,
    Inconclusive = 3,
};

struct PointClassification {
    PixelClass cls;
    CharacterTriple character;
    BqTag verdict;
    double im_residual;    // relative imaginary residual of the triple
    double kappa_defect;   // |kappa + 2|
    double det_defect;     // max |det - 1| over the two monodromies
    double ode_error;      // integrator error estimate
};

/// Complex coordinate of the pixel center (row-major, top-left origin).
Complex pixel_coordinate(const RasterConfig& cfg, int row, int col);

/// hol -> character -> bq_test; upgraded to CenterBlack when the
/// imaginary residual seeds a refinement that converges within half a
/// pixel and validates as a Fuchsian center.
PointClassification classify_point(const QcFamily& family, Complex c,
                                   const RasterConfig& cfg);

struct RasterStats {
    long counts[4] = {0, 0, 0, 0};
    double mean_ode_error = 0.0;
    double max_kappa_defect = 0.0;
    double max_det_defect = 0.0;
    double wall_seconds = 0.0;  // diagnostics only; never serialized
};

struct RasterResult {
    int resolution = 0;
    std::vector<PixelClass> classes;  // resolution * resolution, row-major
    RasterStats stats;

    std::vector<std::uint8_t> rgb() const;  // P6 pixel buffer
};

/// Deterministic pixel grid; identical output for any worker count.
RasterResult raster(const QcFamily& family, const RasterConfig& cfg);

struct CenterRecord {
    Complex c{};
    CharacterTriple character{};      // positive-lift normalized, real
    double residual = 0.0;            // final relative GN residual
    std::vector<std::pair<Slope, double>> lengths;  // slope -> length
    std::optional<std::pair<Slope, int>> label;     // advisory (slope, n)
};

/// Gauss-Newton on (Im x, Im y, Im z) = 0 from c0; empty when it fails to
/// converge or the converged point is not a validated Fuchsian center.
std::optional<CenterRecord> refine_center(const QcFamily& family, Complex c0,
                                          const RasterConfig& cfg);

/// Grid-seeded refinement over the window: seeds at local minima of the
/// imaginary residual, deterministic merge, validation, sort by |c|.
std::vector<CenterRecord> find_centers(const QcFamily& family,
                                       const RasterConfig& cfg);

/// (n, l_n) along the ray of centers attributed to `slope`, ordered
/// outward from c = 0.  Throws InsufficientCentersError with fewer than
/// two attributable centers.
std::vector<std::pair<int, double>> center_length_series(
    Slope slope, const std::vector<CenterRecord>& centers);

/// Exactly-two-negative real triples are twisted back to the all-positive
/// SL2 lift; other triples pass through unchanged.
CharacterTriple positive_lift(const CharacterTriple& t);

const char* to_string(PixelClass cls);

}  // namespace berscan
