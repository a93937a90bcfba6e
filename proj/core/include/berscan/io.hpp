#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "berscan/scan.hpp"

namespace berscan {

/// All floats in serialized output go through this (17 significant
/// digits, round-trip exact), so byte-identical reruns are a matter of
/// identical numbers, not formatting luck.
std::string format_g17(double v);

/// Binary PPM (P6, maxval 255).
void write_ppm(std::ostream& os, const RasterResult& img);

/// Truecolor 8-bit PNG with a stored (uncompressed) zlib stream; no
/// external dependencies and byte-stable.
void write_png(std::ostream& os, const RasterResult& img);

/// Centers as a JSON array of {c, traces, residual, lengths[, label]}.
std::string centers_json(const std::vector<CenterRecord>& centers);

/// Raster stats + effective configuration.  Worker count is deliberately
/// not echoed: it cannot affect the pixels, and the stats file must be
/// byte-identical across worker counts.  Wall time goes to stderr only.
std::string raster_stats_json(const RasterConfig& cfg,
                              const RasterStats& stats);

/// Single-point query output for the CLI.
std::string trace_at_json(Complex c, const PointClassification& pc,
                          double error_estimate,
                          const std::optional<Slope>& witness);

}  // namespace berscan
