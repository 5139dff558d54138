#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dwtstego/planes.hpp"
#include "dwtstego/stego.hpp"

namespace dwtstego {

/// Which stego image extraction consumes: the 8-bit quantized raster or the
/// real-valued planes (as round-tripped through a float dump).
enum class StegoPath { kQuantized, kFloat };

std::string_view to_string(StegoPath path);
std::optional<StegoPath> parse_stego_path(std::string_view text);

struct AlphaRange {
  double start = 0.1;
  double stop = 0.9;
  double step = 0.1;
};

/// Parses "start:stop:step".
std::optional<AlphaRange> parse_alpha_range(std::string_view text);

/// Inclusive grid start, start+step, ... <= stop. Throws
/// Error(kInvalidParams) if the grid is empty or any value leaves (0, 1).
std::vector<double> expand_alphas(const AlphaRange& range);

struct SweepOptions {
  StegoPath path = StegoPath::kQuantized;
  std::size_t levels = 1;
  BandMask bands = BandMask::all();
  bool renormalize = false;
};

struct SweepRow {
  double alpha = 0.0;
  double psnr_cover_stego = 0.0;
  double psnr_secret_extracted = 0.0;
  double mse_cover_stego = 0.0;
  double mse_secret_extracted = 0.0;
  StegoPath path = StegoPath::kQuantized;
};

/// One row per alpha, in the order given (callers pass increasing alphas).
/// The extracted secret is quantized before scoring, as it would be when
/// written to disk; metrics are pooled over the three channels.
std::vector<SweepRow> run_sweep(const ColorImage& cover, const ColorImage& secret,
                                const std::vector<double>& alphas,
                                const SweepOptions& options);

inline constexpr std::string_view kSweepCsvHeader =
    "alpha,psnr_cover_stego,psnr_secret_extracted,mse_cover_stego,"
    "mse_secret_extracted,path";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct SweepBest {
  double alpha_cover_stego = 0.0;
  double alpha_secret_extracted = 0.0;
};

/// First alpha attaining the maximum of each PSNR column. Rows must be
/// non-empty.
SweepBest best_alphas(const std::vector<SweepRow>& rows);

/// Four decimal places, or "inf".
std::string format_fixed4(double value);

}  // namespace dwtstego
