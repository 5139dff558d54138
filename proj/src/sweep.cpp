#include "dwtstego/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "dwtstego/error.hpp"
#include "dwtstego/metrics.hpp"

namespace dwtstego {

namespace {

std::optional<double> parse_double(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

// Grid values are snapped so that 0.1 + 2 * 0.1 prints and compares as 0.3.
double snap(double value) { return std::round(value * 1e12) / 1e12; }

}  // namespace

std::string_view to_string(StegoPath path) {
  return path == StegoPath::kQuantized ? "quantized" : "float";
}

std::optional<StegoPath> parse_stego_path(std::string_view text) {
  if (text == "quantized") return StegoPath::kQuantized;
  if (text == "float") return StegoPath::kFloat;
  return std::nullopt;
}

std::optional<AlphaRange> parse_alpha_range(std::string_view text) {
  const std::size_t first = text.find(':');
  if (first == std::string_view::npos) return std::nullopt;
  const std::size_t second = text.find(':', first + 1);
  if (second == std::string_view::npos) return std::nullopt;
  const auto start = parse_double(text.substr(0, first));
  const auto stop = parse_double(text.substr(first + 1, second - first - 1));
  const auto step = parse_double(text.substr(second + 1));
  if (!start || !stop || !step) return std::nullopt;
  return AlphaRange{*start, *stop, *step};
}

std::vector<double> expand_alphas(const AlphaRange& range) {
  if (!(range.step > 0.0) || !std::isfinite(range.step) || !std::isfinite(range.start) ||
      !std::isfinite(range.stop)) {
    throw Error(ErrorCode::kInvalidParams, "alpha step must be positive and finite");
  }
  if (range.stop < range.start) {
    throw Error(ErrorCode::kInvalidParams, "alpha range is empty");
  }
  const double span = (range.stop - range.start) / range.step;
  if (span > 1e6) throw Error(ErrorCode::kInvalidParams, "alpha range has too many values");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;

  std::vector<double> alphas;
  alphas.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double alpha = snap(range.start + static_cast<double>(i) * range.step);
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw Error(ErrorCode::kInvalidParams,
                  "alpha " + format_fixed4(alpha) + " is outside (0, 1)");
    }
    alphas.push_back(alpha);
  }
  return alphas;
}

std::vector<SweepRow> run_sweep(const ColorImage& cover, const ColorImage& secret,
                                const std::vector<double>& alphas, const SweepOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    const StegoParams params{alpha, options.levels, options.bands, options.renormalize};
    const EmbedOutput embedded = embed(cover, secret, params);
    const ColorImage& stego =
        options.path == StegoPath::kQuantized ? embedded.stego_quantized : embedded.stego;
    const ColorImage extracted = quantize_image(extract(stego, cover, params));

    const MetricsReport hidden = compare_images(cover, stego);
    const MetricsReport recovered = compare_images(secret, extracted);
    rows.push_back({alpha, hidden.psnr_overall, recovered.psnr_overall, hidden.mse_overall,
                    recovered.mse_overall, options.path});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    out << format_fixed4(row.alpha) << ',' << format_fixed4(row.psnr_cover_stego) << ','
        << format_fixed4(row.psnr_secret_extracted) << ',' << format_fixed4(row.mse_cover_stego)
        << ',' << format_fixed4(row.mse_secret_extracted) << ',' << to_string(row.path) << '\n';
  }
}

SweepBest best_alphas(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidParams, "no sweep rows");
  SweepBest best{rows.front().alpha, rows.front().alpha};
  double top_stego = rows.front().psnr_cover_stego;
  double top_secret = rows.front().psnr_secret_extracted;
  for (const SweepRow& row : rows) {
    if (row.psnr_cover_stego > top_stego) {
      top_stego = row.psnr_cover_stego;
      best.alpha_cover_stego = row.alpha;
    }
    if (row.psnr_secret_extracted > top_secret) {
      top_secret = row.psnr_secret_extracted;
      best.alpha_secret_extracted = row.alpha;
    }
  }
  return best;
}

std::string format_fixed4(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

}  // namespace dwtstego
