#include "dwtstego/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "dwtstego/error.hpp"
#include "dwtstego/imageio.hpp"
#include "dwtstego/metrics.hpp"
#include "dwtstego/planes.hpp"
#include "dwtstego/stego.hpp"
#include "dwtstego/sweep.hpp"

namespace dwtstego::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams:
    case ErrorCode::kAlphaUnderflow:
      return kExitUsage;
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kOddDimension:
    case ErrorCode::kTooSmall:
    case ErrorCode::kSizeMismatch:
      return kExitDimension;
    case ErrorCode::kIoError:
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kNotQuantized:
    case ErrorCode::kBadMagic:
    case ErrorCode::kTruncatedPayload:
      return kExitIo;
  }
  return kExitIo;
}

// Flags shared by every command that runs the embedding pipeline.
struct PipelineFlags {
  double alpha = 0.0;
  std::size_t levels = 1;
  std::string bands = "LL,LH,HL,HH";
  bool renormalize = false;
  bool crop_even = false;

  void add_to(CLI::App& cmd, bool with_alpha, bool with_renormalize) {
    if (with_alpha) {
      cmd.add_option("--alpha", alpha, "Blending weight of the secret, strictly inside (0,1)")
          ->required();
    }
    cmd.add_option("--levels", levels, "Wavelet decomposition levels")->capture_default_str();
    cmd.add_option("--bands", bands, "Comma list of sub-bands to blend (LL,LH,HL,HH)")
        ->capture_default_str();
    if (with_renormalize) {
      cmd.add_flag("--renormalize", renormalize, "Divide recovered coefficients by alpha");
    }
    cmd.add_flag("--crop-even", crop_even,
                 "Crop inputs at the bottom/right to a multiple of 2^levels");
  }

  StegoParams params() const {
    const auto mask = BandMask::parse(bands);
    if (!mask) throw UsageError("--bands: expected a comma list of LL, LH, HL, HH");
    if (levels == 0) throw UsageError("--levels must be at least 1");
    return {alpha, levels, *mask, renormalize};
  }

  ColorImage prepare(ColorImage image) const {
    if (!crop_even || levels >= 8 * sizeof(std::size_t)) return image;
    const std::size_t block = std::size_t{1} << levels;
    const std::size_t w = image.width() - image.width() % block;
    const std::size_t h = image.height() - image.height() % block;
    if (w == 0 || h == 0) {
      throw Error(ErrorCode::kTooSmall, "image is smaller than one 2^levels block");
    }
    return crop_image(image, w, h);
  }
};

std::string dims(const ColorImage& image) {
  return std::to_string(image.width()) + "x" + std::to_string(image.height());
}

void require_same_size(const ColorImage& a, const ColorImage& b, std::string_view what) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kSizeMismatch, std::string(what) + " must be the same size, got " +
                                              dims(a) + " and " + dims(b));
  }
}

void require_divisible(const ColorImage& image, std::size_t levels) {
  if (!supports_levels(image.width(), image.height(), levels)) {
    throw Error(ErrorCode::kOddDimension,
                dims(image) + " is not divisible by 2^" + std::to_string(levels) +
                    " (pass --crop-even to crop)");
  }
}

struct EmbedArgs {
  std::string cover;
  std::string secret;
  std::string out;
  std::string float_out;
  PipelineFlags flags;
};

int cmd_embed(const EmbedArgs& args, std::ostream& out) {
  const StegoParams params = args.flags.params();
  validate(params);
  const ColorImage cover = args.flags.prepare(load_image(args.cover));
  const ColorImage secret = args.flags.prepare(load_image(args.secret));
  require_same_size(cover, secret, "cover and secret image");
  require_divisible(cover, params.levels);

  const EmbedOutput result = embed(cover, secret, params);
  save_image(result.stego_quantized, args.out);
  if (!args.float_out.empty()) write_float_dump(result.stego, args.float_out);
  out << "stego " << dims(cover) << " alpha=" << format_fixed4(params.alpha)
      << " levels=" << params.levels << " bands=" << params.bands.to_string() << " -> "
      << args.out << '\n';
  return kExitOk;
}

struct ExtractArgs {
  std::string stego;
  std::string float_in;
  std::string cover;
  std::string out;
  PipelineFlags flags;
};

int cmd_extract(const ExtractArgs& args, std::ostream& out) {
  const StegoParams params = args.flags.params();
  validate(params);
  if (args.stego.empty() == args.float_in.empty()) {
    throw UsageError("exactly one of --stego or --float-in is required");
  }
  const ColorImage stego = args.flags.prepare(
      args.float_in.empty() ? load_image(args.stego) : read_float_dump(args.float_in));
  const ColorImage cover = args.flags.prepare(load_image(args.cover));
  require_same_size(stego, cover, "stego and cover image");
  require_divisible(cover, params.levels);

  const ColorImage secret = quantize_image(extract(stego, cover, params));
  save_image(secret, args.out);
  out << "secret " << dims(secret) << " alpha=" << format_fixed4(params.alpha)
      << (params.renormalize ? " renormalized" : "") << " -> " << args.out << '\n';
  return kExitOk;
}

struct MetricsArgs {
  std::string ref;
  std::string test;
  std::string format = "text";
};

int cmd_metrics(const MetricsArgs& args, std::ostream& out) {
  const ColorImage ref = load_image(args.ref);
  const ColorImage test = load_image(args.test);
  if (ref.width() != test.width() || ref.height() != test.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "images differ in size: " + dims(ref) + " vs " + dims(test));
  }
  const MetricsReport report = compare_images(ref, test);

  static constexpr const char* kNames[] = {"R", "G", "B", "overall"};
  const auto mse_at = [&](int i) { return i < 3 ? report.mse_per_channel[i] : report.mse_overall; };
  const auto psnr_at = [&](int i) {
    return i < 3 ? report.psnr_per_channel[i] : report.psnr_overall;
  };
  if (args.format == "csv") {
    out << "channel,mse,psnr\n";
    for (int i = 0; i < 4; ++i) {
      out << kNames[i] << ',' << format_fixed4(mse_at(i)) << ',' << format_fixed4(psnr_at(i))
          << '\n';
    }
  } else {
    char line[96];
    std::snprintf(line, sizeof line, "%-8s %14s %12s\n", "channel", "mse", "psnr_db");
    out << line;
    for (int i = 0; i < 4; ++i) {
      std::snprintf(line, sizeof line, "%-8s %14s %12s\n", kNames[i],
                    format_fixed4(mse_at(i)).c_str(), format_fixed4(psnr_at(i)).c_str());
      out << line;
    }
  }
  return kExitOk;
}

struct SweepArgs {
  std::string cover;
  std::string secret;
  std::string alphas = "0.1:0.9:0.1";
  std::string out;
  std::string path = "quantized";
  PipelineFlags flags;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
  const auto range = parse_alpha_range(args.alphas);
  if (!range) throw UsageError("--alphas: expected start:stop:step");
  const std::vector<double> alphas = expand_alphas(*range);
  const auto path = parse_stego_path(args.path);
  if (!path) throw UsageError("--path: expected 'quantized' or 'float'");

  StegoParams probe = args.flags.params();
  probe.alpha = alphas.front();
  validate(probe);

  const ColorImage cover = args.flags.prepare(load_image(args.cover));
  const ColorImage secret = args.flags.prepare(load_image(args.secret));
  require_same_size(cover, secret, "cover and secret image");
  require_divisible(cover, probe.levels);

  const auto rows =
      run_sweep(cover, secret, alphas, {*path, probe.levels, probe.bands, probe.renormalize});
  std::ofstream csv(args.out, std::ios::trunc);
  if (!csv) throw Error(ErrorCode::kIoError, "cannot create " + args.out);
  write_sweep_csv(csv, rows);
  csv.close();
  if (!csv) throw Error(ErrorCode::kIoError, "failed writing " + args.out);

  const SweepBest best = best_alphas(rows);
  out << "rows=" << rows.size() << " path=" << to_string(*path) << " -> " << args.out << '\n';
  out << "best psnr_cover_stego at alpha=" << format_fixed4(best.alpha_cover_stego) << '\n';
  out << "best psnr_secret_extracted at alpha=" << format_fixed4(best.alpha_secret_extracted)
      << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hide a color image inside another by blending Haar wavelet sub-bands"};
  app.name("dwtstego");
  app.require_subcommand(1);

  EmbedArgs embed_args;
  auto* embed_cmd = app.add_subcommand("embed", "Hide --secret inside --cover");
  embed_cmd->add_option("--cover", embed_args.cover, "Cover image (PNG/PPM)")->required();
  embed_cmd->add_option("--secret", embed_args.secret, "Secret image, same size as cover")
      ->required();
  embed_cmd->add_option("--out", embed_args.out, "Quantized stego image (.png/.ppm)")->required();
  embed_cmd->add_option("--float-out", embed_args.float_out,
                        "Also write the unquantized stego as a float dump");
  embed_args.flags.add_to(*embed_cmd, true, false);

  ExtractArgs extract_args;
  auto* extract_cmd = app.add_subcommand("extract", "Recover the secret from a stego image");
  auto* stego_opt = extract_cmd->add_option("--stego", extract_args.stego, "Stego image");
  extract_cmd->add_option("--float-in", extract_args.float_in, "Unquantized stego float dump")
      ->excludes(stego_opt);
  extract_cmd->add_option("--cover", extract_args.cover, "Original cover image")->required();
  extract_cmd->add_option("--out", extract_args.out, "Extracted secret (.png/.ppm)")->required();
  extract_args.flags.add_to(*extract_cmd, true, true);

  MetricsArgs metrics_args;
  auto* metrics_cmd = app.add_subcommand("metrics", "MSE and PSNR between two images");
  metrics_cmd->add_option("--ref", metrics_args.ref, "Reference image")->required();
  metrics_cmd->add_option("--test", metrics_args.test, "Test image")->required();
  metrics_cmd->add_option("--format", metrics_args.format, "Output format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Embed/extract over a range of alphas");
  sweep_cmd->add_option("--cover", sweep_args.cover, "Cover image")->required();
  sweep_cmd->add_option("--secret", sweep_args.secret, "Secret image")->required();
  sweep_cmd->add_option("--alphas", sweep_args.alphas, "start:stop:step")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out, "CSV output path")->required();
  sweep_cmd->add_option("--path", sweep_args.path, "Stego fed to extraction")
      ->check(CLI::IsMember({"quantized", "float"}))
      ->capture_default_str();
  sweep_args.flags.add_to(*sweep_cmd, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*embed_cmd) return cmd_embed(embed_args, out);
    if (*extract_cmd) return cmd_extract(extract_args, out);
    if (*metrics_cmd) return cmd_metrics(metrics_args, out);
    if (*sweep_cmd) return cmd_sweep(sweep_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace dwtstego::cli
