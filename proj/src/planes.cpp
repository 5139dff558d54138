#include "dwtstego/planes.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dwtstego/error.hpp"

namespace dwtstego {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kOddDimension: return "OddDimension";
    case ErrorCode::kTooSmall: return "TooSmall";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kAlphaUnderflow: return "AlphaUnderflow";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kNotQuantized: return "NotQuantized";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Plane::Plane(std::size_t width, std::size_t height, double fill)
    : Plane(width, height, std::vector<double>(width * height, fill)) {}

Plane::Plane(std::size_t width, std::size_t height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kTooSmall, "plane dimensions must be positive");
  }
  if (samples_.size() != width * height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "sample count " + std::to_string(samples_.size()) + " does not match " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

PlaneTriple split_planes(const ColorImage& image) {
  return {image.r, image.g, image.b};
}

ColorImage merge_planes(Plane r, Plane g, Plane b) {
  if (!r.same_shape(g) || !r.same_shape(b)) {
    throw Error(ErrorCode::kDimensionMismatch, "color planes differ in size");
  }
  return {std::move(r), std::move(g), std::move(b)};
}

Plane quantize_plane(const Plane& p) {
  Plane out = p;
  for (double& v : out.samples()) {
    v = std::round(std::clamp(v, 0.0, 255.0));
  }
  return out;
}

ColorImage quantize_image(const ColorImage& image) {
  return {quantize_plane(image.r), quantize_plane(image.g), quantize_plane(image.b)};
}

bool is_quantized(const Plane& p) noexcept {
  return std::ranges::all_of(p.samples(), [](double v) {
    return v >= 0.0 && v <= 255.0 && std::floor(v) == v;
  });
}

Plane crop_plane(const Plane& p, std::size_t width, std::size_t height) {
  if (width > p.width() || height > p.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "crop region exceeds plane");
  }
  Plane out(width, height);
  for (std::size_t row = 0; row < height; ++row) {
    for (std::size_t col = 0; col < width; ++col) out(row, col) = p(row, col);
  }
  return out;
}

ColorImage crop_image(const ColorImage& image, std::size_t width, std::size_t height) {
  return {crop_plane(image.r, width, height), crop_plane(image.g, width, height),
          crop_plane(image.b, width, height)};
}

}  // namespace dwtstego
