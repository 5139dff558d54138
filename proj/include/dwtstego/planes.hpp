#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dwtstego {

/// One color channel: a height x width grid of real samples, row-major.
class Plane {
 public:
  Plane() = default;
  /// Throws Error(kTooSmall) when either dimension is zero.
  Plane(std::size_t width, std::size_t height, double fill = 0.0);
  /// Takes ownership of row-major samples; size must equal width * height.
  Plane(std::size_t width, std::size_t height, std::vector<double> samples);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  double& operator()(std::size_t row, std::size_t col) noexcept {
    return samples_[row * width_ + col];
  }
  double operator()(std::size_t row, std::size_t col) const noexcept {
    return samples_[row * width_ + col];
  }

  std::span<double> samples() noexcept { return samples_; }
  std::span<const double> samples() const noexcept { return samples_; }

  bool same_shape(const Plane& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> samples_;
};

/// Three equally sized planes in R, G, B order.
struct ColorImage {
  Plane r;
  Plane g;
  Plane b;

  std::size_t width() const noexcept { return r.width(); }
  std::size_t height() const noexcept { return r.height(); }

  Plane& channel(std::size_t i) noexcept { return i == 0 ? r : (i == 1 ? g : b); }
  const Plane& channel(std::size_t i) const noexcept {
    return i == 0 ? r : (i == 1 ? g : b);
  }

  friend bool operator==(const ColorImage&, const ColorImage&) = default;
};

inline constexpr std::size_t kChannelCount = 3;

struct PlaneTriple {
  Plane r;
  Plane g;
  Plane b;
};

PlaneTriple split_planes(const ColorImage& image);

/// Throws Error(kDimensionMismatch) unless all three planes share a shape.
ColorImage merge_planes(Plane r, Plane g, Plane b);

/// Clamps to [0, 255] and rounds half away from zero.
Plane quantize_plane(const Plane& p);
ColorImage quantize_image(const ColorImage& image);

/// True when every sample is an integer in [0, 255].
bool is_quantized(const Plane& p) noexcept;

/// Keeps the top-left width x height region.
Plane crop_plane(const Plane& p, std::size_t width, std::size_t height);
ColorImage crop_image(const ColorImage& image, std::size_t width, std::size_t height);

}  // namespace dwtstego
