#pragma once

#include <array>
#include <limits>

#include "dwtstego/planes.hpp"

namespace dwtstego {

inline constexpr double kPeakValue = 255.0;
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

double mse(const Plane& f, const Plane& g);

/// 10 log10(255^2 / mse); +infinity when mse == 0.
double psnr_from_mse(double mse) noexcept;
double psnr(const Plane& f, const Plane& g);

struct MetricsReport {
  std::array<double, kChannelCount> mse_per_channel{};
  std::array<double, kChannelCount> psnr_per_channel{};
  double mse_overall = 0.0;  // pooled over all samples of all channels
  double psnr_overall = 0.0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsReport compare_images(const ColorImage& a, const ColorImage& b);

}  // namespace dwtstego
