#include "dwtstego/metrics.hpp"

#include <cmath>

#include "dwtstego/error.hpp"

namespace dwtstego {

namespace {

double squared_error_sum(const Plane& f, const Plane& g) {
  if (!f.same_shape(g)) {
    throw Error(ErrorCode::kDimensionMismatch, "compared planes differ in size");
  }
  const auto a = f.samples();
  const auto b = g.samples();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

double mse(const Plane& f, const Plane& g) {
  return squared_error_sum(f, g) / static_cast<double>(f.size());
}

double psnr_from_mse(double mse) noexcept {
  if (mse == 0.0) return kInfinitePsnr;
  return 10.0 * std::log10(kPeakValue * kPeakValue / mse);
}

double psnr(const Plane& f, const Plane& g) { return psnr_from_mse(mse(f, g)); }

MetricsReport compare_images(const ColorImage& a, const ColorImage& b) {
  MetricsReport report;
  double pooled = 0.0;
  std::size_t count = 0;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    const double sum = squared_error_sum(a.channel(ch), b.channel(ch));
    const std::size_t n = a.channel(ch).size();
    report.mse_per_channel[ch] = sum / static_cast<double>(n);
    report.psnr_per_channel[ch] = psnr_from_mse(report.mse_per_channel[ch]);
    pooled += sum;
    count += n;
  }
  report.mse_overall = pooled / static_cast<double>(count);
  report.psnr_overall = psnr_from_mse(report.mse_overall);
  return report;
}

}  // namespace dwtstego
