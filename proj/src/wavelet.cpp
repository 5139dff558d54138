#include "dwtstego/wavelet.hpp"

#include <string>
#include <utility>

#include "dwtstego/error.hpp"

namespace dwtstego {

namespace {

std::string dims(std::size_t w, std::size_t h) {
  return std::to_string(w) + "x" + std::to_string(h);
}

}  // namespace

SubBandSet haar_forward(const Plane& p) {
  const std::size_t w = p.width();
  const std::size_t h = p.height();
  if (w < 2 || h < 2) {
    throw Error(ErrorCode::kTooSmall, "Haar transform needs at least 2x2, got " + dims(w, h));
  }
  if (w % 2 != 0 || h % 2 != 0) {
    throw Error(ErrorCode::kOddDimension, "Haar transform needs even dimensions, got " + dims(w, h));
  }

  const std::size_t hw = w / 2;
  const std::size_t hh = h / 2;
  SubBandSet out{Plane(hw, hh), Plane(hw, hh), Plane(hw, hh), Plane(hw, hh)};
  for (std::size_t row = 0; row < hh; ++row) {
    for (std::size_t col = 0; col < hw; ++col) {
      const double a = p(2 * row, 2 * col);
      const double b = p(2 * row, 2 * col + 1);
      const double c = p(2 * row + 1, 2 * col);
      const double d = p(2 * row + 1, 2 * col + 1);
      out.ll(row, col) = (a + b + c + d) / 2.0;
      out.hl(row, col) = (a - b + c - d) / 2.0;
      out.lh(row, col) = (a + b - c - d) / 2.0;
      out.hh(row, col) = (a - b - c + d) / 2.0;
    }
  }
  return out;
}

Plane haar_inverse(const SubBandSet& bands) {
  const Plane& ll = bands.ll;
  if (!ll.same_shape(bands.lh) || !ll.same_shape(bands.hl) || !ll.same_shape(bands.hh)) {
    throw Error(ErrorCode::kDimensionMismatch, "sub-bands differ in size");
  }
  if (ll.empty()) {
    throw Error(ErrorCode::kTooSmall, "sub-bands are empty");
  }

  Plane out(ll.width() * 2, ll.height() * 2);
  for (std::size_t row = 0; row < ll.height(); ++row) {
    for (std::size_t col = 0; col < ll.width(); ++col) {
      const double s = ll(row, col);
      const double x = bands.hl(row, col);
      const double y = bands.lh(row, col);
      const double z = bands.hh(row, col);
      out(2 * row, 2 * col) = (s + x + y + z) / 2.0;
      out(2 * row, 2 * col + 1) = (s - x + y - z) / 2.0;
      out(2 * row + 1, 2 * col) = (s + x - y - z) / 2.0;
      out(2 * row + 1, 2 * col + 1) = (s - x - y + z) / 2.0;
    }
  }
  return out;
}

bool supports_levels(std::size_t width, std::size_t height, std::size_t levels) noexcept {
  if (levels == 0 || levels >= 8 * sizeof(std::size_t)) return false;
  const std::size_t block = std::size_t{1} << levels;
  return width >= block && height >= block && width % block == 0 && height % block == 0;
}

MultiLevelDecomposition decompose(const Plane& p, std::size_t levels) {
  if (levels == 0) {
    throw Error(ErrorCode::kInvalidParams, "decomposition needs at least one level");
  }
  if (!supports_levels(p.width(), p.height(), levels)) {
    throw Error(ErrorCode::kOddDimension,
                dims(p.width(), p.height()) + " is not divisible by 2^" + std::to_string(levels));
  }

  MultiLevelDecomposition d;
  d.details.reserve(levels);
  Plane approx = p;
  for (std::size_t level = 0; level < levels; ++level) {
    SubBandSet bands = haar_forward(approx);
    d.details.push_back({std::move(bands.lh), std::move(bands.hl), std::move(bands.hh)});
    approx = std::move(bands.ll);
  }
  d.final_ll = std::move(approx);
  return d;
}

Plane reconstruct(const MultiLevelDecomposition& d) {
  if (d.details.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "decomposition has no levels");
  }
  Plane approx = d.final_ll;
  for (auto it = d.details.rbegin(); it != d.details.rend(); ++it) {
    if (!approx.same_shape(it->lh)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "approximation " + dims(approx.width(), approx.height()) +
                      " does not match detail level " + dims(it->lh.width(), it->lh.height()));
    }
    approx = haar_inverse({std::move(approx), it->lh, it->hl, it->hh});
  }
  return approx;
}

}  // namespace dwtstego
