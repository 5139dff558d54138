#include "dwtstego/stego.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>

#include "dwtstego/error.hpp"

namespace dwtstego {

namespace {

constexpr std::array<std::pair<Band, std::string_view>, 4> kBandNames{{
    {Band::kLL, "LL"},
    {Band::kLH, "LH"},
    {Band::kHL, "HL"},
    {Band::kHH, "HH"},
}};

void require_same_shape(const Plane& a, const Plane& b, std::string_view what) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " bands differ in size");
  }
}

void require_same_shapes(const SubBandSet& a, const SubBandSet& b, std::string_view what) {
  require_same_shape(a.ll, b.ll, what);
  require_same_shape(a.lh, b.lh, what);
  require_same_shape(a.hl, b.hl, what);
  require_same_shape(a.hh, b.hh, what);
}

// out = keep_weight * base + other_weight * other
Plane weighted_sum(const Plane& base, double keep_weight, const Plane& other,
                   double other_weight) {
  Plane out = base;
  auto dst = out.samples();
  auto src = other.samples();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = keep_weight * dst[i] + other_weight * src[i];
  }
  return out;
}

Plane blend_band(const Plane& cover, const Plane& secret, double alpha) {
  require_same_shape(cover, secret, "cover/secret");
  return weighted_sum(cover, 1.0 - alpha, secret, alpha);
}

Plane unblend_band(const Plane& stego, const Plane& cover, const StegoParams& params) {
  require_same_shape(stego, cover, "stego/cover");
  Plane raw = weighted_sum(stego, 1.0, cover, -(1.0 - params.alpha));
  if (params.renormalize) {
    for (double& v : raw.samples()) v /= params.alpha;
  }
  return raw;
}

void check_renormalize(const StegoParams& params) {
  if (params.renormalize && params.alpha < kMinRenormalizeAlpha) {
    throw Error(ErrorCode::kAlphaUnderflow,
                "cannot renormalize by alpha=" + std::to_string(params.alpha));
  }
}

void check_image(const ColorImage& image, std::string_view what) {
  if (!image.r.same_shape(image.g) || !image.r.same_shape(image.b)) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " planes differ in size");
  }
}

void check_pair(const ColorImage& a, const ColorImage& b, std::string_view what) {
  check_image(a, what);
  check_image(b, what);
  if (!a.r.same_shape(b.r)) {
    throw Error(ErrorCode::kSizeMismatch,
                std::string(what) + " must be the same size (" + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()) + ")");
  }
}

}  // namespace

std::optional<BandMask> BandMask::parse(std::string_view text) {
  BandMask mask;
  while (true) {
    const std::size_t comma = text.find(',');
    std::string token(text.substr(0, comma));
    std::erase_if(token, [](unsigned char ch) { return std::isspace(ch); });
    std::ranges::transform(token, token.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    const auto it = std::ranges::find(kBandNames, std::string_view(token),
                                      &std::pair<Band, std::string_view>::second);
    if (it == kBandNames.end()) return std::nullopt;
    mask.bits_ |= static_cast<std::uint8_t>(it->first);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return mask;
}

std::string BandMask::to_string() const {
  std::string out;
  for (const auto& [band, name] : kBandNames) {
    if (!contains(band)) continue;
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

void validate(const StegoParams& params) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidParams,
                "alpha must be strictly inside (0, 1), got " + std::to_string(params.alpha));
  }
  if (params.levels == 0) {
    throw Error(ErrorCode::kInvalidParams, "levels must be at least 1");
  }
  if (params.bands.empty()) {
    throw Error(ErrorCode::kInvalidParams, "band mask must not be empty");
  }
}

SubBandSet blend_bands(const SubBandSet& cover, const SubBandSet& secret,
                       const StegoParams& params) {
  require_same_shapes(cover, secret, "cover/secret");
  const auto pick = [&](Band band, const Plane& c, const Plane& s) {
    return params.bands.contains(band) ? blend_band(c, s, params.alpha) : c;
  };
  return {pick(Band::kLL, cover.ll, secret.ll), pick(Band::kLH, cover.lh, secret.lh),
          pick(Band::kHL, cover.hl, secret.hl), pick(Band::kHH, cover.hh, secret.hh)};
}

SubBandSet unblend_bands(const SubBandSet& stego, const SubBandSet& cover,
                         const StegoParams& params) {
  check_renormalize(params);
  require_same_shapes(stego, cover, "stego/cover");
  const auto pick = [&](Band band, const Plane& st, const Plane& c) {
    return params.bands.contains(band) ? unblend_band(st, c, params)
                                       : Plane(st.width(), st.height(), 0.0);
  };
  return {pick(Band::kLL, stego.ll, cover.ll), pick(Band::kLH, stego.lh, cover.lh),
          pick(Band::kHL, stego.hl, cover.hl), pick(Band::kHH, stego.hh, cover.hh)};
}

namespace {

template <typename BandOp>
MultiLevelDecomposition combine_decompositions(const MultiLevelDecomposition& first,
                                               const MultiLevelDecomposition& second,
                                               BandOp&& op) {
  if (first.levels() != second.levels()) {
    throw Error(ErrorCode::kDimensionMismatch, "decompositions have different depths");
  }
  for (std::size_t level = 0; level < first.levels(); ++level) {
    const DetailBands& x = first.details[level];
    const DetailBands& y = second.details[level];
    require_same_shape(x.lh, y.lh, "decomposition");
    require_same_shape(x.hl, y.hl, "decomposition");
    require_same_shape(x.hh, y.hh, "decomposition");
  }
  require_same_shape(first.final_ll, second.final_ll, "decomposition");

  MultiLevelDecomposition out;
  out.details.reserve(first.levels());
  for (std::size_t level = 0; level < first.levels(); ++level) {
    const DetailBands& x = first.details[level];
    const DetailBands& y = second.details[level];
    out.details.push_back({op(Band::kLH, x.lh, y.lh), op(Band::kHL, x.hl, y.hl),
                           op(Band::kHH, x.hh, y.hh)});
  }
  out.final_ll = op(Band::kLL, first.final_ll, second.final_ll);
  return out;
}

}  // namespace

MultiLevelDecomposition blend_decomposition(const MultiLevelDecomposition& cover,
                                            const MultiLevelDecomposition& secret,
                                            const StegoParams& params) {
  return combine_decompositions(cover, secret, [&](Band band, const Plane& c, const Plane& s) {
    return params.bands.contains(band) ? blend_band(c, s, params.alpha) : c;
  });
}

MultiLevelDecomposition unblend_decomposition(const MultiLevelDecomposition& stego,
                                              const MultiLevelDecomposition& cover,
                                              const StegoParams& params) {
  check_renormalize(params);
  return combine_decompositions(stego, cover, [&](Band band, const Plane& st, const Plane& c) {
    return params.bands.contains(band) ? unblend_band(st, c, params)
                                       : Plane(st.width(), st.height(), 0.0);
  });
}

Plane embed_plane(const Plane& cover, const Plane& secret, const StegoParams& params) {
  return reconstruct(
      blend_decomposition(decompose(cover, params.levels), decompose(secret, params.levels), params));
}

Plane extract_plane(const Plane& stego, const Plane& cover, const StegoParams& params) {
  return reconstruct(
      unblend_decomposition(decompose(stego, params.levels), decompose(cover, params.levels), params));
}

EmbedOutput embed(const ColorImage& cover, const ColorImage& secret, const StegoParams& params) {
  validate(params);
  check_pair(cover, secret, "cover and secret image");

  EmbedOutput out;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    out.stego.channel(ch) = embed_plane(cover.channel(ch), secret.channel(ch), params);
  }
  out.stego_quantized = quantize_image(out.stego);
  return out;
}

ColorImage extract(const ColorImage& stego, const ColorImage& cover, const StegoParams& params) {
  validate(params);
  check_renormalize(params);
  check_pair(stego, cover, "stego and cover image");

  ColorImage out;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    out.channel(ch) = extract_plane(stego.channel(ch), cover.channel(ch), params);
  }
  return out;
}

}  // namespace dwtstego
