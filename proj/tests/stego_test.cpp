#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dwtstego/error.hpp"
#include "dwtstego/metrics.hpp"
#include "dwtstego/stego.hpp"
#include "test_support.hpp"

namespace dwtstego {
namespace {

using testing::constant_image;
using testing::max_abs_diff;
using testing::random_image;
using testing::random_plane;

SubBandSet constant_bands(double v) {
  return {Plane(2, 2, v), Plane(2, 2, v), Plane(2, 2, v), Plane(2, 2, v)};
}

SubBandSet random_bands(std::mt19937_64& rng) {
  return {random_plane(rng, 4, 3), random_plane(rng, 4, 3), random_plane(rng, 4, 3),
          random_plane(rng, 4, 3)};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kIoError;
}

// Independent of any wavelet code.
ColorImage spatial_blend(const ColorImage& cover, const ColorImage& secret, double alpha) {
  ColorImage out = cover;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    for (std::size_t row = 0; row < cover.height(); ++row) {
      for (std::size_t col = 0; col < cover.width(); ++col) {
        out.channel(ch)(row, col) =
            (1.0 - alpha) * cover.channel(ch)(row, col) + alpha * secret.channel(ch)(row, col);
      }
    }
  }
  return out;
}

ColorImage scaled(const ColorImage& image, double s) {
  ColorImage out = image;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    for (double& v : out.channel(ch).samples()) v *= s;
  }
  return out;
}

TEST(BandMask, ParseAndFormat) {
  EXPECT_EQ(BandMask::parse("LL,LH,HL,HH"), BandMask::all());
  EXPECT_EQ(BandMask::parse(" hh , lh"), (BandMask{Band::kLH, Band::kHH}));
  EXPECT_EQ(BandMask::parse("HH")->to_string(), "HH");
  EXPECT_EQ(BandMask::all().to_string(), "LL,LH,HL,HH");
  EXPECT_FALSE(BandMask::parse(""));
  EXPECT_FALSE(BandMask::parse("LL,"));
  EXPECT_FALSE(BandMask::parse("XX"));
}

TEST(StegoParams, Validation) {
  EXPECT_NO_THROW(validate({0.5, 1, BandMask::all(), false}));
  EXPECT_EQ(code_of([] { validate({0.0, 1, BandMask::all(), false}); }), ErrorCode::kInvalidParams);
  EXPECT_EQ(code_of([] { validate({1.0, 1, BandMask::all(), false}); }), ErrorCode::kInvalidParams);
  EXPECT_EQ(code_of([] { validate({NAN, 1, BandMask::all(), false}); }), ErrorCode::kInvalidParams);
  EXPECT_EQ(code_of([] { validate({0.5, 0, BandMask::all(), false}); }), ErrorCode::kInvalidParams);
  EXPECT_EQ(code_of([] { validate({0.5, 1, BandMask{}, false}); }), ErrorCode::kInvalidParams);
}

TEST(BlendBands, VanishingAlphaReturnsCover) {
  std::mt19937_64 rng(21);
  const SubBandSet cover = random_bands(rng);
  const SubBandSet secret = random_bands(rng);
  const SubBandSet out = blend_bands(cover, secret, {1e-12, 1, BandMask::all(), false});
  EXPECT_LT(max_abs_diff(out.ll, cover.ll), 1e-9);
  EXPECT_LT(max_abs_diff(out.lh, cover.lh), 1e-9);
  EXPECT_LT(max_abs_diff(out.hl, cover.hl), 1e-9);
  EXPECT_LT(max_abs_diff(out.hh, cover.hh), 1e-9);
}

TEST(BlendBands, ConstantArithmetic) {
  const SubBandSet out =
      blend_bands(constant_bands(100), constant_bands(200), {0.5, 1, BandMask::all(), false});
  EXPECT_EQ(out.ll, Plane(2, 2, 150.0));
  EXPECT_EQ(out.lh, Plane(2, 2, 150.0));
  EXPECT_EQ(out.hl, Plane(2, 2, 150.0));
  EXPECT_EQ(out.hh, Plane(2, 2, 150.0));
}

TEST(BlendBands, MaskLeavesOtherBandsUntouched) {
  std::mt19937_64 rng(22);
  const SubBandSet cover = random_bands(rng);
  const SubBandSet secret = random_bands(rng);
  const SubBandSet out = blend_bands(cover, secret, {0.4, 1, BandMask{Band::kHH}, false});
  EXPECT_EQ(out.ll, cover.ll);
  EXPECT_EQ(out.lh, cover.lh);
  EXPECT_EQ(out.hl, cover.hl);
  EXPECT_NE(out.hh, cover.hh);
}

TEST(BlendBands, RejectsMismatchedBands) {
  SubBandSet secret = constant_bands(1);
  secret.hh = Plane(3, 2);
  EXPECT_EQ(code_of([&] { blend_bands(constant_bands(0), secret, {}); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([&] { unblend_bands(constant_bands(0), secret, {}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(BlendDecomposition, RejectsMismatchedDecompositions) {
  const MultiLevelDecomposition two = decompose(Plane(8, 8), 2);
  const MultiLevelDecomposition one = decompose(Plane(8, 8), 1);
  const MultiLevelDecomposition wide = decompose(Plane(16, 8), 2);
  EXPECT_EQ(code_of([&] { blend_decomposition(two, one, {}); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([&] { blend_decomposition(two, wide, {}); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([&] { unblend_decomposition(wide, two, {}); }), ErrorCode::kDimensionMismatch);
}

TEST(UnblendBands, ConstantArithmetic) {
  const SubBandSet raw =
      unblend_bands(constant_bands(150), constant_bands(100), {0.5, 1, BandMask::all(), false});
  EXPECT_EQ(raw.ll, Plane(2, 2, 100.0));
  EXPECT_EQ(raw.hh, Plane(2, 2, 100.0));
  const SubBandSet exact =
      unblend_bands(constant_bands(150), constant_bands(100), {0.5, 1, BandMask::all(), true});
  EXPECT_EQ(exact.ll, Plane(2, 2, 200.0));
  EXPECT_EQ(exact.hh, Plane(2, 2, 200.0));
}

TEST(UnblendBands, UnmaskedBandsAreZero) {
  const SubBandSet raw =
      unblend_bands(constant_bands(150), constant_bands(100), {0.5, 1, BandMask{Band::kLL}, false});
  EXPECT_EQ(raw.ll, Plane(2, 2, 100.0));
  EXPECT_EQ(raw.lh, Plane(2, 2, 0.0));
  EXPECT_EQ(raw.hl, Plane(2, 2, 0.0));
  EXPECT_EQ(raw.hh, Plane(2, 2, 0.0));
}

TEST(UnblendBands, InvertsBlendUpToAlpha) {
  std::mt19937_64 rng(23);
  for (double alpha : {0.1, 0.33, 0.9}) {
    const SubBandSet cover = random_bands(rng);
    const SubBandSet secret = random_bands(rng);
    const StegoParams params{alpha, 1, BandMask::all(), false};
    const SubBandSet raw = unblend_bands(blend_bands(cover, secret, params), cover, params);
    for (std::size_t i = 0; i < raw.ll.size(); ++i) {
      EXPECT_NEAR(raw.ll.samples()[i], alpha * secret.ll.samples()[i], 1e-9);
      EXPECT_NEAR(raw.hh.samples()[i], alpha * secret.hh.samples()[i], 1e-9);
    }
  }
}

TEST(UnblendBands, AlphaUnderflow) {
  EXPECT_EQ(code_of([] {
              unblend_bands(constant_bands(1), constant_bands(1), {1e-7, 1, BandMask::all(), true});
            }),
            ErrorCode::kAlphaUnderflow);
  EXPECT_NO_THROW(
      unblend_bands(constant_bands(1), constant_bands(1), {1e-7, 1, BandMask::all(), false}));
}

TEST(Embed, MatchesSpatialBlendWithFullMask) {
  std::mt19937_64 rng(24);
  const ColorImage cover = random_image(rng, 16, 16);
  const ColorImage secret = random_image(rng, 16, 16);
  for (std::size_t levels : {1, 2, 4}) {
    const StegoParams params{0.3, levels, BandMask::all(), false};
    EXPECT_LT(max_abs_diff(embed(cover, secret, params).stego, spatial_blend(cover, secret, 0.3)),
              1e-9);
  }
}

TEST(Embed, SecretEqualToCoverLeavesCover) {
  std::mt19937_64 rng(25);
  const ColorImage cover = random_image(rng, 8, 8);
  for (double alpha : {0.1, 0.7}) {
    EXPECT_LT(max_abs_diff(embed(cover, cover, {alpha, 2, BandMask::all(), false}).stego, cover),
              1e-9);
  }
}

TEST(Embed, ConstantImagesQuantized) {
  const EmbedOutput out = embed(constant_image(2, 2, 100, 100, 100),
                                constant_image(2, 2, 200, 200, 200), {0.5, 1, BandMask::all(), false});
  EXPECT_EQ(out.stego_quantized, constant_image(2, 2, 150, 150, 150));
}

TEST(Embed, QuantizedVariantMatchesStego) {
  std::mt19937_64 rng(26);
  const EmbedOutput out =
      embed(random_image(rng, 8, 4), random_image(rng, 8, 4), {0.6, 1, BandMask{Band::kHH}, false});
  EXPECT_EQ(out.stego_quantized, quantize_image(out.stego));
  EXPECT_EQ(out.stego.width(), 8u);
  EXPECT_EQ(out.stego.height(), 4u);
}

TEST(Embed, UnmaskedBandsMatchCover) {
  std::mt19937_64 rng(27);
  const ColorImage cover = random_image(rng, 16, 8);
  const ColorImage secret = random_image(rng, 16, 8);
  const StegoParams params{0.5, 2, BandMask{Band::kLH, Band::kHL}, false};
  const ColorImage stego = embed(cover, secret, params).stego;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    const MultiLevelDecomposition s = decompose(stego.channel(ch), 2);
    const MultiLevelDecomposition c = decompose(cover.channel(ch), 2);
    EXPECT_LT(max_abs_diff(s.final_ll, c.final_ll), 1e-9);
    for (std::size_t level = 0; level < 2; ++level) {
      EXPECT_LT(max_abs_diff(s.details[level].hh, c.details[level].hh), 1e-9);
      EXPECT_GT(max_abs_diff(s.details[level].lh, c.details[level].lh), 1e-3);
    }
    // In the coefficient domain the copy is exact.
    const MultiLevelDecomposition blended =
        blend_decomposition(c, decompose(secret.channel(ch), 2), params);
    EXPECT_EQ(blended.final_ll, c.final_ll);
    EXPECT_EQ(blended.details[1].hh, c.details[1].hh);
  }
}

TEST(Embed, Errors) {
  const ColorImage small = constant_image(4, 4, 1, 2, 3);
  const ColorImage wide = constant_image(8, 4, 1, 2, 3);
  EXPECT_EQ(code_of([&] { embed(small, wide, {}); }), ErrorCode::kSizeMismatch);
  EXPECT_EQ(code_of([&] { embed(constant_image(6, 6, 0, 0, 0), constant_image(6, 6, 0, 0, 0),
                                {0.5, 2, BandMask::all(), false}); }),
            ErrorCode::kOddDimension);
  EXPECT_EQ(code_of([&] { embed(small, small, {1.0, 1, BandMask::all(), false}); }),
            ErrorCode::kInvalidParams);
}

TEST(Extract, RecoversSecretOnRealValuedPath) {
  std::mt19937_64 rng(28);
  const ColorImage cover = random_image(rng, 32, 32);
  const ColorImage secret = random_image(rng, 32, 32);
  const StegoParams params{0.3, 1, BandMask::all(), true};
  const ColorImage stego = embed(cover, secret, params).stego;
  EXPECT_LT(max_abs_diff(extract(stego, cover, params), secret), 1e-6);

  StegoParams raw_params = params;
  raw_params.renormalize = false;
  EXPECT_LT(max_abs_diff(extract(stego, cover, raw_params), scaled(secret, 0.3)), 1e-6);
}

TEST(Extract, RoundTripAcrossAlphasAndMasks) {
  std::mt19937_64 rng(29);
  const ColorImage cover = random_image(rng, 16, 16);
  const ColorImage secret = random_image(rng, 16, 16);
  for (int step = 1; step <= 9; ++step) {
    const double alpha = step / 10.0;
    for (std::size_t levels : {1, 3}) {
      const StegoParams params{alpha, levels, BandMask::all(), true};
      const ColorImage stego = embed(cover, secret, params).stego;
      EXPECT_LT(max_abs_diff(extract(stego, cover, params), secret), 1e-6) << alpha;
    }
  }
}

TEST(Extract, PartialMaskRecoversOnlyMaskedContent) {
  std::mt19937_64 rng(30);
  const ColorImage cover = random_image(rng, 8, 8);
  const ColorImage secret = random_image(rng, 8, 8);
  const StegoParams params{0.5, 1, BandMask{Band::kLL}, true};
  const ColorImage recovered = extract(embed(cover, secret, params).stego, cover, params);
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    const SubBandSet want = haar_forward(secret.channel(ch));
    const SubBandSet got = haar_forward(recovered.channel(ch));
    EXPECT_LT(max_abs_diff(got.ll, want.ll), 1e-9);
    EXPECT_LT(testing::energy(got.hh), 1e-18);
  }
}

TEST(Extract, QuantizedStegoErrorBound) {
  std::mt19937_64 rng(31);
  const ColorImage cover = testing::random_image_8bit(rng, 32, 32);
  const ColorImage secret = testing::random_image_8bit(rng, 32, 32);
  const double alpha = 0.5;
  const StegoParams params{alpha, 1, BandMask::all(), true};
  const ColorImage recovered =
      quantize_image(extract(embed(cover, secret, params).stego_quantized, cover, params));
  EXPECT_LE(max_abs_diff(recovered, secret), std::ceil(0.5 / alpha) + 1);
}

TEST(Extract, AnalyticPsnrOnRealValuedPath) {
  std::mt19937_64 rng(32);
  const ColorImage cover = random_image(rng, 16, 16);
  const ColorImage secret = random_image(rng, 16, 16);
  double mean_sq = 0.0;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) mean_sq += testing::energy(secret.channel(ch));
  mean_sq /= 3.0 * 16 * 16;
  for (double alpha : {0.1, 0.5, 0.9}) {
    const StegoParams params{alpha, 1, BandMask::all(), false};
    const ColorImage recovered = extract(embed(cover, secret, params).stego, cover, params);
    const double expected =
        10.0 * std::log10(255.0 * 255.0 / ((1.0 - alpha) * (1.0 - alpha) * mean_sq));
    EXPECT_NEAR(compare_images(secret, recovered).psnr_overall, expected, 1e-6);
  }
}

TEST(Extract, Errors) {
  const ColorImage a = constant_image(4, 4, 1, 2, 3);
  const ColorImage b = constant_image(4, 2, 1, 2, 3);
  EXPECT_EQ(code_of([&] { extract(a, b, {}); }), ErrorCode::kSizeMismatch);
  EXPECT_EQ(code_of([&] { extract(a, a, {1e-7, 1, BandMask::all(), true}); }),
            ErrorCode::kAlphaUnderflow);
}

}  // namespace
}  // namespace dwtstego
