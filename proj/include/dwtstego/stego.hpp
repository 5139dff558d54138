#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

#include "dwtstego/planes.hpp"
#include "dwtstego/wavelet.hpp"

namespace dwtstego {

enum class Band : std::uint8_t { kLL = 1, kLH = 2, kHL = 4, kHH = 8 };

/// Subset of {LL, LH, HL, HH}; applied identically at every level.
class BandMask {
 public:
  constexpr BandMask() = default;
  constexpr BandMask(std::initializer_list<Band> bands) {
    for (Band b : bands) bits_ |= static_cast<std::uint8_t>(b);
  }

  static constexpr BandMask all() { return {Band::kLL, Band::kLH, Band::kHL, Band::kHH}; }

  /// Parses a comma list such as "LL,HH" (case-insensitive). Empty or
  /// unknown names yield nullopt.
  static std::optional<BandMask> parse(std::string_view text);

  constexpr bool contains(Band b) const noexcept {
    return (bits_ & static_cast<std::uint8_t>(b)) != 0;
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool is_all() const noexcept { return bits_ == 0x0F; }

  std::string to_string() const;

  friend constexpr bool operator==(BandMask, BandMask) = default;

 private:
  std::uint8_t bits_ = 0;
};

struct StegoParams {
  double alpha = 0.5;  // weight on the secret's coefficients
  std::size_t levels = 1;
  BandMask bands = BandMask::all();
  bool renormalize = false;  // divide recovered coefficients by alpha
};

inline constexpr double kMinRenormalizeAlpha = 1e-6;

/// Throws Error(kInvalidParams) unless 0 < alpha < 1, levels >= 1 and the
/// band mask is non-empty.
void validate(const StegoParams& params);

struct EmbedOutput {
  ColorImage stego;            // real-valued, before quantization
  ColorImage stego_quantized;  // 8-bit ready
};

/// out = (1 - alpha) * cover + alpha * secret for masked bands; unmasked
/// bands are copied from the cover.
SubBandSet blend_bands(const SubBandSet& cover, const SubBandSet& secret,
                       const StegoParams& params);

/// raw = stego - (1 - alpha) * cover for masked bands (divided by alpha when
/// renormalizing); unmasked bands come back as zero.
SubBandSet unblend_bands(const SubBandSet& stego, const SubBandSet& cover,
                         const StegoParams& params);

/// Same rules applied to every level of a decomposition; the mask's LL bit
/// governs the final approximation band.
MultiLevelDecomposition blend_decomposition(const MultiLevelDecomposition& cover,
                                            const MultiLevelDecomposition& secret,
                                            const StegoParams& params);
MultiLevelDecomposition unblend_decomposition(const MultiLevelDecomposition& stego,
                                              const MultiLevelDecomposition& cover,
                                              const StegoParams& params);

Plane embed_plane(const Plane& cover, const Plane& secret, const StegoParams& params);
Plane extract_plane(const Plane& stego, const Plane& cover, const StegoParams& params);

EmbedOutput embed(const ColorImage& cover, const ColorImage& secret,
                  const StegoParams& params);

/// Returns the real-valued recovery; quantize it before writing to disk.
ColorImage extract(const ColorImage& stego, const ColorImage& cover,
                   const StegoParams& params);

}  // namespace dwtstego
