#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "dwtstego/planes.hpp"

namespace dwtstego {

// Raster files: 8-bit RGB PNG or binary PPM (P6, maxval 255). The reader
// sniffs the file signature; the writer picks the format from the extension.

ColorImage load_image(const std::filesystem::path& path);

/// Throws Error(kNotQuantized) if any sample is fractional or outside [0,255].
void save_image(const ColorImage& image, const std::filesystem::path& path);

// Float dump layout, little-endian throughout:
//   "STGF" | u16 version=1 | u32 width | u32 height | u8 plane_count=3
//   followed by plane_count * width * height f64 samples, R then G then B.
inline constexpr std::uint16_t kFloatDumpVersion = 1;
inline constexpr std::size_t kFloatDumpHeaderSize = 15;

void write_float_dump(const ColorImage& image, const std::filesystem::path& path);
ColorImage read_float_dump(const std::filesystem::path& path);

}  // namespace dwtstego
