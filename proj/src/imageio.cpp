#include "dwtstego/imageio.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

#include "dwtstego/error.hpp"

namespace dwtstego {

namespace {

namespace fs = std::filesystem;

constexpr std::array<unsigned char, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
constexpr std::array<char, 4> kFloatDumpMagic = {'S', 'T', 'G', 'F'};

std::vector<unsigned char> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoError, "failed reading " + path.string());
  return bytes;
}

void write_file(const fs::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::ranges::transform(ext, ext.begin(),
                         [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

ColorImage image_from_interleaved(std::size_t width, std::size_t height,
                                  const unsigned char* rgb) {
  ColorImage image{Plane(width, height), Plane(width, height), Plane(width, height)};
  for (std::size_t row = 0; row < height; ++row) {
    for (std::size_t col = 0; col < width; ++col) {
      const unsigned char* px = rgb + 3 * (row * width + col);
      image.r(row, col) = px[0];
      image.g(row, col) = px[1];
      image.b(row, col) = px[2];
    }
  }
  return image;
}

std::vector<unsigned char> interleave(const ColorImage& image) {
  std::vector<unsigned char> rgb(3 * image.width() * image.height());
  for (std::size_t row = 0; row < image.height(); ++row) {
    for (std::size_t col = 0; col < image.width(); ++col) {
      unsigned char* px = rgb.data() + 3 * (row * image.width() + col);
      for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
        px[ch] = static_cast<unsigned char>(image.channel(ch)(row, col));
      }
    }
  }
  return rgb;
}

// ---- PNG ------------------------------------------------------------------

// libpng reports fatal errors via longjmp. Everything that must survive the
// jump lives in this heap object, allocated before setjmp.
struct PngSession {
  png_structp png = nullptr;
  png_infop info = nullptr;
  bool writing = false;
  std::string error;
  std::vector<unsigned char> pixels;
  std::vector<png_bytep> rows;
  const unsigned char* input = nullptr;
  std::size_t input_size = 0;
  std::size_t input_pos = 0;
  std::vector<unsigned char> output;

  ~PngSession() {
    if (writing) {
      png_destroy_write_struct(&png, &info);
    } else {
      png_destroy_read_struct(&png, &info, nullptr);
    }
  }
};

void png_error_handler(png_structp png, png_const_charp message) {
  static_cast<PngSession*>(png_get_error_ptr(png))->error = message;
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

void png_read_from_memory(png_structp png, png_bytep data, png_size_t length) {
  auto* s = static_cast<PngSession*>(png_get_io_ptr(png));
  if (s->input_size - s->input_pos < length) png_error(png, "unexpected end of file");
  std::copy_n(s->input + s->input_pos, length, data);
  s->input_pos += length;
}

void png_write_to_memory(png_structp png, png_bytep data, png_size_t length) {
  auto* s = static_cast<PngSession*>(png_get_io_ptr(png));
  s->output.insert(s->output.end(), data, data + length);
}

void png_flush_noop(png_structp) {}

ColorImage decode_png(const std::vector<unsigned char>& bytes, const fs::path& path) {
  auto s = std::make_unique<PngSession>();
  s->input = bytes.data();
  s->input_size = bytes.size();
  s->png = png_create_read_struct(PNG_LIBPNG_VER_STRING, s.get(), png_error_handler,
                                  png_warning_handler);
  if (s->png == nullptr) throw Error(ErrorCode::kIoError, "libpng initialization failed");
  s->info = png_create_info_struct(s->png);
  if (s->info == nullptr) throw Error(ErrorCode::kIoError, "libpng initialization failed");

  if (setjmp(png_jmpbuf(s->png))) {
    throw Error(ErrorCode::kUnsupportedFormat, "corrupt PNG " + path.string() + ": " + s->error);
  }
  png_set_read_fn(s->png, s.get(), png_read_from_memory);
  png_read_info(s->png, s->info);

  const png_uint_32 width = png_get_image_width(s->png, s->info);
  const png_uint_32 height = png_get_image_height(s->png, s->info);
  const int depth = png_get_bit_depth(s->png, s->info);
  const int color = png_get_color_type(s->png, s->info);
  if (depth != 8) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + ": bit depth " + std::to_string(depth) + ", expected 8");
  }
  if (color != PNG_COLOR_TYPE_RGB) {
    const char* what = (color & PNG_COLOR_MASK_ALPHA) != 0   ? "has an alpha channel"
                       : (color & PNG_COLOR_MASK_PALETTE) != 0 ? "is palette-indexed"
                                                               : "is grayscale";
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + " " + what + "; three-channel RGB required");
  }
  if (png_get_valid(s->png, s->info, PNG_INFO_tRNS) != 0) {
    throw Error(ErrorCode::kUnsupportedFormat, path.string() + " has a transparency chunk");
  }

  png_set_interlace_handling(s->png);
  png_read_update_info(s->png, s->info);
  s->pixels.resize(std::size_t{3} * width * height);
  s->rows.resize(height);
  for (png_uint_32 row = 0; row < height; ++row) {
    s->rows[row] = s->pixels.data() + std::size_t{3} * width * row;
  }
  png_read_image(s->png, s->rows.data());
  png_read_end(s->png, nullptr);

  return image_from_interleaved(width, height, s->pixels.data());
}

std::vector<unsigned char> encode_png(const ColorImage& image) {
  auto s = std::make_unique<PngSession>();
  s->writing = true;
  s->pixels = interleave(image);
  s->png = png_create_write_struct(PNG_LIBPNG_VER_STRING, s.get(), png_error_handler,
                                   png_warning_handler);
  if (s->png == nullptr) throw Error(ErrorCode::kIoError, "libpng initialization failed");
  s->info = png_create_info_struct(s->png);
  if (s->info == nullptr) throw Error(ErrorCode::kIoError, "libpng initialization failed");

  s->rows.resize(image.height());
  for (std::size_t row = 0; row < image.height(); ++row) {
    s->rows[row] = s->pixels.data() + 3 * image.width() * row;
  }

  if (setjmp(png_jmpbuf(s->png))) {
    throw Error(ErrorCode::kIoError, "PNG encoding failed: " + s->error);
  }
  png_set_write_fn(s->png, s.get(), png_write_to_memory, png_flush_noop);
  png_set_IHDR(s->png, s->info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(s->png, s->info);
  png_write_image(s->png, s->rows.data());
  png_write_end(s->png, nullptr);
  return std::move(s->output);
}

// ---- PPM (binary P6) --------------------------------------------------------

class PpmHeaderReader {
 public:
  explicit PpmHeaderReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  std::size_t next_number(const fs::path& path) {
    skip_space_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_]) != 0) {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_++] - '0');
      if (++digits > 9) break;
    }
    if (digits == 0 || digits > 9) {
      throw Error(ErrorCode::kUnsupportedFormat, "malformed PPM header in " + path.string());
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() const { return pos_ + 1; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_]) != 0) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 2;
};

ColorImage decode_ppm(const std::vector<unsigned char>& bytes, const fs::path& path) {
  PpmHeaderReader header(bytes);
  const std::size_t width = header.next_number(path);
  const std::size_t height = header.next_number(path);
  const std::size_t maxval = header.next_number(path);
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kUnsupportedFormat, path.string() + " has zero size");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + ": maxval " + std::to_string(maxval) + ", expected 255");
  }
  const std::size_t offset = header.raster_offset();
  const std::size_t needed = 3 * width * height;
  if (offset > bytes.size() || bytes.size() - offset < needed) {
    throw Error(ErrorCode::kUnsupportedFormat, path.string() + ": truncated PPM raster");
  }
  return image_from_interleaved(width, height, bytes.data() + offset);
}

std::vector<unsigned char> encode_ppm(const ColorImage& image) {
  const std::string header =
      "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<unsigned char> bytes(header.begin(), header.end());
  const auto rgb = interleave(image);
  bytes.insert(bytes.end(), rgb.begin(), rgb.end());
  return bytes;
}

// ---- little-endian helpers --------------------------------------------------

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<unsigned char>((value >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(p[i]) << (8 * i);
  return value;
}

void check_shape(const ColorImage& image) {
  if (!image.r.same_shape(image.g) || !image.r.same_shape(image.b) || image.r.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "color planes differ in size");
  }
}

}  // namespace

ColorImage load_image(const fs::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    return decode_png(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    if (bytes[1] == '6') return decode_ppm(bytes, path);
    if (bytes[1] == '5' || bytes[1] == '2') {
      throw Error(ErrorCode::kUnsupportedFormat,
                  path.string() + " is grayscale; three-channel RGB required");
    }
  }
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + " is JPEG; lossy formats would corrupt embedded data");
  }
  throw Error(ErrorCode::kUnsupportedFormat,
              path.string() + " is not a supported format (PNG or binary PPM)");
}

void save_image(const ColorImage& image, const fs::path& path) {
  check_shape(image);
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    if (!is_quantized(image.channel(ch))) {
      throw Error(ErrorCode::kNotQuantized,
                  "image has non-integer or out-of-range samples; quantize before saving");
    }
  }
  const std::string ext = lower_extension(path);
  if (ext == ".png") {
    write_file(path, encode_png(image));
  } else if (ext == ".ppm") {
    write_file(path, encode_ppm(image));
  } else {
    throw Error(ErrorCode::kUnsupportedFormat,
                "cannot infer output format from '" + ext + "' (use .png or .ppm)");
  }
}

void write_float_dump(const ColorImage& image, const fs::path& path) {
  check_shape(image);
  if (image.width() > UINT32_MAX || image.height() > UINT32_MAX) {
    throw Error(ErrorCode::kUnsupportedFormat, "image too large for float dump");
  }
  std::vector<unsigned char> out;
  out.reserve(kFloatDumpHeaderSize + kChannelCount * image.r.size() * sizeof(double));
  out.insert(out.end(), kFloatDumpMagic.begin(), kFloatDumpMagic.end());
  put_le<std::uint16_t>(out, kFloatDumpVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(image.width()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(image.height()));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(kChannelCount));
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    for (double v : image.channel(ch).samples()) put_le(out, std::bit_cast<std::uint64_t>(v));
  }
  write_file(path, out);
}

ColorImage read_float_dump(const fs::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() < kFloatDumpMagic.size() ||
      !std::equal(kFloatDumpMagic.begin(), kFloatDumpMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::kBadMagic, path.string() + " is not a float dump");
  }
  if (bytes.size() < kFloatDumpHeaderSize) {
    throw Error(ErrorCode::kTruncatedPayload, path.string() + ": header is truncated");
  }
  const auto version = get_le<std::uint16_t>(bytes.data() + 4);
  const auto width = get_le<std::uint32_t>(bytes.data() + 6);
  const auto height = get_le<std::uint32_t>(bytes.data() + 10);
  const auto planes = get_le<std::uint8_t>(bytes.data() + 14);
  if (version != kFloatDumpVersion) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + ": float dump version " + std::to_string(version));
  }
  if (planes != kChannelCount) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + ": " + std::to_string(planes) + " planes, expected 3");
  }
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kUnsupportedFormat, path.string() + " has zero size");
  }

  const std::size_t samples = std::size_t{width} * height;
  const std::size_t expected = planes * samples * sizeof(double);
  const std::size_t payload = bytes.size() - kFloatDumpHeaderSize;
  if (payload < expected) {
    throw Error(ErrorCode::kTruncatedPayload,
                path.string() + ": payload has " + std::to_string(payload) + " bytes, " +
                    std::to_string(expected) + " required");
  }
  if (payload > expected) {
    throw Error(ErrorCode::kUnsupportedFormat, path.string() + ": trailing bytes after payload");
  }

  ColorImage image;
  const unsigned char* p = bytes.data() + kFloatDumpHeaderSize;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    std::vector<double> values(samples);
    for (double& v : values) {
      v = std::bit_cast<double>(get_le<std::uint64_t>(p));
      p += sizeof(double);
    }
    image.channel(ch) = Plane(width, height, std::move(values));
  }
  return image;
}

}  // namespace dwtstego
