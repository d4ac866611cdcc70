#pragma once

#include <bit>
#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <png.h>

#include "rootdyn/error.hpp"
#include "rootdyn/plane.hpp"

namespace rootdyn {

enum class ImageFormat { ppm, png };

inline ImageFormat image_format_from_name(const std::string& name) {
  if (name == "ppm") return ImageFormat::ppm;
  if (name == "png") return ImageFormat::png;
  throw DynamicsError(ErrorKind::invalid_parameter, "unknown image format '" + name + "'");
}

namespace detail {

inline std::string errno_text() { return std::strerror(errno); }

inline void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(ErrorKind::io_failure, path, "cannot open for writing: " + errno_text());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError(ErrorKind::io_failure, path, "write failed: " + errno_text());
}

inline std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(ErrorKind::io_failure, path, "cannot open for reading: " + errno_text());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace detail

/// Binary P6 with maxval 255.
inline std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  return out;
}

inline Image decode_ppm(const std::string& bytes, const std::string& path = "<memory>") {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { return IoError(ErrorKind::format_mismatch, path, "PPM: " + why); };
  auto token = [&]() {
    for (;;) {
      while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    return bytes.substr(start, pos - start);
  };
  if (token() != "P6") throw fail("missing P6 magic");
  Image img;
  try {
    img.width = std::stoi(token());
    img.height = std::stoi(token());
    if (std::stoi(token()) != 255) throw fail("maxval must be 255");
  } catch (const std::logic_error&) {
    throw fail("malformed header");
  }
  ++pos;  // single whitespace byte before the raster
  const std::size_t need = 3 * static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  if (img.width <= 0 || img.height <= 0 || bytes.size() < pos + need) throw fail("truncated raster");
  img.rgb.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                 bytes.begin() + static_cast<std::ptrdiff_t>(pos + need));
  return img;
}

inline Image read_ppm(const std::string& path) { return decode_ppm(detail::read_bytes(path), path); }

/// 8-bit RGB PNG through libpng.
inline void write_png(const Image& img, const std::string& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw IoError(ErrorKind::io_failure, path, "cannot open for writing: " + detail::errno_text());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError(ErrorKind::io_failure, path, "libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(ErrorKind::io_failure, path, "libpng write failed");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int j = 0; j < img.height; ++j) {
    png_write_row(png, img.rgb.data() + 3 * static_cast<std::size_t>(j) * static_cast<std::size_t>(img.width));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(fp.get()) != 0) throw IoError(ErrorKind::io_failure, path, "write failed: " + detail::errno_text());
}

inline void write_image(const Image& img, const std::string& path, ImageFormat format) {
  if (format == ImageFormat::ppm) {
    detail::write_bytes(path, encode_ppm(img));
  } else {
    write_png(img, path);
  }
}

// Grid file layout, all integers and floats little-endian:
//   offset  size  field
//        0     6  magic "RDGRID"
//        6     1  version (1)
//        7     1  mode (0 parameter, 1 dynamical)
//        8    32  x_min, x_max, y_min, y_max as f64
//       40     4  width  (u32)
//       44     4  height (u32)
//       48     4  max_iter (u32)
//       52     4  cell size in bytes (u32, = 8)
//       56        cells, row-major from the top row:
//                 u8 outcome, u8 flags (bit 0: degenerate), u16 attractor, u32 iterations
inline constexpr char kGridMagic[6] = {'R', 'D', 'G', 'R', 'I', 'D'};
inline constexpr std::uint8_t kGridVersion = 1;
inline constexpr std::size_t kGridHeaderSize = 56;
inline constexpr std::size_t kGridCellSize = 8;

namespace detail {

template <class U>
void put_le(std::string& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <class U>
U get_le(const std::string& in, std::size_t offset) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    v |= static_cast<U>(static_cast<U>(static_cast<unsigned char>(in[offset + i])) << (8 * i));
  }
  return v;
}

}  // namespace detail

inline std::string encode_grid(const PlaneGrid& g) {
  std::string out(kGridMagic, sizeof kGridMagic);
  out.push_back(static_cast<char>(kGridVersion));
  out.push_back(static_cast<char>(g.mode));
  for (double d : {g.window.x_min, g.window.x_max, g.window.y_min, g.window.y_max}) {
    detail::put_le(out, std::bit_cast<std::uint64_t>(d));
  }
  detail::put_le(out, static_cast<std::uint32_t>(g.spec.width));
  detail::put_le(out, static_cast<std::uint32_t>(g.spec.height));
  detail::put_le(out, static_cast<std::uint32_t>(g.max_iter));
  detail::put_le(out, static_cast<std::uint32_t>(kGridCellSize));
  out.reserve(kGridHeaderSize + g.cells.size() * kGridCellSize);
  for (const GridCell& c : g.cells) {
    out.push_back(static_cast<char>(c.outcome));
    out.push_back(static_cast<char>(c.degenerate ? 1 : 0));
    detail::put_le(out, c.attractor);
    detail::put_le(out, c.iterations);
  }
  return out;
}

inline PlaneGrid decode_grid(const std::string& in, const std::string& path = "<memory>") {
  auto fail = [&](const std::string& why) { return IoError(ErrorKind::format_mismatch, path, why); };
  if (in.size() < kGridHeaderSize || std::memcmp(in.data(), kGridMagic, sizeof kGridMagic) != 0) {
    throw fail("not a grid file (expected magic RDGRID, version " + std::to_string(kGridVersion) + ")");
  }
  const auto version = static_cast<std::uint8_t>(in[6]);
  if (version != kGridVersion) {
    throw fail("unsupported grid version " + std::to_string(version) + " (this reader handles version " +
               std::to_string(kGridVersion) + ")");
  }
  PlaneGrid g;
  const auto mode = static_cast<std::uint8_t>(in[7]);
  if (mode > 1) throw fail("bad mode byte " + std::to_string(mode));
  g.mode = static_cast<PlaneMode>(mode);
  g.window.x_min = std::bit_cast<double>(detail::get_le<std::uint64_t>(in, 8));
  g.window.x_max = std::bit_cast<double>(detail::get_le<std::uint64_t>(in, 16));
  g.window.y_min = std::bit_cast<double>(detail::get_le<std::uint64_t>(in, 24));
  g.window.y_max = std::bit_cast<double>(detail::get_le<std::uint64_t>(in, 32));
  g.spec.width = static_cast<int>(detail::get_le<std::uint32_t>(in, 40));
  g.spec.height = static_cast<int>(detail::get_le<std::uint32_t>(in, 44));
  g.max_iter = static_cast<int>(detail::get_le<std::uint32_t>(in, 48));
  if (detail::get_le<std::uint32_t>(in, 52) != kGridCellSize) throw fail("unexpected cell size");
  const std::size_t count = static_cast<std::size_t>(g.spec.width) * static_cast<std::size_t>(g.spec.height);
  if (in.size() != kGridHeaderSize + count * kGridCellSize) throw fail("file size does not match header");
  g.cells.resize(count);
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t o = kGridHeaderSize + c * kGridCellSize;
    const auto outcome = static_cast<std::uint8_t>(in[o]);
    if (outcome > 3) throw fail("bad outcome code at cell " + std::to_string(c));
    g.cells[c].outcome = static_cast<Outcome>(outcome);
    g.cells[c].degenerate = (static_cast<std::uint8_t>(in[o + 1]) & 1) != 0;
    g.cells[c].attractor = detail::get_le<std::uint16_t>(in, o + 2);
    g.cells[c].iterations = detail::get_le<std::uint32_t>(in, o + 4);
  }
  return g;
}

inline void write_grid(const PlaneGrid& g, const std::string& path) { detail::write_bytes(path, encode_grid(g)); }

inline PlaneGrid read_grid(const std::string& path) { return decode_grid(detail::read_bytes(path), path); }

inline std::string outcome_counts_csv(const PlaneGrid& g) {
  const OutcomeCounts c = count_outcomes(g);
  std::ostringstream out;
  out << "outcome,count\n";
  for (Outcome o : {Outcome::to_zero, Outcome::to_infinity, Outcome::to_strange, Outcome::undecided}) {
    out << to_string(o) << ',' << c[o] << '\n';
  }
  out << "degenerate," << c.degenerate << '\n';
  return out.str();
}

inline void write_text(const std::string& text, const std::string& path) { detail::write_bytes(path, text); }

}  // namespace rootdyn
