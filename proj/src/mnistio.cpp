#include "ladhtp/mnistio.hpp"

#include <fstream>
#include <iterator>

namespace ladhtp {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

}  // namespace

std::span<const std::uint8_t> IdxImages::image(std::size_t index) const {
  if (index >= count) throw std::out_of_range("IdxImages: image index out of range");
  const std::size_t size = std::size_t{rows} * cols;
  return std::span<const std::uint8_t>(pixels).subspan(index * size, size);
}

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
  using K = IdxError::Kind;
  if (bytes.size() < 4) throw IdxError(K::Truncated, "idx: truncated header");
  if (read_be32(bytes, 0) != kIdxU8Images)
    throw IdxError(K::MagicMismatch, "idx: magic is not 0x00000803 (u8 images)");
  if (bytes.size() < 16) throw IdxError(K::Truncated, "idx: truncated header");

  IdxImages img;
  img.count = read_be32(bytes, 4);
  img.rows = read_be32(bytes, 8);
  img.cols = read_be32(bytes, 12);
  const std::uint64_t payload = std::uint64_t{img.count} * img.rows * img.cols;
  const std::uint64_t available = bytes.size() - 16;
  if (available < payload) throw IdxError(K::Truncated, "idx: truncated pixel data");
  if (available > payload) throw IdxError(K::TrailingData, "idx: trailing bytes after pixel data");
  img.pixels.assign(bytes.begin() + 16, bytes.end());
  return img;
}

std::vector<std::uint8_t> serialize_idx_images(const IdxImages& images) {
  if (images.pixels.size() != std::size_t{images.count} * images.rows * images.cols)
    throw std::invalid_argument("idx: pixel count does not match dimensions");
  std::vector<std::uint8_t> out;
  out.reserve(16 + images.pixels.size());
  write_be32(out, kIdxU8Images);
  write_be32(out, images.count);
  write_be32(out, images.rows);
  write_be32(out, images.cols);
  out.insert(out.end(), images.pixels.begin(), images.pixels.end());
  return out;
}

IdxImages read_idx_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("idx: cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                  std::istreambuf_iterator<char>());
  try {
    return parse_idx_images(bytes);
  } catch (const IdxError& e) {
    throw IdxError(e.kind(), path + ": " + e.what());
  }
}

ImageSignal image_to_signal(std::span<const std::uint8_t> pixels) {
  ImageSignal out;
  out.signal.resize(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    out.signal[i] = static_cast<double>(pixels[i]) / 255.0;
    if (pixels[i] != 0) ++out.s;
  }
  return out;
}

}  // namespace ladhtp
