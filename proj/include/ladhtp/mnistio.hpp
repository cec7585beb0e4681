#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ladhtp/core.hpp"

namespace ladhtp {

/// IDX u8 3-D tensor (magic 0x00000803): count images of rows x cols pixels.
struct IdxImages {
  std::uint32_t count = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint8_t> pixels;  ///< image-major, then row-major

  std::span<const std::uint8_t> image(std::size_t index) const;
  bool operator==(const IdxImages&) const = default;
};

class IdxError : public std::runtime_error {
 public:
  enum class Kind { MagicMismatch, Truncated, TrailingData };
  IdxError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::uint32_t kIdxU8Images = 0x00000803;

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_idx_images(const IdxImages& images);
IdxImages read_idx_file(const std::string& path);

struct ImageSignal {
  Vector signal;  ///< pixels / 255
  std::size_t s = 0;
};

ImageSignal image_to_signal(std::span<const std::uint8_t> pixels);

}  // namespace ladhtp
