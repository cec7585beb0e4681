#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "ladhtp/mnistio.hpp"

using namespace ladhtp;

namespace {

const std::vector<std::uint8_t> kFixture{0x00, 0x00, 0x08, 0x03, 0, 0, 0, 1, 0, 0,
                                         0,    2,    0,    0,    0, 2, 0, 255, 0, 128};

}  // namespace

TEST_CASE("handcrafted 20-byte fixture") {
  const auto img = parse_idx_images(kFixture);
  CHECK(img.count == 1);
  CHECK(img.rows == 2);
  CHECK(img.cols == 2);
  CHECK(img.pixels == std::vector<std::uint8_t>{0, 255, 0, 128});
  CHECK(serialize_idx_images(img) == kFixture);
}

TEST_CASE("magic mismatch and truncation") {
  auto bytes = kFixture;
  bytes[3] = 0x01;
  try {
    parse_idx_images(bytes);
    FAIL("expected MagicMismatch");
  } catch (const IdxError& e) {
    CHECK(e.kind() == IdxError::Kind::MagicMismatch);
  }
  bytes = kFixture;
  bytes.pop_back();
  try {
    parse_idx_images(bytes);
    FAIL("expected Truncated");
  } catch (const IdxError& e) {
    CHECK(e.kind() == IdxError::Kind::Truncated);
  }
  try {
    parse_idx_images(std::vector<std::uint8_t>(kFixture.begin(), kFixture.begin() + 10));
    FAIL("expected Truncated");
  } catch (const IdxError& e) {
    CHECK(e.kind() == IdxError::Kind::Truncated);
  }
  bytes = kFixture;
  bytes.push_back(7);
  try {
    parse_idx_images(bytes);
    FAIL("expected TrailingData");
  } catch (const IdxError& e) {
    CHECK(e.kind() == IdxError::Kind::TrailingData);
  }
}

TEST_CASE("image_to_signal") {
  auto sig = image_to_signal(std::vector<std::uint8_t>(4, 0));
  CHECK(sig.s == 0);
  CHECK(sig.signal == Vector(4, 0.0));

  sig = image_to_signal(std::vector<std::uint8_t>{0, 0, 255});
  CHECK(sig.s == 1);
  CHECK(sig.signal == Vector{0, 0, 1.0});

  sig = image_to_signal(std::vector<std::uint8_t>{0, 255, 0, 128});
  CHECK(sig.s == 2);
  CHECK(sig.signal == Vector{0, 1.0, 0, 128.0 / 255.0});
  CHECK(sig.s == support_of(sig.signal).size());
}

TEST_CASE("multi-image round trip through a file") {
  IdxImages img;
  img.count = 3;
  img.rows = 4;
  img.cols = 5;
  for (std::size_t i = 0; i < 60; ++i) img.pixels.push_back(static_cast<std::uint8_t>(i * 37));
  const auto path = std::filesystem::temp_directory_path() / "ladhtp_idx_roundtrip.idx";
  {
    const auto bytes = serialize_idx_images(img);
    std::ofstream os(path, std::ios::binary);
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  const auto back = read_idx_file(path.string());
  CHECK(back == img);
  CHECK(back.image(2).size() == 20);
  CHECK(back.image(2)[0] == img.pixels[40]);
  CHECK_THROWS_AS(back.image(3), std::out_of_range);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_idx_file(path.string()), std::invalid_argument);
}
