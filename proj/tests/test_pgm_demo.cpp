#include <cstdint>
#include <set>
#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "crs/demo.hpp"
#include "crs/pgm.hpp"

using namespace crs;

namespace {

Pgm sample_image() {
  // Include bytes that look like whitespace to the header tokenizer.
  return Pgm{3, 2, {0, 0x20, 0x0A, 127, 200, 255}};
}

std::string serialized(Pgm const& img) {
  std::ostringstream os;
  write_pgm(os, img);
  return os.str();
}

Pgm parse(std::string const& text) {
  std::istringstream is(text);
  return read_pgm(is);
}

}  // namespace

TEST_CASE("pgm round trip", "[pgm]") {
  Pgm const img = sample_image();
  REQUIRE(parse(serialized(img)) == img);
}

TEST_CASE("pgm header comments and whitespace", "[pgm]") {
  std::string text = "P5 # binary greyscale\n# full-line comment\n3\t2\n255\n";
  text.append("abcdef");
  Pgm const img = parse(text);
  REQUIRE(img.width == 3);
  REQUIRE(img.height == 2);
  REQUIRE(img.pixels == std::vector<std::uint8_t>{'a', 'b', 'c', 'd', 'e',
                                                  'f'});
}

TEST_CASE("pgm rejects other formats", "[pgm]") {
  REQUIRE_THROWS_AS(parse("P2\n2 2\n255\n0 1 2 3\n"), UnsupportedFormatError);
  REQUIRE_THROWS_AS(parse("P6\n1 1\n255\nabc"), UnsupportedFormatError);
  REQUIRE_THROWS_AS(parse("P4\n1 1\nx"), MagicMismatchError);
  REQUIRE_THROWS_AS(parse("hello"), MagicMismatchError);
}

TEST_CASE("pgm header validation", "[pgm]") {
  REQUIRE_THROWS_AS(parse("P5\n1 1\n65535\nxy"), UnsupportedFormatError);
  REQUIRE_THROWS_AS(parse("P5\n1 1\n0\nx"), UnsupportedFormatError);
  REQUIRE_THROWS_AS(parse("P5\n0 4\n255\n"), FormatError);
  REQUIRE_THROWS_AS(parse("P5\n3x 2\n255\nabcdef"), FormatError);
  REQUIRE_THROWS_AS(parse("P5\n3 2"), TruncatedStreamError);
  REQUIRE_THROWS_AS(parse("P5\n3 2\n255\nabc"), TruncatedStreamError);
}

TEST_CASE("pgm write validates the buffer", "[pgm]") {
  std::ostringstream os;
  REQUIRE_THROWS_AS(write_pgm(os, Pgm{2, 2, {1, 2, 3}}),
                    std::invalid_argument);
}

TEST_CASE("image demo key parameters", "[demo]") {
  SymmetricKey const key = make_image_demo_key();
  REQUIRE(key.modulus.value == 257);
  REQUIRE(key.group_order == 256);
  REQUIRE(key.encrypt_exp == 75);
  REQUIRE(key.decrypt_exp == 99);
  REQUIRE(key.encrypt_exp * key.decrypt_exp % 256 == 1);
  REQUIRE(key.secret == 201);
  REQUIRE(key.index_bits == 32);

  REQUIRE_THROWS_AS(make_image_demo_key(4), NotCoprimeError);
  REQUIRE_THROWS_AS(make_image_demo_key(75, 201, 12), std::invalid_argument);
  REQUIRE_THROWS_AS(make_image_demo_key(75, 201, 0), std::invalid_argument);
}

TEST_CASE("image demo on a constant image", "[demo]") {
  Pgm flat{64, 64, std::vector<std::uint8_t>(64 * 64, 200)};
  SymmetricKey const key = make_image_demo_key();

  Rng rng(42);
  ImageDemoResult const res = image_demo(flat, key, rng);
  REQUIRE(res.original == flat);
  REQUIRE(res.cs_indices.size() == flat.pixels.size());

  std::set<std::uint8_t> group_bytes(res.group_image.pixels.begin(),
                                     res.group_image.pixels.end());
  std::set<std::uint8_t> cs_bytes(res.cs_image.pixels.begin(),
                                  res.cs_image.pixels.end());
  REQUIRE(group_bytes.size() == 1);
  REQUIRE(*group_bytes.begin() == pow_mod(200, 75, 257));
  REQUIRE(cs_bytes.size() >= 32);

  REQUIRE(res.diffusion.size() == 1);
  REQUIRE(res.diffusion.front().value == 200);
  REQUIRE(res.diffusion.front().pixels == flat.pixels.size());
  REQUIRE(res.diffusion.front().group_distinct == 1);
  REQUIRE(res.diffusion.front().cs_distinct == cs_bytes.size());

  REQUIRE(image_demo_restore(res.cs_image, res.cs_indices, key) == flat);

  // Same seed, same output; the randomness is all in the rng.
  Rng again(42);
  ImageDemoResult const rerun = image_demo(flat, key, again);
  REQUIRE(rerun.cs_image == res.cs_image);
  REQUIRE(rerun.cs_indices == res.cs_indices);
}

TEST_CASE("image demo preserves structure only in group mode", "[demo]") {
  Pgm const img{2, 2, {10, 20, 10, 30}};
  SymmetricKey const key = make_image_demo_key();
  Rng rng(7);
  ImageDemoResult const res = image_demo(img, key, rng);
  REQUIRE(res.group_image.pixels[0] == res.group_image.pixels[2]);
  REQUIRE(res.group_image.pixels[0] != res.group_image.pixels[1]);
  REQUIRE(res.diffusion.size() == 3);
  REQUIRE(res.diffusion.front().value == 10);
  REQUIRE(res.diffusion.front().pixels == 2);
  REQUIRE(res.diffusion.front().group_distinct == 1);
  REQUIRE(image_demo_restore(res.cs_image, res.cs_indices, key) == img);
}

TEST_CASE("image demo requires the byte-sized modulus", "[demo]") {
  Rng rng(1);
  SymmetricKey const other = keygen(Modulus::of(263), rng, 8);
  Pgm const img{1, 1, {5}};
  Rng demo_rng(2);
  REQUIRE_THROWS_AS(image_demo(img, other, demo_rng), BadModulusError);
}

TEST_CASE("index sidecar round trip", "[demo]") {
  std::vector<u64> const indices{0, 1, 0xDEADBEEF, 0xFFFFFFFF};
  auto const data = encode_index_sidecar(indices, 32);
  REQUIRE(data.size() == 15 + indices.size() * 4);
  REQUIRE(std::string(data.begin(), data.begin() + 7) == "CRSIDX1");
  REQUIRE(decode_index_sidecar(data, 32) == indices);

  auto const empty = encode_index_sidecar({}, 16);
  REQUIRE(empty.size() == 15);
  REQUIRE(decode_index_sidecar(empty, 16).empty());
}

TEST_CASE("index sidecar validation", "[demo]") {
  REQUIRE_THROWS_AS(encode_index_sidecar({1}, 12), std::invalid_argument);
  REQUIRE_THROWS_AS(decode_index_sidecar({1, 2, 3}, 32),
                    TruncatedStreamError);

  auto data = encode_index_sidecar({1, 2}, 32);
  data.pop_back();
  REQUIRE_THROWS_AS(decode_index_sidecar(data, 32), TruncatedStreamError);

  auto bad = encode_index_sidecar({1, 2}, 32);
  bad[0] = 'X';
  REQUIRE_THROWS_AS(decode_index_sidecar(bad, 32), MagicMismatchError);

  // Reading with the wrong width breaks the length check.
  auto const narrow = encode_index_sidecar({1, 2}, 16);
  REQUIRE_THROWS_AS(decode_index_sidecar(narrow, 32), TruncatedStreamError);
}

TEST_CASE("image demo restore validates the sidecar count", "[demo]") {
  SymmetricKey const key = make_image_demo_key();
  Pgm const img{2, 1, {1, 2}};
  REQUIRE_THROWS_AS(image_demo_restore(img, {0}, key), FormatError);
}
