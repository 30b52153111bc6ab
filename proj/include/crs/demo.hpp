#ifndef CRS_DEMO_HPP_
#define CRS_DEMO_HPP_

// Pixel-wise encryption demo over N = 257: group mode maps equal pixels to
// equal bytes (structure survives), completely simple mode randomises them.
// The cs image stores only ciphertext bodies so it stays an ordinary 8-bit
// PGM; the per-pixel indices needed for decryption go to a sidecar:
//   magic "CRSIDX1" | count (8 bytes BE) | indices (index-bits/8 bytes each).

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "crs/cipher.hpp"
#include "crs/error.hpp"
#include "crs/io.hpp"
#include "crs/pgm.hpp"
#include "crs/rng.hpp"

namespace crs {

inline constexpr char kSidecarMagic[] = "CRSIDX1";

// The canonical demo parameters.
inline SymmetricKey make_image_demo_key(u64 e = 75, u64 s = 201,
                                        unsigned index_bits = 32) {
  SymmetricKey key;
  key.modulus = Modulus::of(257);
  key.group_order = 256;
  if (std::gcd(e, key.group_order) != 1) {
    throw NotCoprimeError("image demo: exponent must be odd");
  }
  key.encrypt_exp = e;
  key.decrypt_exp = mod_inv(static_cast<i64>(e % key.group_order),
                            key.group_order);
  key.secret = s;
  if (index_bits == 0 || index_bits > 64 || index_bits % 8 != 0) {
    throw std::invalid_argument(
        "image demo: index bits must be a positive multiple of 8");
  }
  key.index_bits = index_bits;
  return key;
}

struct DiffusionRow {
  unsigned value;             // plaintext byte
  std::size_t pixels;         // how many pixels carry it
  std::size_t group_distinct;  // distinct group-mode output bytes
  std::size_t cs_distinct;     // distinct cs-mode output bytes
};

struct ImageDemoResult {
  Pgm original;
  Pgm group_image;
  Pgm cs_image;
  std::vector<u64> cs_indices;      // one per pixel, row-major
  std::vector<DiffusionRow> diffusion;
};

// Encrypt an 8-bit image pixel-wise.  The modulus must be 257: it is the
// smallest prime above the byte alphabet, group-mode outputs of byte inputs
// stay below 256 (the only preimage of 256 under an odd power is 256
// itself), and cs mode redraws the random index whenever a body lands on
// 256 so the body fits a byte; the redraw only changes which index is used,
// never the decryption rule.
inline ImageDemoResult image_demo(Pgm input, SymmetricKey const& key,
                                  Rng& rng) {
  if (key.modulus.value != 257) {
    throw BadModulusError("image demo: modulus must be 257");
  }
  ImageDemoResult out;
  out.group_image = input;
  out.cs_image = input;
  out.cs_indices.resize(input.pixels.size());

  for (std::size_t t = 0; t < input.pixels.size(); ++t) {
    u64 const x = input.pixels[t];
    u64 const gy = group_encrypt(x, key.encrypt_exp, 257);
    if (gy > 255) {
      throw Error("image demo: group body escaped the byte range");
    }
    out.group_image.pixels[t] = static_cast<std::uint8_t>(gy);

    CiphertextBlock blk{};
    bool placed = false;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      blk = cs_encrypt(x, key, rng);
      if (blk.body <= 255) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw Error("image demo: could not fit a cs body into a byte");
    }
    out.cs_image.pixels[t] = static_cast<std::uint8_t>(blk.body);
    out.cs_indices[t] = blk.index;
  }

  // Diffusion: for each plaintext value, how many distinct output bytes
  // each mode produced.
  std::map<unsigned, std::set<std::uint8_t>> group_seen, cs_seen;
  std::map<unsigned, std::size_t> counts;
  for (std::size_t t = 0; t < input.pixels.size(); ++t) {
    unsigned const v = input.pixels[t];
    ++counts[v];
    group_seen[v].insert(out.group_image.pixels[t]);
    cs_seen[v].insert(out.cs_image.pixels[t]);
  }
  for (auto const& [v, n] : counts) {
    out.diffusion.push_back({v, n, group_seen[v].size(), cs_seen[v].size()});
  }
  out.original = std::move(input);
  return out;
}

inline std::vector<std::uint8_t> encode_index_sidecar(
    std::vector<u64> const& indices, unsigned index_bits) {
  if (index_bits == 0 || index_bits % 8 != 0 || index_bits > 64) {
    throw std::invalid_argument("sidecar: index bits must be whole bytes");
  }
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kSidecarMagic, kSidecarMagic + 7);
  detail::put_be(out, indices.size(), 8);
  for (u64 const idx : indices) {
    detail::put_be(out, idx, index_bits / 8);
  }
  return out;
}

inline std::vector<u64> decode_index_sidecar(
    std::vector<std::uint8_t> const& data, unsigned index_bits) {
  if (index_bits == 0 || index_bits % 8 != 0 || index_bits > 64) {
    throw std::invalid_argument("sidecar: index bits must be whole bytes");
  }
  if (data.size() < 15) {
    throw TruncatedStreamError("sidecar: shorter than the header");
  }
  if (!std::equal(kSidecarMagic, kSidecarMagic + 7, data.begin())) {
    throw MagicMismatchError("sidecar: magic is not CRSIDX1");
  }
  u64 const count = detail::get_be(data, 7, 8);
  unsigned const w = index_bits / 8;
  if (data.size() != 15 + count * w) {
    throw TruncatedStreamError("sidecar: length does not match the count");
  }
  std::vector<u64> indices;
  indices.reserve(count);
  for (u64 t = 0; t < count; ++t) {
    indices.push_back(detail::get_be(data, 15 + t * w, w));
  }
  return indices;
}

// Rebuild the plaintext image from the cs image plus its index sidecar.
inline Pgm image_demo_restore(Pgm const& cs_image,
                              std::vector<u64> const& indices,
                              SymmetricKey const& key) {
  if (indices.size() != cs_image.pixels.size()) {
    throw FormatError("restore: sidecar count does not match the image");
  }
  Pgm out = cs_image;
  for (std::size_t t = 0; t < out.pixels.size(); ++t) {
    u64 const g = cs_decrypt({indices[t], cs_image.pixels[t]}, key);
    if (g > 255) {
      throw FormatError("restore: plaintext escaped the byte range");
    }
    out.pixels[t] = static_cast<std::uint8_t>(g);
  }
  return out;
}

}  // namespace crs

#endif  // CRS_DEMO_HPP_
