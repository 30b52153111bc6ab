#ifndef CRS_IO_HPP_
#define CRS_IO_HPP_

// External formats.
//
// Key file (text, one field per line):
//   CRSKEY1
//   <modulus, decimal>
//   <encrypt exponent, decimal>
//   <secret, 16 hex digits>
//   <index bits, decimal>
// The decryption exponent is rederived on load.
//
// Ciphertext stream (binary, all integers big-endian):
//   magic "CRS1" | mode byte (0 group, 1 completely simple, 2 public-key)
//   | modulus (8 bytes) | index-bits byte | blocks...
// Each block carries an index field of index-bits/8 bytes followed by a body
// of the minimal width holding modulus-1.  Group mode omits the index field
// and writes 0 in the header slot.  Public-key mode transports the masked
// sandwich entry in the index field, so its header index-bits equals eight
// times the body width.
//
// Byte streams are cut into blocks of ceil(log2 N) - 1 bits (8 bits for the
// canonical N = 257), most significant bit first, the last block zero-padded.
// Decryption emits floor(bits/8) bytes, which restores the input exactly.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "crs/cipher.hpp"
#include "crs/error.hpp"
#include "crs/modmath.hpp"
#include "crs/rng.hpp"

namespace crs {

enum class CipherMode : std::uint8_t {
  group = 0,
  completely_simple = 1,
  cr_rsa = 2,
};

inline char const* mode_name(CipherMode m) {
  switch (m) {
    case CipherMode::group: return "group";
    case CipherMode::completely_simple: return "cs";
    case CipherMode::cr_rsa: return "crrsa";
  }
  return "?";
}

inline constexpr char kKeyMagic[] = "CRSKEY1";
inline constexpr char kStreamMagic[] = "CRS1";

// Plaintext bits per block for a modulus: every block value must stay below
// the modulus.  Needs N >= 3 so that at least one bit fits.
inline unsigned block_bits(u64 modulus) {
  if (modulus < 3) {
    throw BadModulusError("block_bits: modulus must be at least 3");
  }
  return std::bit_width(modulus - 1) - 1;
}

// Bytes needed to hold modulus - 1.
inline unsigned residue_width(u64 modulus) {
  if (modulus < 2) {
    throw std::invalid_argument("residue_width: modulus must be at least 2");
  }
  return (std::bit_width(modulus - 1) + 7) / 8;
}

namespace detail {

inline void put_be(std::vector<std::uint8_t>& out, u64 v, unsigned width) {
  for (unsigned b = 0; b < width; ++b) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * (width - 1 - b))));
  }
}

inline u64 get_be(std::vector<std::uint8_t> const& in, std::size_t offset,
                  unsigned width) {
  u64 v = 0;
  for (unsigned b = 0; b < width; ++b) {
    v = v << 8 | in[offset + b];
  }
  return v;
}

// MSB-first bit cursor over a byte buffer; reads past the end yield zeros.
class BitReader {
 public:
  explicit BitReader(std::vector<std::uint8_t> const& data) : data_(data) {}

  bool done() const { return pos_ >= data_.size() * 8; }

  u64 next(unsigned bits) {
    u64 v = 0;
    for (unsigned i = 0; i < bits; ++i, ++pos_) {
      unsigned bit = 0;
      if (pos_ < data_.size() * 8) {
        bit = data_[pos_ / 8] >> (7 - pos_ % 8) & 1;
      }
      v = v << 1 | bit;
    }
    return v;
  }

 private:
  std::vector<std::uint8_t> const& data_;
  std::size_t pos_ = 0;
};

// MSB-first bit accumulator; trailing bits short of a byte are dropped.
class BitWriter {
 public:
  void append(u64 v, unsigned bits) {
    for (unsigned i = 0; i < bits; ++i) {
      acc_ = acc_ << 1 | (v >> (bits - 1 - i) & 1);
      if (++fill_ == 8) {
        out_.push_back(static_cast<std::uint8_t>(acc_));
        acc_ = 0;
        fill_ = 0;
      }
    }
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
  unsigned acc_ = 0;
  unsigned fill_ = 0;
};

}  // namespace detail

inline void write_key(std::ostream& os, SymmetricKey const& key) {
  os << kKeyMagic << '\n' << key.modulus.value << '\n' << key.encrypt_exp
     << '\n';
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(key.secret));
  os << hex << '\n' << key.index_bits << '\n';
}

inline SymmetricKey read_key(std::istream& is) {
  auto next_line = [&is](char const* what) {
    std::string line;
    if (!std::getline(is, line)) {
      throw FormatError(std::string("key file: missing ") + what);
    }
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    return line;
  };
  auto parse_u64 = [](std::string const& s, int base, char const* what) {
    std::size_t used = 0;
    u64 v = 0;
    try {
      v = std::stoull(s, &used, base);
    } catch (std::exception const&) {
      throw FormatError(std::string("key file: bad ") + what);
    }
    if (used != s.size() || s.empty()) {
      throw FormatError(std::string("key file: bad ") + what);
    }
    return v;
  };

  if (next_line("magic") != kKeyMagic) {
    throw MagicMismatchError("key file: magic is not CRSKEY1");
  }
  u64 const modulus_value = parse_u64(next_line("modulus"), 10, "modulus");
  u64 const encrypt_exp = parse_u64(next_line("exponent"), 10, "exponent");
  u64 const secret = parse_u64(next_line("secret"), 16, "secret");
  u64 const index_bits = parse_u64(next_line("index bits"), 10, "index bits");

  SymmetricKey key;
  key.modulus = Modulus::of(modulus_value);
  bool const two_primes =
      key.modulus.factors.size() == 2 && key.modulus.is_squarefree();
  if (!key.modulus.is_prime() && !two_primes) {
    throw BadModulusError("key file: modulus is neither prime nor a product "
                          "of two distinct primes");
  }
  key.group_order = key.modulus.phi;
  key.encrypt_exp = encrypt_exp;
  key.decrypt_exp =
      key.group_order == 1
          ? 1
          : mod_inv(static_cast<i64>(encrypt_exp % key.group_order),
                    key.group_order);
  key.secret = secret;
  if (index_bits == 0 || index_bits > 64) {
    throw FormatError("key file: index bits out of range");
  }
  key.index_bits = static_cast<unsigned>(index_bits);
  return key;
}

struct StreamHeader {
  CipherMode mode;
  u64 modulus;
  unsigned index_bits;
};

inline constexpr std::size_t kStreamHeaderSize = 4 + 1 + 8 + 1;

namespace detail {

inline void write_stream_header(std::vector<std::uint8_t>& out,
                                StreamHeader const& h) {
  out.insert(out.end(), kStreamMagic, kStreamMagic + 4);
  out.push_back(static_cast<std::uint8_t>(h.mode));
  put_be(out, h.modulus, 8);
  out.push_back(static_cast<std::uint8_t>(h.index_bits));
}

}  // namespace detail

inline StreamHeader parse_stream_header(std::vector<std::uint8_t> const& in) {
  if (in.size() < kStreamHeaderSize) {
    throw TruncatedStreamError("stream: shorter than the header");
  }
  if (!std::equal(kStreamMagic, kStreamMagic + 4, in.begin())) {
    throw MagicMismatchError("stream: magic is not CRS1");
  }
  if (in[4] > 2) {
    throw FormatError("stream: unknown mode byte");
  }
  StreamHeader h;
  h.mode = static_cast<CipherMode>(in[4]);
  h.modulus = detail::get_be(in, 5, 8);
  h.index_bits = in[13];
  if (h.modulus < 2) {
    throw FormatError("stream: modulus field out of range");
  }
  return h;
}

// Encrypt a byte buffer into a ciphertext stream.
inline std::vector<std::uint8_t> encrypt_stream(
    CipherMode mode, SymmetricKey const& key,
    std::vector<std::uint8_t> const& plain, Rng& rng) {
  u64 const modulus = key.modulus.value;
  unsigned const bits = block_bits(modulus);
  unsigned const body_w = residue_width(modulus);
  unsigned index_bits = 0;
  if (mode == CipherMode::completely_simple) {
    if (key.index_bits % 8 != 0) {
      throw std::invalid_argument(
          "encrypt_stream: stream index width must be whole bytes");
    }
    index_bits = key.index_bits;
  } else if (mode == CipherMode::cr_rsa) {
    index_bits = 8 * body_w;
  }

  std::vector<std::uint8_t> out;
  out.reserve(kStreamHeaderSize +
              (plain.size() * 8 / bits + 1) * (index_bits / 8 + body_w));
  detail::write_stream_header(out, {mode, modulus, index_bits});

  std::size_t const n_blocks = (plain.size() * 8 + bits - 1) / bits;
  detail::BitReader reader(plain);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    u64 const v = reader.next(bits);
    switch (mode) {
      case CipherMode::group:
        detail::put_be(out, group_encrypt(v, key.encrypt_exp, modulus),
                       body_w);
        break;
      case CipherMode::completely_simple: {
        CiphertextBlock const blk = cs_encrypt(v, key, rng);
        detail::put_be(out, blk.index, index_bits / 8);
        detail::put_be(out, blk.body, body_w);
        break;
      }
      case CipherMode::cr_rsa: {
        CrrsaBlock const blk =
            crrsa_encrypt(v, key.encrypt_exp, key.modulus, rng);
        detail::put_be(out, blk.masked_sandwich, body_w);
        detail::put_be(out, blk.body, body_w);
        break;
      }
    }
  }
  return out;
}

// Decrypt a ciphertext stream produced by encrypt_stream.
inline std::vector<std::uint8_t> decrypt_stream(
    CipherMode mode, SymmetricKey const& key,
    std::vector<std::uint8_t> const& stream) {
  StreamHeader const h = parse_stream_header(stream);
  if (h.mode != mode) {
    throw ModeMismatchError(std::string("stream: mode is ") +
                            mode_name(h.mode) + ", requested " +
                            mode_name(mode));
  }
  if (h.modulus != key.modulus.value) {
    throw ModeMismatchError("stream: modulus does not match the key");
  }
  u64 const modulus = key.modulus.value;
  unsigned const bits = block_bits(modulus);
  unsigned const body_w = residue_width(modulus);
  unsigned index_w = 0;
  if (mode == CipherMode::completely_simple) {
    if (h.index_bits == 0 || h.index_bits % 8 != 0) {
      throw FormatError("stream: index width must be whole bytes");
    }
    index_w = h.index_bits / 8;
  } else if (mode == CipherMode::cr_rsa) {
    if (h.index_bits != 8 * body_w) {
      throw FormatError("stream: index width does not fit the modulus");
    }
    index_w = body_w;
  }

  std::size_t const record = index_w + body_w;
  std::size_t const payload = stream.size() - kStreamHeaderSize;
  if (payload % record != 0) {
    throw TruncatedStreamError("stream: ends mid-block");
  }

  detail::BitWriter writer;
  for (std::size_t off = kStreamHeaderSize; off < stream.size();
       off += record) {
    u64 v = 0;
    switch (mode) {
      case CipherMode::group: {
        u64 const body = detail::get_be(stream, off, body_w);
        if (body >= modulus) {
          throw FormatError("stream: body is not a residue");
        }
        v = group_decrypt(body, key.decrypt_exp, modulus);
        break;
      }
      case CipherMode::completely_simple: {
        u64 const index = detail::get_be(stream, off, index_w);
        u64 const body = detail::get_be(stream, off + index_w, body_w);
        if (body >= modulus) {
          throw FormatError("stream: body is not a residue");
        }
        v = cs_decrypt({index, body}, key);
        break;
      }
      case CipherMode::cr_rsa: {
        u64 const masked = detail::get_be(stream, off, index_w);
        u64 const body = detail::get_be(stream, off + index_w, body_w);
        if (masked >= modulus || body >= modulus) {
          throw FormatError("stream: body is not a residue");
        }
        v = crrsa_decrypt({masked, body}, key.decrypt_exp, key.modulus);
        break;
      }
    }
    if (v >> bits != 0) {
      throw FormatError("stream: block decrypts outside the block alphabet");
    }
    writer.append(v, bits);
  }
  return writer.take();
}

}  // namespace crs

#endif  // CRS_IO_HPP_
