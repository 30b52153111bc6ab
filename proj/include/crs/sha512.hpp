#ifndef CRS_SHA512_HPP_
#define CRS_SHA512_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include <openssl/evp.h>

namespace crs {

// One-shot SHA-512 via OpenSSL.  Pinned against FIPS 180 test vectors in the
// test suite.
inline std::array<std::uint8_t, 64> sha512(std::uint8_t const* data,
                                           std::size_t len) {
  std::array<std::uint8_t, 64> digest;
  unsigned int out_len = 0;
  if (EVP_Digest(data, len, digest.data(), &out_len, EVP_sha512(), nullptr) !=
          1 ||
      out_len != digest.size()) {
    throw std::runtime_error("sha512: digest computation failed");
  }
  return digest;
}

}  // namespace crs

#endif  // CRS_SHA512_HPP_
