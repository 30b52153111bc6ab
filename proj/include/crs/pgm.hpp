#ifndef CRS_PGM_HPP_
#define CRS_PGM_HPP_

// Minimal binary PGM (P5) reader/writer, 8-bit depth only.

#include <cctype>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "crs/error.hpp"

namespace crs {

struct Pgm {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, width * height bytes

  bool operator==(Pgm const&) const = default;
};

namespace detail {

// Next whitespace-separated header token, skipping '#' comments.
inline std::string pgm_token(std::istream& is) {
  std::string tok;
  int c;
  while ((c = is.get()) != EOF) {
    if (c == '#') {
      while ((c = is.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) {
        return tok;
      }
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) {
    throw TruncatedStreamError("pgm: header ended early");
  }
  return tok;
}

inline std::size_t pgm_number(std::istream& is, char const* what) {
  std::string const tok = pgm_token(is);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &used);
  } catch (std::exception const&) {
    throw FormatError(std::string("pgm: bad ") + what);
  }
  if (used != tok.size()) {
    throw FormatError(std::string("pgm: bad ") + what);
  }
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline Pgm read_pgm(std::istream& is) {
  std::string const magic = detail::pgm_token(is);
  if (magic == "P2" || magic == "P3" || magic == "P6") {
    throw UnsupportedFormatError("pgm: only binary greyscale (P5) supported");
  }
  if (magic != "P5") {
    throw MagicMismatchError("pgm: magic is not P5");
  }
  Pgm img;
  img.width = detail::pgm_number(is, "width");
  img.height = detail::pgm_number(is, "height");
  std::size_t const maxval = detail::pgm_number(is, "maxval");
  if (img.width == 0 || img.height == 0) {
    throw FormatError("pgm: empty image");
  }
  if (maxval == 0 || maxval > 255) {
    throw UnsupportedFormatError("pgm: only 8-bit depth supported");
  }
  // The single whitespace byte after maxval was consumed by the tokenizer.
  img.pixels.resize(img.width * img.height);
  is.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(is.gcount()) != img.pixels.size()) {
    throw TruncatedStreamError("pgm: pixel data ended early");
  }
  return img;
}

inline void write_pgm(std::ostream& os, Pgm const& img) {
  if (img.pixels.size() != img.width * img.height) {
    throw std::invalid_argument("pgm: pixel buffer does not match the size");
  }
  os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  os.write(reinterpret_cast<char const*>(img.pixels.data()),
           static_cast<std::streamsize>(img.pixels.size()));
}

}  // namespace crs

#endif  // CRS_PGM_HPP_
