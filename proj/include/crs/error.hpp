#ifndef CRS_ERROR_HPP_
#define CRS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace crs {

// Base class for all library errors that represent violated domain
// preconditions or malformed external data.  Plumbing-level misuse
// (out-of-range indices, empty ranges, ...) throws std::invalid_argument.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arithmetic arguments that must be coprime are not.
struct NotCoprimeError final : Error {
  using Error::Error;
};

// A squarefree modulus was required (the semilattice decomposition of Z_n
// only exists when n is a product of distinct primes).
struct NotSquarefreeError final : Error {
  using Error::Error;
};

// An element was passed with a component label it does not belong to.
struct NotInComponentError final : Error {
  using Error::Error;
};

// A structure map was requested for indices that are not nested (T must be
// a subset of S to map the S-component down to the T-component).
struct NotSubsetError final : Error {
  using Error::Error;
};

// Key generation requires a prime or a product of two distinct primes.
struct BadModulusError final : Error {
  using Error::Error;
};

// A claimed divisor does not divide the argument.
struct NotDivisorError final : Error {
  using Error::Error;
};

// A value expected to be a unit of the ambient ring is not.
struct NotUnitError final : Error {
  using Error::Error;
};

// The witness construction found no admissible inner exponent k for the
// group order at hand (possible for some even orders, e.g. 2 and 6).
struct NoSuitableKError final : Error {
  using Error::Error;
};

// The target element is provably outside the imitation set.
struct NotAMimicError final : Error {
  using Error::Error;
};

// Two ciphertext blocks that must share an index do not.
struct IndexMismatchError final : Error {
  using Error::Error;
};

// An enumeration was rejected because its cost estimate exceeds the cap.
struct CostCapError final : Error {
  using Error::Error;
};

// External data (key file, ciphertext stream, image) did not parse.
struct FormatError : Error {
  using Error::Error;
};

// Leading magic bytes of a file are wrong.
struct MagicMismatchError final : FormatError {
  using FormatError::FormatError;
};

// A stream ended in the middle of a fixed-size record.
struct TruncatedStreamError final : FormatError {
  using FormatError::FormatError;
};

// Stream/key/mode combination is inconsistent.
struct ModeMismatchError final : FormatError {
  using FormatError::FormatError;
};

// Recognisable but unsupported input format (e.g. an ASCII or 16-bit PGM).
struct UnsupportedFormatError final : FormatError {
  using FormatError::FormatError;
};

}  // namespace crs

#endif  // CRS_ERROR_HPP_
