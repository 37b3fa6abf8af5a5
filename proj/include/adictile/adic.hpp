#pragma once

// Truncated 2-adic integers.
//
// An Adic keeps the low N bits (1 <= N <= 64) of a 2-adic expansion
// sum_i a_i 2^i. Arithmetic is exact modulo 2^N, and negative integers
// embed as two's complement, which coincides with the 2-adic expansion
// (-1 = ...1111).

#include <cstdint>
#include <optional>
#include <string>

namespace adictile {

inline constexpr int kDefaultPrecision = 64;

// Valuation of a coordinate: the k in x = (2i+1) 2^k, or Unranked when all
// retained bits are zero.
class Rank {
 public:
  constexpr Rank() = default;
  constexpr explicit Rank(int value) : value_(value) {}
  static constexpr Rank unranked() { return Rank(); }

  constexpr bool ranked() const { return value_ >= 0; }
  // Precondition: ranked().
  constexpr int value() const { return value_; }

  friend constexpr bool operator==(Rank, Rank) = default;

 private:
  int value_ = -1;
};

std::string to_string(Rank r);

class Adic {
 public:
  // Zero at the default precision.
  Adic() = default;
  Adic(std::uint64_t bits, int precision);

  static Adic from_int(std::int64_t n, int precision = kDefaultPrecision);
  static Adic zero(int precision = kDefaultPrecision) { return Adic(0, precision); }
  static Adic one(int precision = kDefaultPrecision) { return Adic(1, precision); }
  // Parses "0x..." (or bare hex digits); bits above the precision must be zero.
  static Adic from_hex(const std::string& text, int precision = kDefaultPrecision);

  int precision() const { return precision_; }
  std::uint64_t bits() const { return bits_; }
  int bit(int i) const;
  bool is_zero() const { return bits_ == 0; }
  bool is_odd() const { return (bits_ & 1u) != 0; }

  // Signed reading of the retained bits; faithful for |n| < 2^(N-1).
  std::int64_t to_int() const;
  // Low m bits (m <= N) as an unsigned residue.
  std::uint64_t residue(int m) const;
  // Same value with everything above bit m-1 cleared.
  Adic truncated(int m) const;

  // Lowercase hex, most significant retained digit first, e.g. "0xff".
  std::string to_hex() const;

  friend Adic operator+(const Adic& a, const Adic& b);
  friend Adic operator-(const Adic& a, const Adic& b);
  friend Adic operator*(const Adic& a, const Adic& b);
  Adic operator-() const;
  Adic& operator+=(const Adic& b) { return *this = *this + b; }
  Adic& operator-=(const Adic& b) { return *this = *this - b; }

  friend bool operator==(const Adic&, const Adic&) = default;

 private:
  std::uint64_t mask() const;

  std::uint64_t bits_ = 0;
  int precision_ = kDefaultPrecision;
};

Rank valuation(const Adic& a);
Adic add(const Adic& a, const Adic& b);
Adic neg(const Adic& a);
Adic mul(const Adic& a, const Adic& b);
// Throws EvenNotInvertible when bit 0 is clear.
Adic invert_odd(const Adic& a);
// 2^(1-v) with v = valuation(a-b); 0 when a == b at precision.
double shift_metric(const Adic& a, const Adic& b);

// Valuation of a plain integer (x != 0).
int valuation(std::int64_t x);

}  // namespace adictile
