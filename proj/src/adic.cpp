#include "adictile/adic.hpp"

#include <bit>
#include <cmath>

#include "adictile/error.hpp"

namespace adictile {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionMismatch: return "PrecisionMismatch";
    case ErrorCode::EvenNotInvertible: return "EvenNotInvertible";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::RankTooLow: return "RankTooLow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::Ambiguous: return "Ambiguous";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotVerified: return "NotVerified";
    case ErrorCode::NotDecomposable: return "NotDecomposable";
    case ErrorCode::MarginTooSmall: return "MarginTooSmall";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

std::string to_string(Rank r) {
  return r.ranked() ? std::to_string(r.value()) : std::string("unranked");
}

namespace {

void require_same(const Adic& a, const Adic& b) {
  if (a.precision() != b.precision()) {
    throw Error(ErrorCode::PrecisionMismatch,
                std::to_string(a.precision()) + " vs " + std::to_string(b.precision()));
  }
}

}  // namespace

Adic::Adic(std::uint64_t bits, int precision) : precision_(precision) {
  if (precision < 1 || precision > 64) {
    throw Error(ErrorCode::BadInput, "precision must be in [1,64], got " + std::to_string(precision));
  }
  bits_ = bits & mask();
}

std::uint64_t Adic::mask() const {
  return precision_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << precision_) - 1);
}

Adic Adic::from_int(std::int64_t n, int precision) {
  return Adic(static_cast<std::uint64_t>(n), precision);
}

Adic Adic::from_hex(const std::string& text, int precision) {
  std::string digits = text;
  if (digits.size() >= 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    digits = digits.substr(2);
  }
  if (digits.empty() || digits.size() > 16) {
    throw Error(ErrorCode::BadInput, "bad hex adic '" + text + "'");
  }
  std::uint64_t v = 0;
  for (char c : digits) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw Error(ErrorCode::BadInput, "bad hex adic '" + text + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  Adic a(v, precision);
  if (a.bits_ != v) {
    throw Error(ErrorCode::BadInput, "'" + text + "' exceeds precision " + std::to_string(precision));
  }
  return a;
}

int Adic::bit(int i) const {
  if (i < 0 || i >= precision_) {
    throw Error(ErrorCode::PrecisionExhausted, "bit " + std::to_string(i) + " not retained");
  }
  return static_cast<int>((bits_ >> i) & 1u);
}

std::int64_t Adic::to_int() const {
  if (precision_ == 64) return static_cast<std::int64_t>(bits_);
  const std::uint64_t sign = std::uint64_t{1} << (precision_ - 1);
  if (bits_ & sign) return static_cast<std::int64_t>(bits_) - static_cast<std::int64_t>(sign << 1);
  return static_cast<std::int64_t>(bits_);
}

std::uint64_t Adic::residue(int m) const {
  if (m <= 0) return 0;
  if (m >= 64) return bits_;
  return bits_ & ((std::uint64_t{1} << m) - 1);
}

Adic Adic::truncated(int m) const { return Adic(residue(m), precision_); }

std::string Adic::to_hex() const {
  static const char* kDigits = "0123456789abcdef";
  const int ndigits = (precision_ + 3) / 4;
  std::string out = "0x";
  for (int d = ndigits - 1; d >= 0; --d) out += kDigits[(bits_ >> (4 * d)) & 0xf];
  return out;
}

Adic operator+(const Adic& a, const Adic& b) {
  require_same(a, b);
  return Adic(a.bits_ + b.bits_, a.precision_);
}

Adic operator-(const Adic& a, const Adic& b) {
  require_same(a, b);
  return Adic(a.bits_ - b.bits_, a.precision_);
}

Adic operator*(const Adic& a, const Adic& b) {
  require_same(a, b);
  return Adic(a.bits_ * b.bits_, a.precision_);
}

Adic Adic::operator-() const { return Adic(~bits_ + 1, precision_); }

Rank valuation(const Adic& a) {
  if (a.is_zero()) return Rank::unranked();
  return Rank(std::countr_zero(a.bits()));
}

int valuation(std::int64_t x) { return std::countr_zero(static_cast<std::uint64_t>(x)); }

Adic add(const Adic& a, const Adic& b) { return a + b; }
Adic neg(const Adic& a) { return -a; }
Adic mul(const Adic& a, const Adic& b) { return a * b; }

Adic invert_odd(const Adic& a) {
  if (!a.is_odd()) throw Error(ErrorCode::EvenNotInvertible, a.to_hex());
  // Newton iteration x <- x(2 - ax); each step doubles the correct low bits.
  // x = a is already correct to 3 bits since a*a = 1 mod 8 for odd a.
  std::uint64_t x = a.bits();
  for (int i = 0; i < 5; ++i) x *= 2 - a.bits() * x;
  return Adic(x, a.precision());
}

double shift_metric(const Adic& a, const Adic& b) {
  const Rank v = valuation(a - b);
  if (!v.ranked()) return 0.0;
  return std::ldexp(1.0, 1 - v.value());
}

}  // namespace adictile
