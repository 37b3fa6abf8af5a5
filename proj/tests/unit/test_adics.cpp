#include <doctest.h>

#include <random>

#include "adictile/adic.hpp"
#include "adictile/error.hpp"

using namespace adictile;

namespace {

// Inverse of an odd residue modulo 2^bits by exhaustive search.
std::uint64_t brute_inverse(std::uint64_t a, int bits) {
  const std::uint64_t mod = std::uint64_t{1} << bits;
  for (std::uint64_t x = 0; x < mod; ++x)
    if ((a * x) % mod == 1) return x;
  return 0;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::BadInput;
}

}  // namespace

TEST_CASE("valuation of small words") {
  CHECK(valuation(Adic::from_int(4, 8)) == Rank(2));
  CHECK(Adic::from_int(-2, 8).bits() == 0xfeu);
  CHECK(valuation(Adic::from_int(-2, 8)) == Rank(1));
  CHECK_FALSE(valuation(Adic::zero(8)).ranked());
  CHECK(valuation(Adic::from_int(256, 8)) == Rank::unranked());
}

TEST_CASE("ring operations") {
  CHECK(neg(Adic::one()).bits() == ~std::uint64_t{0});
  CHECK(add(Adic::one(), neg(Adic::one())).is_zero());
  CHECK(mul(Adic::from_int(3, 5), Adic::from_int(11, 5)) == Adic::one(5));
  CHECK(code_of([] { add(Adic::one(8), Adic::one(16)); }) == ErrorCode::PrecisionMismatch);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 64);
    const Adic a(rng(), n), b(rng(), n), c(rng(), n);
    CHECK(a + (b + c) == (a + b) + c);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - b == a + (-b));
  }
}

TEST_CASE("inverses of odd elements") {
  CHECK(invert_odd(Adic::one()) == Adic::one());
  CHECK(invert_odd(Adic::from_int(3, 5)).bits() == 11u);
  CHECK(code_of([] { invert_odd(Adic::from_int(2)); }) == ErrorCode::EvenNotInvertible);
  for (std::uint64_t a = 1; a < 1024; a += 2) CHECK(invert_odd(Adic(a, 10)).bits() == brute_inverse(a, 10));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Adic a(rng() | 1u, 64);
    CHECK(a * invert_odd(a) == Adic::one());
  }
}

TEST_CASE("shift metric") {
  const Adic a = Adic::from_int(12345);
  CHECK(shift_metric(a, a) == 0.0);
  CHECK(shift_metric(Adic::zero(), Adic::from_int(2)) == 1.0);
  CHECK(shift_metric(Adic::zero(), Adic::from_int(8)) == 0.25);
  CHECK(shift_metric(Adic::zero(), Adic::from_int(1)) == 2.0);
}

TEST_CASE("ultrametric inequality on sampled triples") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    // Low bits shared often, so that distances vary.
    const std::uint64_t base = rng();
    const Adic a(base ^ (rng() << (rng() % 12)), 64);
    const Adic b(base ^ (rng() << (rng() % 12)), 64);
    const Adic c(base ^ (rng() << (rng() % 12)), 64);
    CHECK(shift_metric(a, c) <= std::max(shift_metric(a, b), shift_metric(b, c)));
  }
}

TEST_CASE("valuation is additive under multiplication") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    const Adic a(rng() << (rng() % 20), 64), b(rng() << (rng() % 20), 64);
    const Rank va = valuation(a), vb = valuation(b);
    if (!va.ranked() || !vb.ranked() || va.value() + vb.value() >= 64) continue;
    CHECK(valuation(a * b) == Rank(va.value() + vb.value()));
  }
}

TEST_CASE("integer embedding round-trips") {
  for (std::int64_t n = -(1 << 20); n <= (1 << 20); n += 97) CHECK(Adic::from_int(n).to_int() == n);
  CHECK(Adic::from_int(-(1 << 20)).to_int() == -(1 << 20));
  CHECK(Adic::from_int(1 << 20).to_int() == (1 << 20));
  CHECK(-Adic::from_int(77, 12) == Adic::from_int(-77, 12));
}

TEST_CASE("hexadecimal form") {
  CHECK(Adic::from_int(-1, 8).to_hex() == "0xff");
  CHECK(Adic::from_int(5, 12).to_hex() == "0x005");
  CHECK(Adic::from_hex("0xfd", 8) == Adic::from_int(-3, 8));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng() % 64);
    const Adic a(rng(), n);
    CHECK(Adic::from_hex(a.to_hex(), n) == a);
  }
}
