#include "childstat/child_set.hpp"
#include "childstat/error.hpp"
#include "childstat/exact.hpp"

#include <doctest.h>

#include <functional>
#include <random>
#include <vector>

using namespace childstat;

namespace {

// Counts set partitions of {0..p-1} into exactly k blocks via restricted
// growth strings.
long brute_force_stirling2(unsigned p, unsigned k) {
  if (p == 0) return k == 0 ? 1 : 0;
  long count = 0;
  std::vector<unsigned> rgs(p, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned blocks) {
    if (pos == p) {
      count += blocks == k;
      return;
    }
    for (unsigned b = 0; b <= blocks; ++b) {
      rgs[pos] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  rgs[0] = 0;
  rec(1, 1);
  return count;
}

}  // namespace

TEST_SUITE("exactnum") {

TEST_CASE("stirling2 examples") {
  CHECK(stirling2(3, 2) == 3);
  CHECK(stirling2(4, 2) == brute_force_stirling2(4, 2));
  CHECK(stirling2(4, 2) == 7);
  for (unsigned p = 0; p <= 12; ++p) CHECK(stirling2(p, p) == 1);
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(5, 0) == 0);
  CHECK(stirling2(2, 5) == 0);
}

TEST_CASE("stirling2 matches set-partition enumeration") {
  for (unsigned p = 0; p <= 8; ++p) {
    for (unsigned k = 0; k <= 9; ++k) {
      CAPTURE(p);
      CAPTURE(k);
      CHECK(stirling2(p, k) == brute_force_stirling2(p, k));
    }
  }
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(17, 0) == 1);
  CHECK(falling_factorial(0, 0) == 1);
  CHECK(falling_factorial(3, 5) == 0);
  CHECK(falling_factorial(-2, 2) == 6);
}

TEST_CASE("stirling expansion of powers") {
  for (long x = 0; x <= 8; ++x) {
    for (unsigned p = 0; p <= 8; ++p) {
      ExactInt sum = 0;
      for (unsigned k = 0; k <= p; ++k) sum += stirling2(p, k) * falling_factorial(x, k);
      ExactInt expected;
      mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(x), p);
      CHECK(sum == expected);
    }
  }
}

TEST_CASE("rationals stay in lowest terms") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  ExactRat acc = 0;
  for (int i = 0; i < 200; ++i) {
    long den = dist(rng);
    if (den == 0) den = 1;
    ExactRat q = make_rational(dist(rng), den);
    if (i % 3 == 0) {
      acc += q;
    } else if (i % 3 == 1) {
      acc *= q;
    } else {
      acc -= q;
    }
    CHECK(acc.get_den() > 0);
    ExactInt g;
    mpz_gcd(g.get_mpz_t(), acc.get_num().get_mpz_t(), acc.get_den().get_mpz_t());
    CHECK(g == 1);
  }
  CHECK(make_rational(6, -4) == ExactRat(-3, 2));
  CHECK(to_fraction_string(make_rational(6, -4)) == "-3/2");
  CHECK(to_fraction_string(make_rational(8, 4)) == "2");
}

TEST_CASE("decimal rendering rounds half to even") {
  CHECK(render_decimal(ExactRat(1, 8), 2) == "0.12");
  CHECK(render_decimal(ExactRat(3, 8), 2) == "0.38");
  CHECK(render_decimal(ExactRat(-3, 8), 2) == "-0.38");
  CHECK(render_decimal(ExactRat(5, 2), 0) == "2");
  CHECK(render_decimal(ExactRat(7, 2), 0) == "4");
  CHECK(render_decimal(ExactRat(1, 3), 5) == "0.33333");
  CHECK(render_decimal(ExactRat(-1, 1000), 2) == "0.00");
  CHECK(render_decimal(ExactRat(123), 3) == "123.000");
}

TEST_CASE("square-root rendering is correctly rounded") {
  CHECK(render_signed_sqrt(ExactRat(2), 1, 10) == "1.4142135624");
  CHECK(render_signed_sqrt(ExactRat(2), -1, 5) == "-1.41421");
  CHECK(render_signed_sqrt(ExactRat(1, 4), 1, 3) == "0.500");
  CHECK(render_signed_sqrt(ExactRat(0), 0, 2) == "0.00");
  // sqrt(0.0625 * 10^2) = 2.5 exactly -> ties to even.
  CHECK(render_signed_sqrt(ExactRat(1, 16), 1, 1) == "0.2");
  CHECK(render_signed_sqrt(ExactRat(9, 16), 1, 1) == "0.8");
}

TEST_CASE("surd arithmetic") {
  Surd a(ExactRat(3), ExactRat(2));
  Surd b(ExactRat(1), ExactRat(2));
  CHECK((a - b) == Surd(ExactRat(2), ExactRat(2)));
  CHECK((a - a).is_zero());
  CHECK(Surd(ExactRat(1), ExactRat(9, 4)).is_rational());
  CHECK(Surd(ExactRat(1), ExactRat(9, 4)).coeff() == ExactRat(3, 2));
  CHECK((a + Surd()).square() == 18);
  CHECK_THROWS_AS(a + Surd(ExactRat(1), ExactRat(3)), std::logic_error);
}

TEST_CASE("child set validation") {
  CHECK(ChildSet{2, 0, 1}.to_string() == "{0,1,2}");
  CHECK(ChildSet::parse("0, 2,3").to_string() == "{0,2,3}");
  CHECK_THROWS_AS(ChildSet({1, 2}), Error);
  CHECK_THROWS_AS(ChildSet({0, 1, 1}), Error);
  CHECK_THROWS_AS(ChildSet({0, -1}), Error);
  CHECK_THROWS_AS(ChildSet::parse("0,x"), Error);
  CHECK_THROWS_AS(ChildSet::parse(""), Error);
  try {
    ChildSet({1, 2});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidChildSet);
  }
  CHECK(ChildSet{0, 2}.phi() == DensePolynomial({1, 0, 1}));
}

}
