#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <random>
#include <unordered_set>

#include "sbill/rational.hpp"

using sbill::Rat;

namespace {

// values near the int64 limits so the fast path overflows into GMP
Rat wide(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> big(std::numeric_limits<std::int64_t>::min() + 1,
                                                  std::numeric_limits<std::int64_t>::max());
  std::uniform_int_distribution<std::int64_t> small(-1000, 1000);
  std::int64_t d = 0;
  while (d == 0) d = (rng() & 1) ? big(rng) : small(rng);
  return Rat((rng() & 1) ? big(rng) : small(rng), d);
}

}  // namespace

TEST_CASE("canonical form") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(3, -6).str() == "-1/2");
  CHECK(Rat(0, -5).str() == "0/1");
  CHECK(Rat(7).str() == "7/1");
  CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("parse") {
  CHECK(Rat::parse("3/7") == Rat(3, 7));
  CHECK(Rat::parse("-4") == Rat(-4));
  CHECK(Rat::parse("1.25") == Rat(5, 4));
  CHECK(Rat::parse("-0.5") == Rat(-1, 2));
  CHECK(Rat::parse(".5") == Rat(1, 2));
  CHECK(Rat::parse("+2/6") == Rat(1, 3));
  CHECK(Rat::parse("123456789012345678901234567890/3").str() ==
        "41152263004115226300411522630/1");
  CHECK_THROWS(Rat::parse("1/0"));
  CHECK_THROWS(Rat::parse("abc"));
  CHECK_THROWS(Rat::parse("1/2/3"));
  CHECK_THROWS(Rat::parse(""));
}

TEST_CASE("arithmetic agrees with GMP on random operands") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20000; ++it) {
    const Rat a = wide(rng), b = wide(rng);
    const mpq_class qa = a.to_mpq(), qb = b.to_mpq();
    REQUIRE((a + b).to_mpq() == qa + qb);
    REQUIRE((a - b).to_mpq() == qa - qb);
    REQUIRE((a * b).to_mpq() == qa * qb);
    if (!b.is_zero()) REQUIRE((a / b).to_mpq() == qa / qb);
    REQUIRE(((a < b) == (qa < qb)));
    REQUIRE(((a == b) == (qa == qb)));
    REQUIRE(Rat::parse(a.str()) == a);
  }
}

TEST_CASE("big values demote when they fit again") {
  const Rat big = Rat(std::numeric_limits<std::int64_t>::max()) * Rat(4);
  CHECK_FALSE(big.is_small());
  const Rat back = big / Rat(4);
  CHECK(back.is_small());
  CHECK(back == Rat(std::numeric_limits<std::int64_t>::max()));
  CHECK(Rat(std::numeric_limits<std::int64_t>::min()).to_mpq() ==
        mpq_class(mpz_class("-9223372036854775808")));
}

TEST_CASE("hash is consistent with equality") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 2000; ++it) {
    const Rat a = wide(rng);
    const Rat b = Rat(a.to_mpq());
    REQUIRE(a == b);
    REQUIRE(a.hash() == b.hash());
  }
  std::unordered_set<Rat, sbill::RatHash> s{Rat(1, 3), Rat(2, 6), Rat(1, 2)};
  CHECK(s.size() == 2);
}

TEST_CASE("dyadic") {
  CHECK(Rat(3, 8).is_dyadic());
  CHECK(Rat(5).is_dyadic());
  CHECK_FALSE(Rat(1, 3).is_dyadic());
  CHECK((Rat(1) / Rat(mpq_class(mpz_class(1) << 100))).is_dyadic());
}
