#include <catch2/catch_amalgamated.hpp>

#include "torcert/numbers.hpp"

using namespace torcert;

TEST_CASE("integer roots") {
  CHECK(iroot(Int(0), 2) == 0);
  CHECK(iroot(Int(1), 5) == 1);
  CHECK(iroot(Int(8), 3) == 2);
  CHECK(iroot(Int(9), 3) == 2);
  CHECK(iroot(Int(26), 3) == 2);
  CHECK(iroot(Int(27), 3) == 3);
  CHECK(iroot(ipow(Int(10), 60), 4) == ipow(Int(10), 15));
  CHECK(iroot(ipow(Int(10), 60) - 1, 4) == ipow(Int(10), 15) - 1);

  CHECK(exact_iroot(Int(64), 6) == Int(2));
  CHECK(exact_iroot(Int(65), 6) == std::nullopt);
  CHECK(exact_iroot(Int(-27), 3) == Int(-3));
  CHECK(exact_iroot(Int(-16), 4) == std::nullopt);

  CHECK(exact_root_rat(Rat(8, 27), 3) == Rat(2, 3));
  CHECK(exact_root_rat(Rat(-8, 27), 3) == Rat(-2, 3));
  CHECK(exact_root_rat(Rat(4, 9), 2) == Rat(2, 3));
  CHECK(exact_root_rat(Rat(-4, 9), 2) == std::nullopt);
  CHECK(exact_root_rat(Rat(16), 4) == Rat(2));
  CHECK(exact_root_rat(Rat(2), 2) == std::nullopt);
  CHECK(exact_root_rat(Rat(0), 7) == Rat(0));
}

TEST_CASE("factorial and ceil_div") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(1) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(100).str().size() == 158);

  CHECK(ceil_div(Int(7), Int(2)) == 4);
  CHECK(ceil_div(Int(6), Int(2)) == 3);
  CHECK(ceil_div(Int(-7), Int(2)) == -3);
  CHECK(ceil_div(Int(7), Int(-2)) == -3);
  CHECK_THROWS_AS(ceil_div(Int(1), Int(0)), DivisionByZero);
}

TEST_CASE("primality") {
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int(3)));
  CHECK(is_prime(Int(97)));
  CHECK_FALSE(is_prime(Int(1)));
  CHECK_FALSE(is_prime(Int(0)));
  CHECK_FALSE(is_prime(Int(-7)));
  CHECK_FALSE(is_prime(Int(91)));
  CHECK(is_prime((Int(1) << 61) - 1));
  CHECK_FALSE(is_prime((Int(1) << 67) - 1));
  CHECK(is_prime(Int("1000003")));
}

TEST_CASE("modular arithmetic") {
  CHECK(normalize_mod(Int(-1), Int(7)) == 6);
  CHECK(modpow(Int(3), Int(100), Int(7)) == ipow(Int(3), 100) % 7);
  CHECK(modinv(Int(3), Int(7)) == 5);
  CHECK(modinv(Int(1), Int(1)) == 0);
  CHECK_THROWS_AS(modinv(Int(6), Int(9)), DivisionByZero);

  auto f = factor_u64(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
  CHECK(f[1] == std::pair<std::uint64_t, unsigned>{3, 2});
  CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});
}

TEST_CASE("modular nth roots") {
  // Least square root of 2 mod 7 is 3 (the other is 4).
  CHECK(mod_nth_root(Int(2), 2, Int(7)) == Int(3));
  CHECK(mod_nth_root(Int(3), 2, Int(7)) == std::nullopt);
  // Cubes mod 7 are {0, 1, 6}.
  CHECK(mod_nth_root(Int(6), 3, Int(7)) == Int(3));
  CHECK(mod_nth_root(Int(2), 3, Int(7)) == std::nullopt);
  // x^7 = x over F_7.
  CHECK(mod_nth_root(Int(3), 7, Int(7)) == Int(3));
  // Exponent divisible by p-1: only 1 is a power.
  CHECK(mod_nth_root(Int(1), 6, Int(7)) == Int(1));
  CHECK(mod_nth_root(Int(2), 6, Int(7)) == std::nullopt);
  CHECK(mod_nth_root(Int(0), 5, Int(7)) == Int(0));
  // 19 = 1 + 2*3^2 exercises the prime-power digit search.
  CHECK(mod_nth_root(Int(7), 3, Int(19)) == Int(4));
  // Large prime, 4th roots collapse to square roots since p = 3 mod 4.
  const Int p("1000003");
  CHECK(mod_nth_root(modpow(Int(17), Int(4), p), 4, p) == Int(17));
  CHECK_THROWS_AS(mod_nth_root(Int(2), 2, Int(10)), BadPrime);

  // Exhaustive cross-check over a field with rich root-of-unity structure:
  // p-1 = 72 = 2^3 * 3^2.
  const Int q(73);
  for (std::uint64_t m : {2, 3, 4, 6, 8, 9, 12, 72}) {
    for (Int a = 0; a < q; ++a) {
      std::optional<Int> expect;
      for (Int x = 0; x < q; ++x)
        if (modpow(x, Int(m), q) == a) {
          expect = x;
          break;
        }
      CHECK(mod_nth_root(a, m, q) == expect);
    }
  }
}
