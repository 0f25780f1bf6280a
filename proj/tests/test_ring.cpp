#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eozip/ring.hpp"

using namespace eozip;

TEST_CASE("deterministic moduli") {
  CHECK(smallest_irreducible(2, 2) == std::vector<uint64_t>{1, 1});  // x^2+x+1
  CHECK(smallest_irreducible(3, 2) == std::vector<uint64_t>{1, 0});  // x^2+1
  // every returned polynomial must really be irreducible: no roots for deg 2/3
  for (auto [p, r] : {std::pair<uint32_t, uint32_t>{2, 3}, {3, 3}, {5, 2}, {7, 2}}) {
    auto mod = smallest_irreducible(p, r);
    for (uint64_t x = 0; x < p; ++x) {
      uint64_t acc = 1, val = 0;
      for (uint32_t i = 0; i < r; ++i) {
        val = (val + mod[i] * acc) % p;
        acc = (acc * x) % p;
      }
      val = (val + acc) % p;
      CHECK(val != 0);
    }
  }
}

TEST_CASE("frobenius on small fields") {
  Ring f3 = Ring::gf(3, 1);
  CHECK(f3.frobenius(f3.one()) == f3.one());
  CHECK(f3.frobenius(f3.from_int(2)) == f3.from_int(2));

  Ring f4 = Ring::gf(2, 2);
  RElem g = f4.from_index(2);  // the class of x, so g^2 = g + 1
  RElem gp1 = f4.add(g, f4.one());
  CHECK(f4.mul(g, g) == gp1);
  CHECK(f4.frobenius(g) == gp1);
  CHECK(f4.frobenius_inverse(gp1) == g);
  CHECK(f4.frobenius_inverse(f4.one()) == f4.one());
}

TEST_CASE("frobenius is a field automorphism, exhaustive p^r <= 64") {
  for (auto [p, r] : {std::pair<uint32_t, uint32_t>{2, 2}, {2, 3}, {2, 6}, {3, 2}, {3, 3},
                      {5, 2}, {7, 2}}) {
    Ring k = Ring::gf(p, r);
    uint64_t q = k.card();
    for (uint64_t i = 0; i < q; ++i) {
      RElem x = k.from_index(i);
      RElem fx = k.frobenius(x);
      CHECK(k.frobenius_inverse(fx) == x);
      RElem it = x;
      for (uint32_t t = 0; t < r; ++t) it = k.frobenius(it);
      CHECK(it == x);  // r-fold power is the identity
      for (uint64_t j = 0; j < q; ++j) {
        RElem y = k.from_index(j);
        CHECK(k.frobenius(k.add(x, y)) == k.add(fx, k.frobenius(y)));
        CHECK(k.frobenius(k.mul(x, y)) == k.mul(fx, k.frobenius(y)));
      }
    }
  }
}

TEST_CASE("field inverses and index round-trip") {
  Ring k = Ring::gf(3, 2);
  for (uint64_t i = 0; i < k.card(); ++i) {
    RElem x = k.from_index(i);
    CHECK(k.to_index(x) == i);
    if (i) CHECK(k.is_one(k.mul(x, k.inv(x))));
  }
  CHECK_THROWS_AS((void)k.inv(k.zero()), NonUnitError);
}

TEST_CASE("Z/p^m arithmetic") {
  Ring w = Ring::wm(3, 2);
  CHECK(w.pm() == 9);
  CHECK(w.from_int(10) == w.one());
  CHECK(w.from_int(-1) == w.from_int(8));
  CHECK(w.is_unit(w.from_int(2)));
  CHECK(!w.is_unit(w.from_int(3)));
  CHECK_THROWS_AS((void)w.inv(w.from_int(6)), NonUnitError);
  CHECK(w.mul(w.from_int(2), w.inv(w.from_int(2))) == w.one());
  CHECK(w.frobenius(w.from_int(5)) == w.from_int(5));  // identity lift for k = F_p
}

TEST_CASE("relative base ring and Frobenius lifts") {
  Ring R = Ring::rel_base(3, 2, 4);  // (Z/9)[t]/(t^4)
  RElem t = R.zero();
  t.v[1] = 1;

  SUBCASE("units and inversion") {
    RElem u = R.add(R.one(), t);  // 1 + t
    CHECK(R.is_unit(u));
    CHECK(R.mul(u, R.inv(u)) == R.one());
    CHECK(!R.is_unit(t));
    CHECK_THROWS_AS((void)R.inv(t), NonUnitError);
  }

  SUBCASE("lift on constants and on t") {
    FrobLiftSpec h0 = FrobLiftSpec::zero();
    RElem c = R.from_int(7);
    CHECK(frob_lift_apply(R, c, h0) == c);  // constants of Z/p^m are fixed
    RElem t3 = R.zero();
    t3.v[3] = 1;
    CHECK(frob_lift_apply(R, t, h0) == t3);  // t -> t^3
  }

  SUBCASE("lift with h = 1 matches t^p + p t") {
    Ring R9 = Ring::rel_base(3, 2, 9);
    RElem tt = R9.zero();
    tt.v[1] = 1;
    FrobLiftSpec h1{{1}};
    RElem got = frob_lift_apply(R9, tt, h1);
    RElem want = R9.zero();
    want.v[3] = 1;  // t^3
    want.v[1] = 3;  // + 3t
    CHECK(got == want);
  }

  SUBCASE("lift is a ring endomorphism and reduces to x -> x^p mod p") {
    FrobLiftSpec h{{5, 2}};
    uint64_t seed = 12345;
    auto rnd = [&]() {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      return seed >> 33;
    };
    for (int trial = 0; trial < 50; ++trial) {
      RElem x = R.zero(), y = R.zero();
      for (auto& v : x.v) v = rnd() % 9;
      for (auto& v : y.v) v = rnd() % 9;
      RElem fx = frob_lift_apply(R, x, h);
      RElem fy = frob_lift_apply(R, y, h);
      CHECK(frob_lift_apply(R, R.mul(x, y), h) == R.mul(fx, fy));
      CHECK(frob_lift_apply(R, R.add(x, y), h) == R.add(fx, fy));
      // reduction mod p agrees with the absolute Frobenius of F_p[t]/(t^D)
      Ring R0 = Ring::rel_base(3, 1, 4);
      RElem x0 = R0.zero(), fx0 = R0.zero();
      for (uint32_t i = 0; i < 4; ++i) {
        x0.v[i] = x.v[i] % 3;
        fx0.v[i] = fx.v[i] % 3;
      }
      CHECK(R0.frobenius(x0) == fx0);
      // two distinct lifts agree mod p
      RElem gx = frob_lift_apply(R, x, FrobLiftSpec::zero());
      for (uint32_t i = 0; i < 4; ++i) CHECK((fx.v[i] + 9 - gx.v[i]) % 3 == 0);
    }
  }
}
