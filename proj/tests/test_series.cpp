#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eozip/group.hpp"
#include "eozip/series.hpp"

using namespace eozip;

namespace {

TruncSeries random_poly(const Ring& k, int N, int maxdeg, std::mt19937_64& rng) {
  std::vector<RElem> cs;
  for (int i = 0; i <= maxdeg && i < N; ++i) cs.push_back(k.from_index(rng() % k.card()));
  return TruncSeries::from_coeffs(k, N, 0, std::move(cs));
}

}  // namespace

TEST_CASE("phi and sigma on basic inputs") {
  Ring f3 = Ring::gf(3, 1);
  TruncSeries u = TruncSeries::u(f3, 10);
  auto [phiu, lost] = phi_series(u);
  CHECK(!lost);
  CHECK(phiu.equal(TruncSeries::monomial(f3, 10, 3, f3.one())));

  TruncSeries c = TruncSeries::constant(f3, 10, f3.from_int(2));
  CHECK(phi_series(c).series.equal(TruncSeries::constant(f3, 10, f3.from_int(2))));  // 2^3 = 8 = 2

  Ring f2 = Ring::gf(2, 1);
  TruncSeries f = TruncSeries::constant(f2, 4, f2.one()).add(TruncSeries::u(f2, 4));
  TruncSeries want = TruncSeries::constant(f2, 4, f2.one())
                         .add(TruncSeries::monomial(f2, 4, 2, f2.one()));
  CHECK(phi_series(f).series.equal(want));

  CHECK(sigma_series(u).equal(u));
  Ring f4 = Ring::gf(2, 2);
  RElem g = f4.from_index(2);
  TruncSeries gu = TruncSeries::monomial(f4, 6, 1, g);
  CHECK(sigma_series(gu).equal(TruncSeries::monomial(f4, 6, 1, f4.add(g, f4.one()))));
  TruncSeries f3s = TruncSeries::constant(f3, 6, f3.one())
                        .add(TruncSeries::monomial(f3, 6, 1, f3.from_int(2)));
  CHECK(sigma_series(f3s).equal(f3s));
}

TEST_CASE("u -> u^p substitution and the two-Frobenii factorization") {
  Ring f2 = Ring::gf(2, 1);
  TruncSeries f = TruncSeries::constant(f2, 8, f2.one())
                      .add(TruncSeries::u(f2, 8))
                      .add(TruncSeries::monomial(f2, 8, 2, f2.one()));
  TruncSeries want = TruncSeries::constant(f2, 8, f2.one())
                         .add(TruncSeries::monomial(f2, 8, 2, f2.one()))
                         .add(TruncSeries::monomial(f2, 8, 4, f2.one()));
  CHECK(subst_u_to_up(f).series.equal(want));

  // phi = sigma o (u -> u^p) on random loss-free samples
  std::mt19937_64 rng(7);
  for (auto pr : {std::pair<uint32_t, uint32_t>{2, 2}, {3, 1}, {5, 1}}) {
    Ring k = Ring::gf(pr.first, pr.second);
    int N = 41;
    int maxdeg = (N - 1) / (int)pr.first;
    for (int trial = 0; trial < 300; ++trial) {
      TruncSeries f1 = random_poly(k, N, maxdeg, rng);
      auto a = phi_series(f1);
      auto b = subst_u_to_up(f1);
      CHECK(!a.lost);
      CHECK(!b.lost);
      CHECK(a.series.equal(sigma_series(b.series)));
    }
  }
}

TEST_CASE("phi and sigma are ring homomorphisms in the lossless window") {
  std::mt19937_64 rng(11);
  Ring k = Ring::gf(3, 2);
  int N = 31;
  for (int trial = 0; trial < 200; ++trial) {
    TruncSeries a = random_poly(k, N, 4, rng);
    TruncSeries b = random_poly(k, N, 4, rng);
    CHECK(sigma_series(a.mul(b)).equal(sigma_series(a).mul(sigma_series(b))));
    CHECK(sigma_series(a.add(b)).equal(sigma_series(a).add(sigma_series(b))));
    auto pa = phi_series(a), pb = phi_series(b), pab = phi_series(a.mul(b));
    REQUIRE(!pa.lost);
    REQUIRE(!pb.lost);
    // product of degree-4 polys has degree 8, image degree 24 < 31
    CHECK(pab.series.equal_mod(pa.series.mul(pb.series), 25) == Tri::True);
  }
}

TEST_CASE("precision loss is flagged") {
  Ring k = Ring::gf(3, 1);
  TruncSeries f = TruncSeries::monomial(k, 5, 4, k.one());  // u^4, window 5
  auto r = phi_series(f);                                   // u^12 falls off
  CHECK(r.lost);
}

TEST_CASE("series inversion") {
  Ring k = Ring::gf(3, 1);
  int N = 12;
  TruncSeries f = TruncSeries::constant(k, N, k.from_int(2)).add(TruncSeries::u(k, N));
  TruncSeries g = f.invert();
  CHECK(f.mul(g).equal(TruncSeries::constant(k, N, k.one())));
  // u^2 * unit inverts to valuation -2
  TruncSeries h = f.shift(2);
  TruncSeries hi = h.invert();
  CHECK(hi.val() == -2);
  CHECK(h.mul(hi).equal(TruncSeries::constant(k, N, k.one())));
  CHECK_THROWS_AS((void)TruncSeries(k, N).invert(), NonUnitConstantTerm);
}

TEST_CASE("K1 membership of matrices") {
  Ring k = Ring::gf(2, 1);
  int N = 8;
  MatSeries id = MatSeries::identity(k, 2, N);
  CHECK(id.is_in_K1());

  MatSeries m = id;
  m.at(0, 1) = TruncSeries::monomial(k, N, 3, k.one());
  CHECK(m.is_in_K1());

  MatSeries w(k, 2, N);
  w.at(0, 1) = TruncSeries::constant(k, N, k.one());
  w.at(1, 0) = TruncSeries::constant(k, N, k.one());
  CHECK(!w.is_in_K1());

  MatSeries pole = id;
  pole.at(0, 1) = TruncSeries::monomial(k, N, -1, k.one());
  CHECK_THROWS_AS((void)pole.is_in_K1(), PoleError);
}

TEST_CASE("matrix inversion: examples and randomized identity") {
  Ring k = Ring::gf(3, 1);
  int N = 10;
  MatSeries id = MatSeries::identity(k, 2, N);
  CHECK(id.invert().equal(id));

  MatSeries m = id;
  m.at(0, 1) = TruncSeries::u(k, N);
  MatSeries mi = m.invert();
  MatSeries want = id;
  want.at(0, 1) = TruncSeries::u(k, N).neg();
  CHECK(mi.equal(want));

  MatSeries sing(k, 2, N);
  sing.at(0, 0) = TruncSeries::monomial(k, N, 3, k.one());
  sing.at(1, 1) = TruncSeries::constant(k, N, k.one());
  CHECK_THROWS_AS((void)sing.invert(), NonUnitConstantTerm);

  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; checked < 200; ++trial) {
    int n = 1 + (int)(rng() % 4);
    int Nw = 4 + (int)(rng() % 21);
    GroupSpec G = GroupSpec::gl(n);
    MatSeries a = random_k_element(G, k, Nw, rng());
    MatSeries ai = a.invert();
    CHECK(ai.mul(a).equal(MatSeries::identity(k, n, Nw)));
    ++checked;
  }
}

TEST_CASE("laurent inversion handles u-power determinants") {
  Ring k = Ring::gf(3, 1);
  int N = 14;
  MatSeries m(k, 2, N);
  m.at(0, 0) = TruncSeries::monomial(k, N, 3, k.one());
  m.at(0, 1) = TruncSeries::monomial(k, N, 3, k.one());
  m.at(1, 1) = TruncSeries::constant(k, N, k.one());
  MatSeries mi = m.laurent_invert();
  MatSeries prod = mi.mul(m);
  CHECK(prod.equal_mod(MatSeries::identity(k, 2, N), prod.at(0, 0).prec()) == Tri::True);
}

TEST_CASE("K1 is normal at truncation level") {
  Ring k = Ring::gf(2, 1);
  int N = 9;
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    MatSeries g = random_k_element(GroupSpec::gl(3), k, N, rng());
    MatSeries h = MatSeries::identity(k, 3, N);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        std::vector<RElem> cs{k.zero()};
        for (int d = 1; d < N; ++d) cs.push_back(k.from_index(rng() % 2));
        if (i == j) cs[0] = k.one();
        h.at(i, j) = TruncSeries::from_coeffs(k, N, 0, cs);
      }
    REQUIRE(h.is_in_K1());
    MatSeries conj = g.mul(h).mul(g.invert());
    CHECK(conj.is_in_K1());
  }
}
