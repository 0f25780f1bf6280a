#include "eozip/ring.hpp"

#include <algorithm>
#include <cassert>

namespace eozip {

namespace {

uint64_t ipow(uint64_t b, uint32_t e) {
  uint64_t acc = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (acc > (UINT64_MAX / (b ? b : 1))) throw std::overflow_error("ipow overflow");
    acc *= b;
  }
  return acc;
}

uint64_t mod_inv(uint64_t a, uint64_t n) {
  // extended Euclid; caller guarantees gcd(a, n) = 1
  int64_t t = 0, newt = 1;
  int64_t r = (int64_t)n, newr = (int64_t)(a % n);
  while (newr != 0) {
    int64_t q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) throw NonUnitError("mod_inv: not invertible");
  if (t < 0) t += (int64_t)n;
  return (uint64_t)t;
}

// F_p polynomial helpers, coefficients low degree first, values < p.
using Poly = std::vector<uint64_t>;

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, uint64_t p) {
  // mod is the full monic modulus (degree r, coefficient of x^r is 1)
  size_t r = mod.size() - 1;
  Poly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (size_t d = prod.size(); d-- > r;) {
    uint64_t c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (size_t k = 0; k < r; ++k) {
      uint64_t s = (c * mod[k]) % p;
      prod[d - r + k] = (prod[d - r + k] + p - s) % p;
    }
  }
  prod.resize(r, 0);
  return prod;
}

bool poly_is_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](uint64_t c) { return c == 0; });
}

}  // namespace

std::vector<uint64_t> smallest_irreducible(uint32_t p, uint32_t r) {
  if (r == 1) return {0};  // x itself: F_p = F_p[x]/(x)
  // Enumerate monic f = x^r + sum c_i x^i in lex order on (c_0, ..., c_{r-1});
  // irreducible iff no monic factor of degree 1..r/2.
  std::vector<uint64_t> c(r, 0);
  auto bump = [&]() {
    for (size_t i = r; i-- > 0;) {
      // lex order low-degree-first: c_0 is the most significant digit
      if (++c[i] < p) return true;
      c[i] = 0;
    }
    return false;
  };
  // collect all monic polynomials of degree 1..r/2 once
  std::vector<Poly> divisors;
  for (uint32_t d = 1; d <= r / 2; ++d) {
    uint64_t count = ipow(p, d);
    for (uint64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      uint64_t t = idx;
      for (uint32_t k = 0; k < d; ++k) {
        g[k] = t % p;
        t /= p;
      }
      g[d] = 1;
      divisors.push_back(g);
    }
  }
  auto divides = [&](const Poly& g, const Poly& f) {
    Poly rem = f;
    size_t dg = g.size() - 1;
    while (rem.size() > dg && !(rem.size() == dg + 1 && poly_is_zero(rem))) {
      size_t df = rem.size() - 1;
      uint64_t lead = rem[df];
      if (lead == 0) {
        rem.pop_back();
        continue;
      }
      if (df < dg) break;
      for (size_t k = 0; k <= dg; ++k) {
        uint64_t s = (lead * g[k]) % p;
        rem[df - dg + k] = (rem[df - dg + k] + p - s) % p;
      }
      rem.pop_back();
    }
    while (rem.size() > 1 && rem.back() == 0) rem.pop_back();
    return poly_is_zero(rem);
  };
  do {
    Poly f(r + 1, 0);
    for (uint32_t k = 0; k < r; ++k) f[k] = c[k];
    f[r] = 1;
    bool irred = true;
    for (const auto& g : divisors) {
      if (divides(g, f)) {
        irred = false;
        break;
      }
    }
    if (irred) return {c.begin(), c.end()};
  } while (bump());
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

Ring Ring::gf(uint32_t p, uint32_t r) {
  Ring k;
  k.kind_ = RingKind::GF;
  k.p_ = p;
  k.r_ = r;
  k.m_ = 1;
  k.pm_ = p;
  k.width_ = r;
  k.modulus_ = smallest_irreducible(p, r);
  return k;
}

Ring Ring::wm(uint32_t p, uint32_t m) {
  Ring k;
  k.kind_ = RingKind::Wm;
  k.p_ = p;
  k.m_ = m;
  k.pm_ = ipow(p, m);
  k.width_ = 1;
  return k;
}

Ring Ring::rel_base(uint32_t p, uint32_t m, uint32_t D) {
  Ring k;
  k.kind_ = RingKind::RelBase;
  k.p_ = p;
  k.m_ = m;
  k.D_ = D;
  k.pm_ = ipow(p, m);
  k.width_ = D;
  return k;
}

uint64_t Ring::card() const {
  if (kind_ != RingKind::GF) throw std::logic_error("card() on non-field ring");
  return ipow(p_, r_);
}

void Ring::check(const RElem& x) const {
  if (x.v.size() != width_) throw std::invalid_argument("element width mismatch");
}

RElem Ring::zero() const { return RElem{std::vector<uint64_t>(width_, 0)}; }

RElem Ring::one() const {
  RElem e = zero();
  e.v[0] = 1 % (kind_ == RingKind::GF ? p_ : pm_);
  return e;
}

RElem Ring::from_int(int64_t x) const {
  uint64_t n = kind_ == RingKind::GF ? p_ : pm_;
  int64_t red = x % (int64_t)n;
  if (red < 0) red += (int64_t)n;
  RElem e = zero();
  e.v[0] = (uint64_t)red;
  return e;
}

RElem Ring::from_index(uint64_t idx) const {
  if (kind_ != RingKind::GF) throw std::logic_error("from_index on non-GF ring");
  RElem e = zero();
  for (size_t i = 0; i < width_; ++i) {
    e.v[i] = idx % p_;
    idx /= p_;
  }
  return e;
}

uint64_t Ring::to_index(const RElem& x) const {
  if (kind_ != RingKind::GF) throw std::logic_error("to_index on non-GF ring");
  check(x);
  uint64_t idx = 0;
  for (size_t i = width_; i-- > 0;) idx = idx * p_ + x.v[i];
  return idx;
}

bool Ring::is_zero(const RElem& x) const {
  check(x);
  return std::all_of(x.v.begin(), x.v.end(), [](uint64_t c) { return c == 0; });
}

bool Ring::is_one(const RElem& x) const {
  check(x);
  if (x.v[0] != 1 % pm_) return false;
  for (size_t i = 1; i < width_; ++i)
    if (x.v[i] != 0) return false;
  return true;
}

bool Ring::is_unit(const RElem& x) const {
  check(x);
  switch (kind_) {
    case RingKind::GF:
      return !is_zero(x);
    case RingKind::Wm:
      return x.v[0] % p_ != 0;
    case RingKind::RelBase:
      return x.v[0] % p_ != 0;  // local ring: unit iff constant term unit mod p
  }
  return false;
}

RElem Ring::add(const RElem& a, const RElem& b) const {
  check(a);
  check(b);
  uint64_t n = kind_ == RingKind::GF ? p_ : pm_;
  RElem e = a;
  for (size_t i = 0; i < width_; ++i) e.v[i] = (e.v[i] + b.v[i]) % n;
  return e;
}

RElem Ring::sub(const RElem& a, const RElem& b) const {
  check(a);
  check(b);
  uint64_t n = kind_ == RingKind::GF ? p_ : pm_;
  RElem e = a;
  for (size_t i = 0; i < width_; ++i) e.v[i] = (e.v[i] + n - b.v[i]) % n;
  return e;
}

RElem Ring::neg(const RElem& a) const { return sub(zero(), a); }

RElem Ring::mul(const RElem& a, const RElem& b) const {
  check(a);
  check(b);
  switch (kind_) {
    case RingKind::Wm: {
      RElem e = zero();
      e.v[0] = (a.v[0] * b.v[0]) % pm_;
      return e;
    }
    case RingKind::GF: {
      std::vector<uint64_t> full(modulus_.size() + 1);
      std::copy(modulus_.begin(), modulus_.end(), full.begin());
      full[modulus_.size()] = 1;
      if (r_ == 1) {
        RElem e = zero();
        e.v[0] = (a.v[0] * b.v[0]) % p_;
        return e;
      }
      return RElem{poly_mulmod(a.v, b.v, full, p_)};
    }
    case RingKind::RelBase: {
      RElem e = zero();
      for (size_t i = 0; i < width_; ++i)
        for (size_t j = 0; i + j < width_; ++j)
          e.v[i + j] = (e.v[i + j] + a.v[i] * b.v[j]) % pm_;
      return e;
    }
  }
  throw std::logic_error("bad ring kind");
}

RElem Ring::inv(const RElem& a) const {
  check(a);
  if (!is_unit(a)) throw NonUnitError("inv of non-unit (reduces to 0 in the residue field)");
  switch (kind_) {
    case RingKind::Wm: {
      RElem e = zero();
      e.v[0] = mod_inv(a.v[0], pm_);
      return e;
    }
    case RingKind::GF:
      return pow(a, card() - 2);
    case RingKind::RelBase: {
      // Newton on the t-adic filtration: x_{k+1} = x_k (2 - a x_k)
      RElem x = zero();
      x.v[0] = mod_inv(a.v[0], pm_);
      RElem two = from_int(2);
      for (uint32_t it = 1; it < D_ + 1; it <<= 1) x = mul(x, sub(two, mul(a, x)));
      return x;
    }
  }
  throw std::logic_error("bad ring kind");
}

RElem Ring::pow(const RElem& a, uint64_t e) const {
  RElem base = a, acc = one();
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

RElem Ring::frobenius(const RElem& x) const {
  switch (kind_) {
    case RingKind::GF:
      return pow(x, p_);
    case RingKind::Wm:
      return x;  // k = F_p, the lift of Frobenius on Z/p^m is the identity
    case RingKind::RelBase:
      if (m_ != 1)
        throw std::logic_error("RelBase with m > 1 has no canonical Frobenius; use frob_lift_apply");
      return pow(x, p_);
  }
  throw std::logic_error("bad ring kind");
}

RElem Ring::frobenius_inverse(const RElem& x) const {
  if (kind_ == RingKind::Wm) return x;
  if (kind_ == RingKind::GF) {
    RElem y = x;
    for (uint32_t i = 1; i < r_; ++i) y = frobenius(y);
    return y;
  }
  if (kind_ == RingKind::RelBase && m_ == 1 && D_ == 1) return x;
  throw std::logic_error("frobenius_inverse only defined on perfect coefficient rings");
}

std::string Ring::to_string(const RElem& x) const {
  check(x);
  if (width_ == 1) return std::to_string(x.v[0]);
  std::string s = "[";
  for (size_t i = 0; i < width_; ++i) {
    if (i) s += ",";
    s += std::to_string(x.v[i]);
  }
  return s + "]";
}

RElem frob_lift_apply(const Ring& ring, const RElem& x, const FrobLiftSpec& lift) {
  if (ring.kind() != RingKind::RelBase)
    throw std::invalid_argument("frob_lift_apply needs a RelBase ring");
  if (lift.h.size() + 1 >= ring.D() + 1 && !lift.h.empty() && lift.h.size() > ring.D() - 1)
    throw std::invalid_argument("lift polynomial degree too large");
  // phi(t) = t^p + p*t*h(t)
  RElem phit = ring.zero();
  if (ring.p() < ring.D()) phit.v[ring.p()] = 1;
  uint64_t pm = ring.pm();
  for (size_t i = 0; i < lift.h.size() && i + 1 < ring.D(); ++i)
    phit.v[i + 1] = (phit.v[i + 1] + (uint64_t)ring.p() * (lift.h[i] % pm)) % pm;
  // evaluate x at phi(t) by Horner
  RElem acc = ring.zero();
  for (size_t i = ring.D(); i-- > 0;) {
    acc = ring.mul(acc, phit);
    RElem c = ring.zero();
    c.v[0] = x.v[i];
    acc = ring.add(acc, c);
  }
  return acc;
}

}  // namespace eozip
