#include "eozip/series.hpp"

#include <algorithm>
#include <sstream>

namespace eozip {

TruncSeries::TruncSeries(Ring ring, int N) : ring_(std::move(ring)), N_(N), known_(N) {
  if (N <= 0) throw std::invalid_argument("window N must be >= 1");
  c_.assign((size_t)N, ring_.zero());
}

TruncSeries TruncSeries::constant(const Ring& ring, int N, const RElem& c) {
  TruncSeries f(ring, N);
  f.c_[0] = c;
  return f;
}

TruncSeries TruncSeries::monomial(const Ring& ring, int N, int exponent, const RElem& c) {
  TruncSeries f(ring, N);
  if (exponent >= 0) {
    if (exponent >= N) throw PrecisionError("monomial exponent outside window");
    f.c_[(size_t)exponent] = c;
  } else {
    f.val_ = exponent;
    f.c_[0] = c;
  }
  return f;
}

TruncSeries TruncSeries::from_coeffs(const Ring& ring, int N, int val, std::vector<RElem> cs) {
  TruncSeries f(ring, N);
  f.val_ = val;
  if ((int)cs.size() > N) throw std::invalid_argument("too many coefficients");
  for (size_t i = 0; i < cs.size(); ++i) f.c_[i] = std::move(cs[i]);
  return f;
}

TruncSeries TruncSeries::with_known(const Ring& ring, int N, int val, int known,
                                    std::vector<RElem> cs) {
  TruncSeries f = from_coeffs(ring, N, val, std::move(cs));
  if (known < 0 || known > N) throw std::invalid_argument("bad known count");
  f.known_ = known;
  return f;
}

const RElem& TruncSeries::coeff(int e) const {
  if (e >= prec()) throw PrecisionError("coefficient past the guaranteed window");
  if (e < val_) {
    thread_local RElem zero_cache;  // below the stored window the series is exactly zero
    zero_cache = ring_.zero();
    return zero_cache;
  }
  return c_[(size_t)(e - val_)];
}

std::optional<int> TruncSeries::order() const {
  for (int i = 0; i < known_; ++i)
    if (!ring_.is_zero(c_[(size_t)i])) return val_ + i;
  return std::nullopt;
}

void TruncSeries::canonicalize() {
  while (val_ < 0 && known_ > 0 && ring_.is_zero(c_[0])) {
    c_.erase(c_.begin());
    c_.push_back(ring_.zero());
    ++val_;
    --known_;  // the top slot is no longer guaranteed
  }
}

TruncSeries TruncSeries::add(const TruncSeries& o) const {
  if (ring_ != o.ring_) throw std::invalid_argument("ring mismatch");
  if (N_ != o.N_) throw std::invalid_argument("window mismatch (comparing different N)");
  int v = std::min(val_, o.val_);
  int pr = std::min(prec(), o.prec());
  TruncSeries r(ring_, N_);
  r.val_ = v;
  r.known_ = std::max(0, std::min(pr - v, N_));
  for (int i = 0; i < r.known_; ++i) {
    int e = v + i;
    RElem a = (e >= val_ && e - val_ < known_) ? c_[(size_t)(e - val_)] : ring_.zero();
    RElem b = (e >= o.val_ && e - o.val_ < o.known_) ? o.c_[(size_t)(e - o.val_)] : ring_.zero();
    r.c_[(size_t)i] = ring_.add(a, b);
  }
  r.canonicalize();
  return r;
}

TruncSeries TruncSeries::sub(const TruncSeries& o) const { return add(o.neg()); }

TruncSeries TruncSeries::neg() const {
  TruncSeries r = *this;
  for (int i = 0; i < known_; ++i) r.c_[(size_t)i] = ring_.neg(r.c_[(size_t)i]);
  return r;
}

TruncSeries TruncSeries::mul(const TruncSeries& o) const {
  if (ring_ != o.ring_) throw std::invalid_argument("ring mismatch");
  if (N_ != o.N_) throw std::invalid_argument("window mismatch (comparing different N)");
  TruncSeries r(ring_, N_);
  r.val_ = val_ + o.val_;
  r.known_ = std::min({known_, o.known_, N_});
  if (known_ == 0 || o.known_ == 0) r.known_ = 0;
  for (int i = 0; i < known_ && i < r.known_; ++i) {
    if (ring_.is_zero(c_[(size_t)i])) continue;
    for (int j = 0; j < o.known_ && i + j < r.known_; ++j) {
      r.c_[(size_t)(i + j)] =
          ring_.add(r.c_[(size_t)(i + j)], ring_.mul(c_[(size_t)i], o.c_[(size_t)j]));
    }
  }
  r.canonicalize();
  return r;
}

TruncSeries TruncSeries::scale(const RElem& k) const {
  TruncSeries r = *this;
  for (int i = 0; i < known_; ++i) r.c_[(size_t)i] = ring_.mul(r.c_[(size_t)i], k);
  return r;
}

TruncSeries TruncSeries::shift(int k) const {
  TruncSeries r = *this;
  r.val_ += k;
  return r;
}

TruncSeries TruncSeries::invert() const {
  auto ord = order();
  if (!ord) throw NonUnitConstantTerm("cannot invert a series that is zero on its window");
  int v = *ord;
  const RElem& lead = c_[(size_t)(v - val_)];
  if (!ring_.is_unit(lead))
    throw NonUnitConstantTerm("leading coefficient is not a unit");
  // strip u^v, then Newton: x <- x(2 - g x) doubles correct terms
  int kn = known_ - (v - val_);
  TruncSeries g(ring_, N_);
  g.val_ = 0;
  g.known_ = kn;
  for (int i = 0; i < kn; ++i) g.c_[(size_t)i] = c_[(size_t)(v - val_ + i)];
  TruncSeries x = TruncSeries::constant(ring_, N_, ring_.inv(lead));
  x.known_ = kn;
  TruncSeries two = TruncSeries::constant(ring_, N_, ring_.from_int(2));
  two.known_ = kn;
  for (int correct = 1; correct < kn; correct <<= 1) x = x.mul(two.sub(g.mul(x)));
  x.known_ = kn;
  x.val_ = -v;
  return x;
}

bool TruncSeries::equal(const TruncSeries& o) const {
  if (N_ != o.N_) throw std::invalid_argument("comparing series with different N");
  int pr = std::min(prec(), o.prec());
  int lo = std::min(val_, o.val_);
  for (int e = lo; e < pr; ++e) {
    RElem a = (e >= val_ && e - val_ < known_) ? c_[(size_t)(e - val_)] : ring_.zero();
    RElem b = (e >= o.val_ && e - o.val_ < o.known_) ? o.c_[(size_t)(e - o.val_)] : ring_.zero();
    if (!(a == b)) return false;
  }
  return true;
}

Tri TruncSeries::equal_mod(const TruncSeries& o, int k) const {
  if (N_ != o.N_) throw std::invalid_argument("comparing series with different N");
  int pr = std::min(prec(), o.prec());
  int lo = std::min(val_, o.val_);
  for (int e = lo; e < std::min(k, pr); ++e) {
    RElem a = (e >= val_ && e - val_ < known_) ? c_[(size_t)(e - val_)] : ring_.zero();
    RElem b = (e >= o.val_ && e - o.val_ < o.known_) ? o.c_[(size_t)(e - o.val_)] : ring_.zero();
    if (!(a == b)) return Tri::False;
  }
  return pr >= k ? Tri::True : Tri::Inconclusive;
}

std::string TruncSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < known_; ++i) {
    if (ring_.is_zero(c_[(size_t)i])) continue;
    if (!first) os << " + ";
    first = false;
    os << ring_.to_string(c_[(size_t)i]);
    int e = val_ + i;
    if (e != 0) os << "*u^" << e;
  }
  if (first) os << "0";
  os << " (mod u^" << prec() << ")";
  return os.str();
}

namespace {

// shared engine for phi / subst_u_to_up: exponent e -> p*e, with an optional
// coefficient map applied first
PhiResult stretch(const TruncSeries& f, bool frob_coeffs, const FrobLiftSpec* lift) {
  const Ring& k = f.ring();
  long p = (long)k.p();
  long rval = p * f.val();
  // the image is exact modulo u^{p*prec}; the window caps what we can store
  int kn = (int)std::min<long>((long)f.N(), p * f.prec() - rval);
  kn = std::max(kn, 0);
  std::vector<RElem> cs((size_t)kn, k.zero());
  bool lost = false;
  for (int i = 0; i < f.known(); ++i) {
    const RElem& a = f.coeff(f.val() + i);
    if (k.is_zero(a)) continue;
    RElem b = a;
    if (frob_coeffs) b = lift ? frob_lift_apply(k, a, *lift) : k.frobenius(a);
    long out = p * (long)(f.val() + i) - rval;
    if (out < kn)
      cs[(size_t)out] = std::move(b);
    else
      lost = true;
  }
  return PhiResult{TruncSeries::with_known(k, f.N(), (int)rval, kn, std::move(cs)), lost};
}

}  // namespace

PhiResult phi_series(const TruncSeries& f) { return stretch(f, true, nullptr); }

PhiResult phi_series_with(const TruncSeries& f, const FrobLiftSpec& lift) {
  return stretch(f, true, &lift);
}

TruncSeries sigma_series(const TruncSeries& f) {
  std::vector<RElem> cs;
  for (int i = 0; i < f.known(); ++i) cs.push_back(f.ring().frobenius(f.coeff(f.val() + i)));
  return TruncSeries::with_known(f.ring(), f.N(), f.val(), f.known(), std::move(cs));
}

PhiResult subst_u_to_up(const TruncSeries& f) { return stretch(f, false, nullptr); }

MatSeries::MatSeries(Ring ring, int n, int N) : ring_(std::move(ring)), n_(n), N_(N) {
  e_.assign((size_t)n * n, TruncSeries(ring_, N_));
}

MatSeries MatSeries::identity(const Ring& ring, int n, int N) {
  MatSeries m(ring, n, N);
  for (int i = 0; i < n; ++i) m.at(i, i) = TruncSeries::constant(ring, N, ring.one());
  return m;
}

MatSeries MatSeries::from_const(const Ring& ring, int N, int n, const std::vector<RElem>& entries) {
  if ((int)entries.size() != n * n) throw std::invalid_argument("entry count mismatch");
  MatSeries m(ring, n, N);
  for (int i = 0; i < n * n; ++i)
    m.e_[(size_t)i] = TruncSeries::constant(ring, N, entries[(size_t)i]);
  return m;
}

MatSeries MatSeries::mul(const MatSeries& o) const {
  if (n_ != o.n_ || ring_ != o.ring_ || N_ != o.N_) throw std::invalid_argument("shape mismatch");
  MatSeries r(ring_, n_, N_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      TruncSeries acc = at(i, 0).mul(o.at(0, j));
      for (int k = 1; k < n_; ++k) acc = acc.add(at(i, k).mul(o.at(k, j)));
      r.at(i, j) = acc;
    }
  return r;
}

MatSeries MatSeries::add(const MatSeries& o) const {
  MatSeries r(ring_, n_, N_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].add(o.e_[i]);
  return r;
}

MatSeries MatSeries::sub(const MatSeries& o) const {
  MatSeries r(ring_, n_, N_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].sub(o.e_[i]);
  return r;
}

MatSeries MatSeries::transpose() const {
  MatSeries r(ring_, n_, N_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
  return r;
}

MatSeries MatSeries::scale(const TruncSeries& f) const {
  MatSeries r(ring_, n_, N_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].mul(f);
  return r;
}

bool MatSeries::equal(const MatSeries& o) const {
  for (size_t i = 0; i < e_.size(); ++i)
    if (!e_[i].equal(o.e_[i])) return false;
  return true;
}

Tri MatSeries::equal_mod(const MatSeries& o, int k) const {
  bool inconclusive = false;
  for (size_t i = 0; i < e_.size(); ++i) {
    Tri t = e_[i].equal_mod(o.e_[i], k);
    if (t == Tri::False) return Tri::False;
    if (t == Tri::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Tri::Inconclusive : Tri::True;
}

MatSeries MatSeries::sigma() const {
  MatSeries r(ring_, n_, N_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = sigma_series(e_[i]);
  return r;
}

MatPhiResult MatSeries::phi() const {
  MatSeries r(ring_, n_, N_);
  bool lost = false;
  for (size_t i = 0; i < e_.size(); ++i) {
    auto [s, l] = phi_series(e_[i]);
    r.e_[i] = s;
    lost |= l;
  }
  return {r, lost};
}

MatPhiResult MatSeries::phi_with(const FrobLiftSpec& lift) const {
  MatSeries r(ring_, n_, N_);
  bool lost = false;
  for (size_t i = 0; i < e_.size(); ++i) {
    auto [s, l] = phi_series_with(e_[i], lift);
    r.e_[i] = s;
    lost |= l;
  }
  return {r, lost};
}

MatPhiResult MatSeries::subst_up() const {
  MatSeries r(ring_, n_, N_);
  bool lost = false;
  for (size_t i = 0; i < e_.size(); ++i) {
    auto [s, l] = subst_u_to_up(e_[i]);
    r.e_[i] = s;
    lost |= l;
  }
  return {r, lost};
}

TruncSeries MatSeries::det() const {
  if (n_ == 1) return at(0, 0);
  // cofactor expansion along the first row; fine for the sizes we handle
  TruncSeries acc(ring_, N_);
  for (int j = 0; j < n_; ++j) {
    MatSeries minor(ring_, n_ - 1, N_);
    for (int r = 1; r < n_; ++r) {
      int cc = 0;
      for (int c = 0; c < n_; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = at(r, c);
      }
    }
    TruncSeries term = at(0, j).mul(minor.det());
    acc = (j % 2 == 0) ? acc.add(term) : acc.sub(term);
  }
  return acc;
}

MatSeries MatSeries::invert() const {
  // constant term must be invertible over the coefficient ring
  std::vector<RElem> c0 = reduce_mod_u();
  // Gauss over the (local) coefficient ring
  std::vector<RElem> a = c0;
  std::vector<RElem> inv((size_t)n_ * n_, ring_.zero());
  for (int i = 0; i < n_; ++i) inv[(size_t)i * n_ + i] = ring_.one();
  for (int col = 0; col < n_; ++col) {
    int piv = -1;
    for (int r = col; r < n_; ++r)
      if (ring_.is_unit(a[(size_t)r * n_ + col])) {
        piv = r;
        break;
      }
    if (piv < 0) throw NonUnitConstantTerm("matrix constant term not invertible");
    if (piv != col)
      for (int c = 0; c < n_; ++c) {
        std::swap(a[(size_t)piv * n_ + c], a[(size_t)col * n_ + c]);
        std::swap(inv[(size_t)piv * n_ + c], inv[(size_t)col * n_ + c]);
      }
    RElem d = ring_.inv(a[(size_t)col * n_ + col]);
    for (int c = 0; c < n_; ++c) {
      a[(size_t)col * n_ + c] = ring_.mul(a[(size_t)col * n_ + c], d);
      inv[(size_t)col * n_ + c] = ring_.mul(inv[(size_t)col * n_ + c], d);
    }
    for (int r = 0; r < n_; ++r) {
      if (r == col) continue;
      RElem f = a[(size_t)r * n_ + col];
      if (ring_.is_zero(f)) continue;
      for (int c = 0; c < n_; ++c) {
        a[(size_t)r * n_ + c] =
            ring_.sub(a[(size_t)r * n_ + c], ring_.mul(f, a[(size_t)col * n_ + c]));
        inv[(size_t)r * n_ + c] =
            ring_.sub(inv[(size_t)r * n_ + c], ring_.mul(f, inv[(size_t)col * n_ + c]));
      }
    }
  }
  MatSeries x = MatSeries::from_const(ring_, N_, n_, inv);
  // Neumann: x <- x(2I - M x) doubles the number of correct u-coefficients
  MatSeries two_i = MatSeries::identity(ring_, n_, N_);
  for (int i = 0; i < n_; ++i)
    two_i.at(i, i) = TruncSeries::constant(ring_, N_, ring_.from_int(2));
  for (int correct = 1; correct < N_; correct <<= 1) x = x.mul(two_i.sub(this->mul(x)));
  return x;
}

MatSeries MatSeries::laurent_invert() const {
  TruncSeries d = det();
  TruncSeries dinv = d.invert();  // throws if no known unit lead
  MatSeries adj(ring_, n_, N_);
  if (n_ == 1) {
    adj.at(0, 0) = TruncSeries::constant(ring_, N_, ring_.one());
  } else {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        MatSeries minor(ring_, n_ - 1, N_);
        for (int r = 0, rr = 0; r < n_; ++r) {
          if (r == j) continue;  // adjugate = transposed cofactors
          for (int c = 0, cc = 0; c < n_; ++c) {
            if (c == i) continue;
            minor.at(rr, cc++) = at(r, c);
          }
          ++rr;
        }
        TruncSeries cof = minor.det();
        adj.at(i, j) = ((i + j) % 2 == 0) ? cof : cof.neg();
      }
  }
  return adj.scale(dinv);
}

std::vector<RElem> MatSeries::reduce_mod_u() const {
  std::vector<RElem> out;
  out.reserve(e_.size());
  for (const auto& f : e_) {
    if (!f.known_at(0)) throw PrecisionError("constant term not covered by the window");
    out.push_back(f.coeff(0));
  }
  return out;
}

bool MatSeries::has_known_pole() const {
  for (const auto& f : e_) {
    auto ord = f.order();
    if (ord && *ord < 0) return true;
  }
  return false;
}

Tri MatSeries::in_K1_tri() const {
  if (has_known_pole()) return Tri::False;
  bool inconclusive = false;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const TruncSeries& f = at(i, j);
      if (f.val() < 0 && f.prec() <= 0) inconclusive = true;  // poles undecidable
      if (!f.known_at(0)) {
        inconclusive = true;
        continue;
      }
      const RElem want = (i == j) ? ring_.one() : ring_.zero();
      if (!(f.coeff(0) == want)) return Tri::False;
    }
  return inconclusive ? Tri::Inconclusive : Tri::True;
}

bool MatSeries::is_in_K1() const {
  for (const auto& f : e_) {
    auto ord = f.order();
    if (ord && *ord < 0) throw PoleError("matrix has a pole");
  }
  Tri t = in_K1_tri();
  if (t == Tri::Inconclusive) throw PrecisionError("window too small to decide K1 membership");
  return t == Tri::True;
}

std::string MatSeries::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    os << (i ? "\n" : "") << "[ ";
    for (int j = 0; j < n_; ++j) os << at(i, j).to_string() << (j + 1 < n_ ? " | " : "");
    os << " ]";
  }
  return os.str();
}

}  // namespace eozip
