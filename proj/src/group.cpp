#include "eozip/group.hpp"

#include <algorithm>
#include <sstream>

namespace eozip {

Mat::Mat(Ring ring, int n) : ring_(std::move(ring)), n_(n) {
  a_.assign((size_t)n * n, ring_.zero());
}

Mat Mat::identity(const Ring& ring, int n) {
  Mat m(ring, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = ring.one();
  return m;
}

Mat Mat::from_entries(const Ring& ring, int n, std::vector<RElem> entries) {
  if ((int)entries.size() != n * n) throw std::invalid_argument("entry count mismatch");
  Mat m(ring, n);
  m.a_ = std::move(entries);
  return m;
}

Mat Mat::mul(const Mat& o) const {
  if (n_ != o.n_ || ring_ != o.ring_) throw std::invalid_argument("shape mismatch");
  Mat r(ring_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const RElem& f = at(i, k);
      if (ring_.is_zero(f)) continue;
      for (int j = 0; j < n_; ++j)
        r.at(i, j) = ring_.add(r.at(i, j), ring_.mul(f, o.at(k, j)));
    }
  return r;
}

Mat Mat::add(const Mat& o) const {
  Mat r(ring_, n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ring_.add(a_[i], o.a_[i]);
  return r;
}

Mat Mat::sub(const Mat& o) const {
  Mat r(ring_, n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ring_.sub(a_[i], o.a_[i]);
  return r;
}

Mat Mat::transpose() const {
  Mat r(ring_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
  return r;
}

RElem Mat::det() const {
  if (n_ == 1) return at(0, 0);
  RElem acc = ring_.zero();
  for (int j = 0; j < n_; ++j) {
    Mat minor(ring_, n_ - 1);
    for (int r = 1; r < n_; ++r) {
      int cc = 0;
      for (int c = 0; c < n_; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = at(r, c);
      }
    }
    RElem term = ring_.mul(at(0, j), minor.det());
    acc = (j % 2 == 0) ? ring_.add(acc, term) : ring_.sub(acc, term);
  }
  return acc;
}

Mat Mat::inv() const {
  Mat a = *this;
  Mat r = Mat::identity(ring_, n_);
  for (int col = 0; col < n_; ++col) {
    int piv = -1;
    for (int row = col; row < n_; ++row)
      if (ring_.is_unit(a.at(row, col))) {
        piv = row;
        break;
      }
    if (piv < 0) throw NonUnitError("matrix not invertible over the local ring");
    if (piv != col)
      for (int c = 0; c < n_; ++c) {
        std::swap(a.at(piv, c), a.at(col, c));
        std::swap(r.at(piv, c), r.at(col, c));
      }
    RElem d = ring_.inv(a.at(col, col));
    for (int c = 0; c < n_; ++c) {
      a.at(col, c) = ring_.mul(a.at(col, c), d);
      r.at(col, c) = ring_.mul(r.at(col, c), d);
    }
    for (int row = 0; row < n_; ++row) {
      if (row == col) continue;
      RElem f = a.at(row, col);
      if (ring_.is_zero(f)) continue;
      for (int c = 0; c < n_; ++c) {
        a.at(row, c) = ring_.sub(a.at(row, c), ring_.mul(f, a.at(col, c)));
        r.at(row, c) = ring_.sub(r.at(row, c), ring_.mul(f, r.at(col, c)));
      }
    }
  }
  return r;
}

bool Mat::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j && !ring_.is_one(at(i, j))) return false;
      if (i != j && !ring_.is_zero(at(i, j))) return false;
    }
  return true;
}

Mat Mat::frobenius_twist() const {
  Mat r(ring_, n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ring_.frobenius(a_[i]);
  return r;
}

Mat Mat::frobenius_twist_inverse() const {
  Mat r(ring_, n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ring_.frobenius_inverse(a_[i]);
  return r;
}

MatSeries Mat::to_series(int N) const { return MatSeries::from_const(ring_, N, n_, a_); }

Mat Mat::from_series_mod_u(const MatSeries& m) {
  return Mat::from_entries(m.ring(), m.n(), m.reduce_mod_u());
}

std::string Mat::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    os << (i ? " ; " : "[");
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << ring_.to_string(at(i, j));
  }
  os << "]";
  return os.str();
}

GroupSpec GroupSpec::gsp(int n) {
  if (n % 2 != 0 || n < 2) throw std::invalid_argument("GSp needs even size");
  return {GroupKind::GSp, n};
}

std::string GroupSpec::name() const {
  switch (kind) {
    case GroupKind::GL:
      return "gl:" + std::to_string(n);
    case GroupKind::SL:
      return "sl:" + std::to_string(n);
    case GroupKind::GSp:
      return "gsp:" + std::to_string(n);
  }
  return "?";
}

Mat symplectic_form(const Ring& ring, int n) {
  Mat J(ring, n);
  int g = n / 2;
  for (int i = 0; i < n; ++i) J.at(i, n - 1 - i) = i < g ? ring.one() : ring.neg(ring.one());
  return J;
}

Cochar::Cochar(std::vector<int> weights) : w(std::move(weights)) {
  if (w.empty()) throw std::invalid_argument("empty cocharacter");
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i - 1] < w[i]) throw std::invalid_argument("cocharacter weights must be descending");
}

int Cochar::max_weight() const { return *std::max_element(w.begin(), w.end()); }

bool Cochar::zip_weights() const {
  return std::all_of(w.begin(), w.end(), [](int a) { return a == 0 || a == 1; });
}

bool Cochar::gsp_compatible() const {
  int n = (int)w.size();
  for (int i = 0; i < n; ++i)
    if (w[(size_t)i] + w[(size_t)(n - 1 - i)] != 1) return false;
  return true;
}

std::vector<int> Cochar::blocks() const {
  std::vector<int> b;
  int run = 1;
  for (size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1])
      ++run;
    else {
      b.push_back(run);
      run = 1;
    }
  }
  b.push_back(run);
  return b;
}

bool membership(const GroupSpec& G, const Mat& M) {
  if (M.n() != G.n) throw std::invalid_argument("size mismatch");
  switch (G.kind) {
    case GroupKind::GL:
      return M.ring().is_unit(M.det());
    case GroupKind::SL:
      return M.ring().is_one(M.det());
    case GroupKind::GSp: {
      Mat J = symplectic_form(M.ring(), G.n);
      Mat s = M.transpose().mul(J).mul(M);
      // s must equal c*J for a unit scalar c
      RElem c = M.ring().zero();
      bool have_c = false;
      for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) {
          const RElem& jij = J.at(i, j);
          if (M.ring().is_zero(jij)) {
            if (!M.ring().is_zero(s.at(i, j))) return false;
          } else {
            RElem ratio = M.ring().mul(s.at(i, j), M.ring().inv(jij));
            if (!have_c) {
              c = ratio;
              have_c = true;
            } else if (!(ratio == c)) {
              return false;
            }
          }
        }
      return have_c && M.ring().is_unit(c);
    }
  }
  return false;
}

RElem gsp_multiplier(const Mat& M) {
  Mat J = symplectic_form(M.ring(), M.n());
  Mat s = M.transpose().mul(J).mul(M);
  RElem c = M.ring().mul(s.at(0, M.n() - 1), M.ring().inv(J.at(0, M.n() - 1)));
  if (!membership(GroupSpec::gsp(M.n()), M)) throw NonUnitError("not a symplectic similitude");
  return c;
}

bool membership(const GroupSpec& G, const MatSeries& M) {
  if (M.n() != G.n) throw std::invalid_argument("size mismatch");
  switch (G.kind) {
    case GroupKind::GL: {
      TruncSeries d = M.det();
      if (!d.known_at(0)) throw PrecisionError("cannot decide membership");
      // unit of A[u]/u^N iff the constant term is a unit (no poles allowed)
      for (int i = 0; i < M.n(); ++i)
        for (int j = 0; j < M.n(); ++j) {
          auto ord = M.at(i, j).order();
          if (ord && *ord < 0) return false;
        }
      return M.ring().is_unit(d.coeff(0));
    }
    case GroupKind::SL: {
      TruncSeries d = M.det();
      TruncSeries one = TruncSeries::constant(M.ring(), M.N(), M.ring().one());
      return d.equal(one);
    }
    case GroupKind::GSp: {
      Mat Jc = symplectic_form(M.ring(), G.n);
      MatSeries J = Jc.to_series(M.N());
      MatSeries s = M.transpose().mul(J).mul(M);
      // c = s[0][n-1] / J[0][n-1]; then s must equal c*J and c must be a unit
      TruncSeries c = s.at(0, G.n - 1).mul(
          TruncSeries::constant(M.ring(), M.N(), M.ring().inv(Jc.at(0, G.n - 1))));
      if (!c.known_at(0) || !M.ring().is_unit(c.coeff(0))) return false;
      MatSeries cJ = J.scale(c);
      return s.equal(cJ);
    }
  }
  return false;
}

bool parabolic_membership(const Cochar& chi, const Mat& M, Part part) {
  const Ring& k = M.ring();
  int n = M.n();
  if (n != chi.n()) throw std::invalid_argument("cocharacter size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int wgt = chi.entry_weight(i, j);
      const RElem& x = M.at(i, j);
      bool diag_block = wgt == 0;
      switch (part) {
        case Part::PPlus:
          if (wgt < 0 && !k.is_zero(x)) return false;
          break;
        case Part::PMinus:
          if (wgt > 0 && !k.is_zero(x)) return false;
          break;
        case Part::Levi:
          if (!diag_block && !k.is_zero(x)) return false;
          break;
        case Part::UPlus:
          if (wgt < 0 && !k.is_zero(x)) return false;
          if (diag_block) {
            const RElem want = (i == j) ? k.one() : k.zero();
            if (!(x == want)) return false;
          }
          break;
        case Part::UMinus:
          if (wgt > 0 && !k.is_zero(x)) return false;
          if (diag_block) {
            const RElem want = (i == j) ? k.one() : k.zero();
            if (!(x == want)) return false;
          }
          break;
      }
    }
  return true;
}

Mat levi_part(const Cochar& chi, const Mat& M) {
  Mat r(M.ring(), M.n());
  for (int i = 0; i < M.n(); ++i)
    for (int j = 0; j < M.n(); ++j)
      if (chi.entry_weight(i, j) == 0) r.at(i, j) = M.at(i, j);
  return r;
}

bool zip_membership(const ZipPair& z, const GroupSpec& G, const Cochar& chi) {
  if (!membership(G, z.gplus) || !membership(G, z.gminus)) return false;
  if (!parabolic_membership(chi, z.gplus, Part::PPlus)) return false;
  if (!parabolic_membership(chi, z.gminus, Part::PMinus)) return false;
  Mat lp = levi_part(chi, z.gplus).frobenius_twist();
  Mat lm = levi_part(chi, z.gminus);
  return lp.equal(lm);
}

MatSeries chi_matrix(const Cochar& chi, const Ring& coeff, int N) {
  int n = chi.n();
  MatSeries m(coeff, n, N);
  for (int i = 0; i < n; ++i) {
    int a = chi.w[(size_t)i];
    if (a >= N) throw PrecisionError("truncation window too small for the cocharacter");
    m.at(i, i) = TruncSeries::monomial(coeff, N, a, coeff.one());
  }
  return m;
}

MatSeries mu_matrix(const Cochar& chi, uint32_t p, const Ring& coeff, int N) {
  int n = chi.n();
  MatSeries m(coeff, n, N);
  for (int i = 0; i < n; ++i) {
    long a = (long)p * chi.w[(size_t)i];
    if (a >= N) throw PrecisionError("truncation window too small for p*max(chi)");
    m.at(i, i) = TruncSeries::monomial(coeff, N, (int)a, coeff.one());
  }
  return m;
}

std::vector<Root> positive_entry_roots(const GroupSpec& G) {
  std::vector<Root> roots;
  int n = G.n;
  if (G.kind == GroupKind::GL || G.kind == GroupKind::SL) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) roots.push_back(Root{{{i, j, +1}}, i, j});
    return roots;
  }
  int g = G.g();
  auto mirror = [n](int i) { return n - 1 - i; };
  // GL-type roots inside the Levi of the Siegel block structure
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      if (i != j) roots.push_back(Root{{{i, j, +1}, {mirror(j), mirror(i), -1}}, i, j});
  // symmetric roots through the antidiagonal, both signs
  for (int i = 0; i < g; ++i) {
    roots.push_back(Root{{{i, mirror(i), +1}}, i, mirror(i)});
    roots.push_back(Root{{{mirror(i), i, +1}}, mirror(i), i});
    for (int j = i + 1; j < g; ++j) {
      roots.push_back(Root{{{i, mirror(j), +1}, {j, mirror(i), +1}}, i, mirror(j)});
      roots.push_back(Root{{{mirror(j), i, +1}, {mirror(i), j, +1}}, mirror(j), i});
    }
  }
  return roots;
}

Mat root_element(const GroupSpec& G, const Ring& ring, const Root& r, const RElem& x) {
  Mat m = Mat::identity(ring, G.n);
  for (auto [i, j, s] : r.pattern)
    m.at(i, j) = ring.add(m.at(i, j), s > 0 ? x : ring.neg(x));
  return m;
}

MatSeries root_element_series(const GroupSpec& G, const Ring& ring, int N, const Root& r,
                              const TruncSeries& f) {
  MatSeries m = MatSeries::identity(ring, G.n, N);
  for (auto [i, j, s] : r.pattern) m.at(i, j) = m.at(i, j).add(s > 0 ? f : f.neg());
  return m;
}

std::vector<Mat> torus_generators(const GroupSpec& G, const Ring& gf) {
  if (gf.kind() != RingKind::GF) throw std::invalid_argument("torus_generators needs a field");
  std::vector<Mat> gens;
  uint64_t q = gf.card();
  if (q == 2 && G.kind != GroupKind::GSp) return gens;  // trivial torus
  // find a generator of F_q^* by order check
  RElem gamma = gf.zero();
  for (uint64_t idx = 1; idx < q; ++idx) {
    RElem cand = gf.from_index(idx);
    RElem acc = cand;
    uint64_t ord = 1;
    while (!gf.is_one(acc)) {
      acc = gf.mul(acc, cand);
      ++ord;
    }
    if (ord == q - 1) {
      gamma = cand;
      break;
    }
  }
  int n = G.n;
  switch (G.kind) {
    case GroupKind::GL:
      for (int i = 0; i < n; ++i) {
        Mat t = Mat::identity(gf, n);
        t.at(i, i) = gamma;
        gens.push_back(t);
      }
      break;
    case GroupKind::SL:
      for (int i = 0; i + 1 < n; ++i) {
        Mat t = Mat::identity(gf, n);
        t.at(i, i) = gamma;
        t.at(i + 1, i + 1) = gf.inv(gamma);
        gens.push_back(t);
      }
      break;
    case GroupKind::GSp: {
      int g = G.g();
      for (int i = 0; i < g; ++i) {
        Mat t = Mat::identity(gf, n);
        t.at(i, i) = gamma;
        t.at(n - 1 - i, n - 1 - i) = gf.inv(gamma);
        gens.push_back(t);
      }
      if (q > 2) {
        Mat t = Mat::identity(gf, n);  // pure similitude: c = gamma
        for (int i = g; i < n; ++i) t.at(i, i) = gamma;
        gens.push_back(t);
      }
      break;
    }
  }
  return gens;
}

std::vector<Mat> group_generators(const GroupSpec& G, const Ring& gf) {
  std::vector<Mat> gens = torus_generators(G, gf);
  uint64_t q = gf.card();
  for (const Root& r : positive_entry_roots(G))
    for (uint64_t idx = 1; idx < q; ++idx)
      gens.push_back(root_element(G, gf, r, gf.from_index(idx)));
  return gens;
}

std::vector<Mat> levi_generators(const GroupSpec& G, const Cochar& chi, const Ring& gf) {
  std::vector<Mat> gens = torus_generators(G, gf);
  uint64_t q = gf.card();
  for (const Root& r : positive_entry_roots(G)) {
    if (chi.entry_weight(r.i, r.j) != 0) continue;
    for (uint64_t idx = 1; idx < q; ++idx)
      gens.push_back(root_element(G, gf, r, gf.from_index(idx)));
  }
  return gens;
}

namespace {

RElem random_elem(const Ring& ring, std::mt19937_64& rng) {
  RElem e = ring.zero();
  uint64_t n = ring.kind() == RingKind::GF ? ring.p() : ring.pm();
  for (auto& limb : e.v) limb = rng() % n;
  return e;
}

RElem random_unit(const Ring& ring, std::mt19937_64& rng) {
  for (;;) {
    RElem e = random_elem(ring, rng);
    if (ring.is_unit(e)) return e;
  }
}

TruncSeries random_series(const Ring& ring, int N, std::mt19937_64& rng) {
  std::vector<RElem> cs;
  for (int i = 0; i < N; ++i) cs.push_back(random_elem(ring, rng));
  return TruncSeries::from_coeffs(ring, N, 0, std::move(cs));
}

MatSeries torus_series(const GroupSpec& G, const Ring& ring, int N, std::mt19937_64& rng) {
  int n = G.n;
  MatSeries t(ring, n, N);
  switch (G.kind) {
    case GroupKind::GL:
      for (int i = 0; i < n; ++i) {
        TruncSeries d = random_series(ring, N, rng);
        d = TruncSeries::constant(ring, N, random_unit(ring, rng)).add(d.shift(1));
        t.at(i, i) = d;
      }
      break;
    case GroupKind::SL: {
      TruncSeries prod = TruncSeries::constant(ring, N, ring.one());
      for (int i = 0; i + 1 < n; ++i) {
        TruncSeries d = TruncSeries::constant(ring, N, random_unit(ring, rng))
                            .add(random_series(ring, N, rng).shift(1));
        t.at(i, i) = d;
        prod = prod.mul(d);
      }
      t.at(n - 1, n - 1) = prod.invert();
      break;
    }
    case GroupKind::GSp: {
      int g = G.g();
      TruncSeries c = TruncSeries::constant(ring, N, random_unit(ring, rng))
                          .add(random_series(ring, N, rng).shift(1));
      for (int i = 0; i < g; ++i) {
        TruncSeries d = TruncSeries::constant(ring, N, random_unit(ring, rng))
                            .add(random_series(ring, N, rng).shift(1));
        t.at(i, i) = d;
        t.at(n - 1 - i, n - 1 - i) = c.mul(d.invert());
      }
      break;
    }
  }
  return t;
}

}  // namespace

MatSeries random_k_element(const GroupSpec& G, const Ring& coeff, int N, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto roots = positive_entry_roots(G);
  MatSeries m = torus_series(G, coeff, N, rng);
  // a couple of sweeps through all root subgroups in random order
  for (int sweep = 0; sweep < 2; ++sweep) {
    std::vector<size_t> order(roots.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t idx : order) {
      TruncSeries f = random_series(coeff, N, rng);
      m = m.mul(root_element_series(G, coeff, N, roots[idx], f));
    }
  }
  return m;
}

Mat random_group_element(const GroupSpec& G, const Ring& ring, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto roots = positive_entry_roots(G);
  int n = G.n;
  Mat m = Mat::identity(ring, n);
  switch (G.kind) {
    case GroupKind::GL:
      for (int i = 0; i < n; ++i) m.at(i, i) = random_unit(ring, rng);
      break;
    case GroupKind::SL: {
      RElem prod = ring.one();
      for (int i = 0; i + 1 < n; ++i) {
        RElem d = random_unit(ring, rng);
        m.at(i, i) = d;
        prod = ring.mul(prod, d);
      }
      m.at(n - 1, n - 1) = ring.inv(prod);
      break;
    }
    case GroupKind::GSp: {
      int g = G.g();
      RElem c = random_unit(ring, rng);
      for (int i = 0; i < g; ++i) {
        RElem d = random_unit(ring, rng);
        m.at(i, i) = d;
        m.at(n - 1 - i, n - 1 - i) = ring.mul(c, ring.inv(d));
      }
      break;
    }
  }
  for (int sweep = 0; sweep < 2; ++sweep) {
    std::vector<size_t> order(roots.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t idx : order)
      m = m.mul(root_element(G, ring, roots[idx], random_elem(ring, rng)));
  }
  return m;
}

}  // namespace eozip
