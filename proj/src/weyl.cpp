#include "eozip/weyl.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace eozip {

namespace {
constexpr size_t kWeylGuard = 100000;
}

std::vector<int> WeylGroup::simple_perm(int s) const {
  std::vector<int> p(nperm_);
  std::iota(p.begin(), p.end(), 0);
  if (G_.kind == GroupKind::GSp) {
    int g = G_.g();
    if (s < g) {
      std::swap(p[(size_t)s - 1], p[(size_t)s]);
      std::swap(p[(size_t)(nperm_ - s - 1)], p[(size_t)(nperm_ - s)]);
    } else {
      std::swap(p[(size_t)g - 1], p[(size_t)g]);
    }
  } else {
    std::swap(p[(size_t)s - 1], p[(size_t)s]);
  }
  return p;
}

WeylGroup::WeylGroup(const GroupSpec& G) : G_(G) {
  nperm_ = G.n;
  rank_ = (G.kind == GroupKind::GSp) ? G.g() : G.n - 1;
  std::vector<int> ident(nperm_);
  std::iota(ident.begin(), ident.end(), 0);
  // BFS from the identity over right multiplication by simple reflections;
  // distance = Coxeter length, the BFS tree gives one reduced word each.
  perms_.push_back(ident);
  length_.push_back(0);
  word_.push_back({});
  index_[ident] = 0;
  std::deque<Elem> queue{0};
  std::vector<std::vector<int>> simples;
  for (int s = 1; s <= rank_; ++s) simples.push_back(simple_perm(s));
  while (!queue.empty()) {
    Elem w = queue.front();
    queue.pop_front();
    for (int s = 1; s <= rank_; ++s) {
      std::vector<int> q(nperm_);
      const auto& pw = perms_[(size_t)w];
      const auto& ps = simples[(size_t)s - 1];
      for (int i = 0; i < nperm_; ++i) q[(size_t)i] = pw[(size_t)ps[(size_t)i]];  // w * s
      auto it = index_.find(q);
      if (it == index_.end()) {
        if (perms_.size() >= kWeylGuard) throw std::runtime_error("Weyl group size guard exceeded");
        Elem idx = (Elem)perms_.size();
        perms_.push_back(q);
        length_.push_back(length_[(size_t)w] + 1);
        auto wd = word_[(size_t)w];
        wd.push_back((uint8_t)s);
        word_.push_back(std::move(wd));
        index_.emplace(std::move(q), idx);
        queue.push_back(idx);
      }
    }
  }
  id_ = 0;
  w0_ = (Elem)(std::max_element(length_.begin(), length_.end()) - length_.begin());
  // multiplication tables by simple reflections, both sides
  simple_mul_l_.assign(perms_.size(), std::vector<Elem>((size_t)rank_));
  simple_mul_r_.assign(perms_.size(), std::vector<Elem>((size_t)rank_));
  for (size_t w = 0; w < perms_.size(); ++w)
    for (int s = 1; s <= rank_; ++s) {
      std::vector<int> l(nperm_), r(nperm_);
      const auto& pw = perms_[w];
      const auto& ps = simples[(size_t)s - 1];
      for (int i = 0; i < nperm_; ++i) {
        l[(size_t)i] = ps[(size_t)pw[(size_t)i]];
        r[(size_t)i] = pw[(size_t)ps[(size_t)i]];
      }
      simple_mul_l_[w][(size_t)s - 1] = lookup(l);
      simple_mul_r_[w][(size_t)s - 1] = lookup(r);
    }
}

WeylGroup::Elem WeylGroup::lookup(const std::vector<int>& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw std::logic_error("permutation not in the group");
  return it->second;
}

WeylGroup::Elem WeylGroup::mul(Elem a, Elem b) const {
  std::vector<int> q(nperm_);
  const auto& pa = perms_[(size_t)a];
  const auto& pb = perms_[(size_t)b];
  for (int i = 0; i < nperm_; ++i) q[(size_t)i] = pa[(size_t)pb[(size_t)i]];
  return lookup(q);
}

WeylGroup::Elem WeylGroup::inverse(Elem a) const {
  std::vector<int> q(nperm_);
  const auto& pa = perms_[(size_t)a];
  for (int i = 0; i < nperm_; ++i) q[(size_t)pa[(size_t)i]] = i;
  return lookup(q);
}

WeylGroup::Elem WeylGroup::simple(int s) const {
  if (s < 1 || s > rank_) throw std::invalid_argument("simple reflection out of range");
  return simple_mul_r_[(size_t)id_][(size_t)s - 1];
}

std::vector<WeylGroup::Elem> WeylGroup::enumerate() const {
  std::vector<Elem> out(perms_.size());
  std::iota(out.begin(), out.end(), 0);
  return out;  // BFS order: identity first, nondecreasing length
}

bool WeylGroup::bruhat_leq(Elem w1, Elem w2) const {
  // scan one reduced word of w2 left to right; greedily shorten w1 on the left
  Elem v = w1;
  for (uint8_t s : word_[(size_t)w2]) {
    Elem sv = simple_mul_l_[(size_t)v][(size_t)s - 1];
    if (length_[(size_t)sv] < length_[(size_t)v]) v = sv;
  }
  return v == id_;
}

WeylGroup::Elem WeylGroup::longest_in(const std::vector<int>& J) const {
  Elem best = id_;
  for (Elem w = 0; w < (Elem)perms_.size(); ++w)
    if (in_WJ(w, J) && length_[(size_t)w] > length_[(size_t)best]) best = w;
  return best;
}

bool WeylGroup::in_WJ(Elem w, const std::vector<int>& J) const {
  // W_J = elements whose reduced words use only J (equivalently: BFS inside J)
  // cheap test: strip left descents, only allowed ones from J
  Elem v = w;
  while (v != id_) {
    bool moved = false;
    for (int s : J) {
      Elem sv = simple_mul_l_[(size_t)v][(size_t)s - 1];
      if (length_[(size_t)sv] < length_[(size_t)v]) {
        v = sv;
        moved = true;
        break;
      }
    }
    if (!moved) return false;
  }
  return true;
}

std::vector<WeylGroup::Elem> WeylGroup::enumerate_WJ(const std::vector<int>& J) const {
  std::vector<Elem> out;
  for (Elem w = 0; w < (Elem)perms_.size(); ++w)
    if (in_WJ(w, J)) out.push_back(w);
  return out;
}

bool WeylGroup::is_min_rep(Elem w, const std::vector<int>& J) const {
  for (int s : J) {
    Elem sw = simple_mul_l_[(size_t)w][(size_t)s - 1];
    if (length_[(size_t)sw] < length_[(size_t)w]) return false;
  }
  return true;
}

std::vector<WeylGroup::Elem> WeylGroup::min_coset_reps(const std::vector<int>& J) const {
  std::vector<Elem> out;
  for (Elem w = 0; w < (Elem)perms_.size(); ++w)
    if (is_min_rep(w, J)) out.push_back(w);
  return out;
}

bool WeylGroup::preceq(Elem w1, Elem w2, const std::vector<int>& J) const {
  if (!is_min_rep(w1, J) || !is_min_rep(w2, J))
    throw std::invalid_argument("preceq arguments must be minimal coset representatives");
  Elem xJ = mul(longest(), longest_in(J));  // x_J = w0 * w0_J
  Elem xJinv = inverse(xJ);
  for (Elem y : enumerate_WJ(J)) {
    Elem lhs = mul(mul(inverse(y), w1), mul(xJ, mul(y, xJinv)));
    if (bruhat_leq(lhs, w2)) return true;
  }
  return false;
}

Mat WeylGroup::lift(Elem w, const Ring& ring) const {
  // product of generator lifts along the cached reduced word
  int n = nperm_;
  Mat m = Mat::identity(ring, n);
  int g = G_.g();
  for (uint8_t s : word_[(size_t)w]) {
    Mat gen(ring, n);
    if (G_.kind == GroupKind::GSp && (int)s == g) {
      // signed central swap: e_{g-1} -> e_g, e_g -> -e_{g-1} (0-based), rest fixed
      for (int i = 0; i < n; ++i)
        if (i != g - 1 && i != g) gen.at(i, i) = ring.one();
      gen.at(g, g - 1) = ring.one();
      gen.at(g - 1, g) = ring.neg(ring.one());
    } else {
      const auto& ps = simple_perm((int)s);
      for (int i = 0; i < n; ++i) gen.at(ps[(size_t)i], i) = ring.one();
    }
    m = m.mul(gen);
  }
  if (G_.kind == GroupKind::SL) {
    // fix the determinant by a sign on the last column
    RElem d = m.det();
    if (!ring.is_one(d))
      for (int i = 0; i < n; ++i) m.at(i, n - 1) = ring.neg(m.at(i, n - 1));
  }
  return m;
}

std::vector<int> type_of_cochar(const WeylGroup& W, const Cochar& chi) {
  std::vector<int> J;
  const GroupSpec& G = W.group();
  int g = G.g();
  for (int s = 1; s <= W.rank(); ++s) {
    int i, j;
    if (G.kind == GroupKind::GSp && s == g) {
      i = g - 1;
      j = g;  // the moving entry of the central reflection crosses the antidiagonal
    } else {
      i = s - 1;
      j = s;
    }
    if (chi.entry_weight(i, j) == 0) J.push_back(s);
  }
  return J;
}

StrataPoset strata_poset(const WeylGroup& W, const std::vector<int>& J) {
  StrataPoset P;
  P.elements = W.min_coset_reps(J);
  std::stable_sort(P.elements.begin(), P.elements.end(),
                   [&](auto a, auto b) { return W.length(a) < W.length(b); });
  size_t n = P.elements.size();
  for (auto w : P.elements) P.lengths.push_back(W.length(w));
  P.leq.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) P.leq[i][j] = W.preceq(P.elements[i], P.elements[j], J);
  // partial-order axioms; a violation indicates an implementation bug
  for (size_t i = 0; i < n; ++i) {
    if (!P.leq[i][i]) throw std::logic_error("strata order not reflexive");
    for (size_t j = 0; j < n; ++j) {
      if (i != j && P.leq[i][j] && P.leq[j][i])
        throw std::logic_error("strata order not antisymmetric");
      for (size_t k = 0; k < n; ++k)
        if (P.leq[i][j] && P.leq[j][k] && !P.leq[i][k])
          throw std::logic_error("strata order not transitive");
    }
  }
  // unique extremes
  WeylGroup::Elem wmax = W.mul(W.longest_in(J), W.longest());
  size_t maxcnt = 0, mincnt = 0;
  for (size_t i = 0; i < n; ++i) {
    bool is_max = true, is_min = true;
    for (size_t j = 0; j < n; ++j) {
      if (!P.leq[j][i]) is_max = false;
      if (!P.leq[i][j]) is_min = false;
    }
    if (is_max) {
      P.max_index = i;
      ++maxcnt;
      if (P.elements[i] != wmax) throw std::logic_error("maximum is not w_{0,J} w_0");
    }
    if (is_min) {
      P.min_index = i;
      ++mincnt;
      if (P.elements[i] != W.identity()) throw std::logic_error("minimum is not the identity");
    }
  }
  if (maxcnt != 1 || mincnt != 1) throw std::logic_error("extremes of the strata order not unique");
  // Hasse edges by transitive reduction
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !P.leq[i][j]) continue;
      bool covering = true;
      for (size_t k = 0; k < n; ++k)
        if (k != i && k != j && P.leq[i][k] && P.leq[k][j]) {
          covering = false;
          break;
        }
      if (covering) P.hasse.emplace_back((int)i, (int)j);
    }
  return P;
}

Mat pi_rep(const WeylGroup& W, WeylGroup::Elem w, const std::vector<int>& J, const Ring& gf) {
  Mat lw = W.lift(w, gf);
  Mat lw0 = W.lift(W.longest(), gf);
  Mat lw0J = W.lift(W.longest_in(J), gf);  // sigma acts trivially on 0/+-1 matrices
  return lw.mul(lw0).mul(lw0J);
}

}  // namespace eozip
