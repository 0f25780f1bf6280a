#include "eozip/zip.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace eozip {

GFTable::GFTable(const Ring& gf) : ring(gf) {
  if (gf.kind() != RingKind::GF) throw std::invalid_argument("GFTable needs a finite field");
  uint64_t card = gf.card();
  if (card > 64) throw GuardExceeded("field too large for dense tables (q > 64)");
  q = (uint32_t)card;
  add.assign((size_t)q * q, 0);
  mul.assign((size_t)q * q, 0);
  neg.assign(q, 0);
  inv.assign(q, 0);
  frob.assign(q, 0);
  frob_inv.assign(q, 0);
  std::vector<RElem> elems;
  for (uint32_t i = 0; i < q; ++i) elems.push_back(gf.from_index(i));
  for (uint32_t i = 0; i < q; ++i) {
    neg[i] = (uint8_t)gf.to_index(gf.neg(elems[i]));
    frob[i] = (uint8_t)gf.to_index(gf.frobenius(elems[i]));
    frob_inv[i] = (uint8_t)gf.to_index(gf.frobenius_inverse(elems[i]));
    if (i) inv[i] = (uint8_t)gf.to_index(gf.inv(elems[i]));
    for (uint32_t j = 0; j < q; ++j) {
      add[(size_t)i * q + j] = (uint8_t)gf.to_index(gf.add(elems[i], elems[j]));
      mul[(size_t)i * q + j] = (uint8_t)gf.to_index(gf.mul(elems[i], elems[j]));
    }
  }
}

int bits_needed(uint32_t q) {
  int b = 1;
  while ((1u << b) < q) ++b;
  return b;
}

uint64_t pack(const BMat& m, int bits) {
  int total = (int)m.n * m.n * bits;
  if (total > 64) throw GuardExceeded("matrix does not fit the packed key");
  uint64_t key = 0;
  for (int i = 0; i < (int)m.n * m.n; ++i) key = (key << bits) | m.e[(size_t)i];
  return key;
}

BMat bmat_from(const Mat& m) {
  BMat b;
  b.n = (uint8_t)m.n();
  if (m.n() > 6) throw GuardExceeded("matrix too large for BMat");
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) b.at(i, j) = (uint8_t)m.ring().to_index(m.at(i, j));
  return b;
}

Mat bmat_to(const GFTable& F, const BMat& m) {
  Mat out(F.ring, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out.at(i, j) = F.ring.from_index(m.at(i, j));
  return out;
}

BMat bmul(const GFTable& F, const BMat& a, const BMat& b) {
  BMat r;
  r.n = a.n;
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k) {
      uint8_t f = a.at(i, k);
      if (!f) continue;
      for (int j = 0; j < a.n; ++j)
        r.at(i, j) = F.a(r.at(i, j), F.m(f, b.at(k, j)));
    }
  return r;
}

BMat bident(const GFTable& F, int n) {
  (void)F;
  BMat r;
  r.n = (uint8_t)n;
  for (int i = 0; i < n; ++i) r.at(i, i) = 1;  // index of 1 is 1 in any GF table
  return r;
}

BMat binv(const GFTable& F, const BMat& a) {
  BMat m = a, r = bident(F, a.n);
  int n = a.n;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (m.at(row, col)) {
        piv = row;
        break;
      }
    if (piv < 0) throw NonUnitError("singular matrix");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(m.e[(size_t)piv * n + c], m.e[(size_t)col * n + c]);
        std::swap(r.e[(size_t)piv * n + c], r.e[(size_t)col * n + c]);
      }
    uint8_t d = F.inv[m.at(col, col)];
    for (int c = 0; c < n; ++c) {
      m.at(col, c) = F.m(m.at(col, c), d);
      r.at(col, c) = F.m(r.at(col, c), d);
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      uint8_t f = m.at(row, col);
      if (!f) continue;
      for (int c = 0; c < n; ++c) {
        m.at(row, c) = F.a(m.at(row, c), F.neg[F.m(f, m.at(col, c))]);
        r.at(row, c) = F.a(r.at(row, c), F.neg[F.m(f, r.at(col, c))]);
      }
    }
  }
  return r;
}

BMat bfrob(const GFTable& F, const BMat& a) {
  BMat r = a;
  for (int i = 0; i < (int)a.n * a.n; ++i) r.e[(size_t)i] = F.frob[a.e[(size_t)i]];
  return r;
}

std::vector<uint8_t> embed_field(const GFTable& small, const GFTable& big) {
  // find a root of the small modulus inside the big field, then map
  // sum c_i t^i -> sum c_i beta^i
  const Ring& ks = small.ring;
  const Ring& kb = big.ring;
  if (ks.p() != kb.p() || kb.r() % ks.r() != 0)
    throw std::invalid_argument("no embedding between these fields");
  uint32_t p = ks.p();
  std::vector<uint64_t> mod = ks.modulus();  // degree r, leading 1 implicit
  auto eval = [&](const RElem& beta) {
    RElem acc = kb.zero();
    RElem pw = kb.one();
    for (uint32_t i = 0; i < ks.r(); ++i) {
      acc = kb.add(acc, kb.mul(kb.from_int((int64_t)mod[i]), pw));
      pw = kb.mul(pw, beta);
    }
    return kb.add(acc, pw);  // + beta^r (monic)
  };
  RElem beta = kb.zero();
  bool found = false;
  for (uint32_t idx = 0; idx < big.q; ++idx) {
    RElem cand = kb.from_index(idx);
    if (kb.is_zero(eval(cand))) {
      beta = cand;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("modulus has no root in the extension field");
  std::vector<uint8_t> emb(small.q, 0);
  for (uint32_t idx = 0; idx < small.q; ++idx) {
    RElem x = ks.from_index(idx);
    RElem acc = kb.zero();
    RElem pw = kb.one();
    for (uint32_t i = 0; i < ks.r(); ++i) {
      acc = kb.add(acc, kb.mul(kb.from_int((int64_t)x.v[i]), pw));
      pw = kb.mul(pw, beta);
    }
    emb[idx] = (uint8_t)kb.to_index(acc);
  }
  if (p == 0) throw std::logic_error("unreachable");
  return emb;
}

BMat embed_mat(const BMat& m, const std::vector<uint8_t>& emb) {
  BMat r = m;
  for (int i = 0; i < (int)m.n * m.n; ++i) r.e[(size_t)i] = emb[m.e[(size_t)i]];
  return r;
}

Mat zip_act(const ZipPair& z, const Mat& g, const GroupSpec& G, const Cochar& chi) {
  if (!zip_membership(z, G, chi)) throw MembershipError("pair is not in the zip group");
  if (!membership(G, g)) throw MembershipError("element is not in the group");
  return z.gplus.mul(g).mul(z.gminus.inv());
}

namespace {

// zip generator in byte form together with its action g -> l * g * r
struct BGen {
  BMat l, r;  // act: l g r; r already inverted
};

std::vector<BGen> zip_generators(const GFTable& F, const GroupSpec& G, const Cochar& chi) {
  std::vector<BGen> gens;
  const Ring& gf = F.ring;
  uint64_t q = gf.card();
  BMat id = bident(F, G.n);
  for (const Root& rt : positive_entry_roots(G)) {
    int w = chi.entry_weight(rt.i, rt.j);
    for (uint64_t idx = 1; idx < q; ++idx) {
      BMat u = bmat_from(root_element(G, gf, rt, gf.from_index(idx)));
      if (w > 0) gens.push_back(BGen{u, id});
      if (w < 0) gens.push_back(BGen{id, binv(F, u)});
    }
  }
  for (const Mat& m : levi_generators(G, chi, gf)) {
    BMat bm = bmat_from(m);
    gens.push_back(BGen{bm, binv(F, bfrob(F, bm))});
  }
  return gens;
}

std::vector<BMat> enumerate_group(const GFTable& F, const GroupSpec& G, uint64_t guard) {
  std::vector<BMat> gens;
  for (const Mat& m : group_generators(G, F.ring)) gens.push_back(bmat_from(m));
  int bits = bits_needed(F.q);
  BMat id = bident(F, G.n);
  std::unordered_set<uint64_t> seen{pack(id, bits)};
  std::vector<BMat> all{id};
  std::deque<size_t> queue{0};
  while (!queue.empty()) {
    BMat g = all[queue.front()];
    queue.pop_front();
    for (const BMat& s : gens) {
      BMat h = bmul(F, g, s);
      uint64_t key = pack(h, bits);
      if (seen.insert(key).second) {
        if (all.size() >= guard) throw GuardExceeded("group order exceeds the enumeration guard");
        all.push_back(h);
        queue.push_back(all.size() - 1);
      }
    }
  }
  return all;
}

// enumerate the unipotent radical U+ (or U-) over F as products of root
// elements of positive (negative) chi-weight
std::vector<BMat> enumerate_unipotent(const GFTable& F, const GroupSpec& G, const Cochar& chi,
                                      bool plus) {
  std::vector<std::vector<BMat>> factor_lists;
  for (const Root& rt : positive_entry_roots(G)) {
    int w = chi.entry_weight(rt.i, rt.j);
    if ((plus && w <= 0) || (!plus && w >= 0)) continue;
    std::vector<BMat> opts;
    for (uint64_t idx = 0; idx < F.q; ++idx)
      opts.push_back(bmat_from(root_element(G, F.ring, rt, F.ring.from_index(idx))));
    factor_lists.push_back(std::move(opts));
  }
  std::vector<BMat> out{bident(F, G.n)};
  for (const auto& opts : factor_lists) {
    std::vector<BMat> next;
    next.reserve(out.size() * opts.size());
    for (const BMat& a : out)
      for (const BMat& b : opts) next.push_back(bmul(F, a, b));
    out = std::move(next);
  }
  return out;
}

std::vector<BMat> enumerate_levi(const GFTable& F, const GroupSpec& G, const Cochar& chi,
                                 uint64_t guard) {
  std::vector<BMat> gens;
  for (const Mat& m : levi_generators(G, chi, F.ring)) gens.push_back(bmat_from(m));
  int bits = bits_needed(F.q);
  BMat id = bident(F, G.n);
  std::unordered_set<uint64_t> seen{pack(id, bits)};
  std::vector<BMat> all{id};
  std::deque<size_t> queue{0};
  while (!queue.empty()) {
    BMat g = all[queue.front()];
    queue.pop_front();
    for (const BMat& s : gens) {
      BMat h = bmul(F, g, s);
      uint64_t key = pack(h, bits);
      if (seen.insert(key).second) {
        if (all.size() >= guard) throw GuardExceeded("Levi enumeration guard exceeded");
        all.push_back(h);
        queue.push_back(all.size() - 1);
      }
    }
  }
  return all;
}

bool block_lower_with_levi(const GFTable& F, const Cochar& chi, const BMat& pminus,
                           const BMat& want_levi) {
  int n = pminus.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int w = chi.w[(size_t)i] - chi.w[(size_t)j];
      if (w > 0 && pminus.at(i, j)) return false;
      if (w == 0 && pminus.at(i, j) != want_levi.at(i, j)) return false;
    }
  return true;
}

}  // namespace

uint32_t OrbitTable::index_of(const Mat& g) const {
  if (!(g.ring() == gf)) throw std::invalid_argument("element not over the table's field");
  int bits = bits_needed((uint32_t)gf.card());
  auto it = orbit_of.find(pack(bmat_from(g), bits));
  if (it == orbit_of.end()) throw std::invalid_argument("element not in the table's group");
  return it->second;
}

OrbitTable classify_orbits(const GroupSpec& G, const Cochar& chi, const Ring& gf,
                           uint64_t guard) {
  if (!chi.zip_weights()) throw std::invalid_argument("orbit classification needs 0/1 weights");
  if (G.kind == GroupKind::GSp && !chi.gsp_compatible())
    throw std::invalid_argument("cocharacter not compatible with the symplectic form");
  GFTable F(gf);
  int bits = bits_needed(F.q);
  OrbitTable table{G, chi, gf};
  std::vector<BMat> all = enumerate_group(F, G, guard);
  table.group_order = all.size();
  std::vector<uint64_t> keys;
  keys.reserve(all.size());
  for (const BMat& g : all) keys.push_back(pack(g, bits));
  std::vector<size_t> order(all.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return keys[a] < keys[b]; });

  auto gens = zip_generators(F, G, chi);
  table.orbit_of.reserve(all.size() * 2);
  for (size_t start : order) {
    if (table.orbit_of.count(keys[start])) continue;
    uint32_t oid = (uint32_t)table.orbits.size();
    // BFS closure of the seed under the zip generators
    std::deque<BMat> queue{all[start]};
    table.orbit_of.emplace(keys[start], oid);
    BMat rep = all[start];
    uint64_t repkey = keys[start];
    uint64_t size = 1;
    while (!queue.empty()) {
      BMat g = queue.front();
      queue.pop_front();
      for (const BGen& z : gens) {
        BMat h = bmul(F, bmul(F, z.l, g), z.r);
        uint64_t key = pack(h, bits);
        if (table.orbit_of.emplace(key, oid).second) {
          ++size;
          if (key < repkey) {
            repkey = key;
            rep = h;
          }
          queue.push_back(h);
        }
      }
    }
    table.orbits.push_back(Orbit{rep, size});
  }
  table.geometric_label.assign(table.orbits.size(), -1);
  return table;
}

const Orbit& zeta_class(const Mat& g, const OrbitTable& table) {
  return table.orbits[table.index_of(g)];
}

std::optional<ZipWitness> find_zip_witness(const Mat& g1, const Mat& g2, const GroupSpec& G,
                                           const Cochar& chi, const Ring& gf) {
  GFTable F(gf);
  BMat b1 = bmat_from(g1), b2 = bmat_from(g2);
  BMat b2inv = binv(F, b2);
  auto levi = enumerate_levi(F, G, chi, 50'000'000);
  auto uplus = enumerate_unipotent(F, G, chi, true);
  if ((uint64_t)levi.size() * uplus.size() > 200'000'000)
    throw GuardExceeded("zip witness search space too large");
  for (const BMat& m : levi) {
    BMat sm = bfrob(F, m);
    BMat minv = binv(F, m);
    BMat a = bmul(F, b2inv, m);
    for (const BMat& u : uplus) {
      // search over p+ = m u; p- := g2^{-1} p+ g1 must be sigma(m) u-' in P-
      BMat pminus = bmul(F, bmul(F, a, u), b1);
      if (block_lower_with_levi(F, chi, pminus, sm)) {
        // normalize to the u+ m / u- sigma(m) form:
        //   p+ = m u = (m u m^{-1}) m,   p- = sigma(m) u-' = (p- sigma(m)^{-1}) sigma(m)
        BMat up = bmul(F, bmul(F, m, u), minv);
        BMat um = bmul(F, pminus, binv(F, sm));
        return ZipWitness{bmat_to(F, up), bmat_to(F, m), bmat_to(F, um)};
      }
    }
  }
  return std::nullopt;
}

bool geometric_equal(const Mat& g1, const Mat& g2, const GroupSpec& G, const Cochar& chi,
                     const Ring& gf, int rmax, uint64_t guard) {
  (void)guard;
  GFTable F(gf);
  for (int s = 1; s <= rmax; ++s) {
    Ring big = (s == 1) ? gf : Ring::gf(gf.p(), gf.r() * (uint32_t)s);
    if (big.card() > 64) throw GuardExceeded("extension field too large for dense tables");
    GFTable FB(big);
    auto emb = (s == 1) ? std::vector<uint8_t>{} : embed_field(F, FB);
    Mat h1 = g1, h2 = g2;
    if (s > 1) {
      h1 = bmat_to(FB, embed_mat(bmat_from(g1), emb));
      h2 = bmat_to(FB, embed_mat(bmat_from(g2), emb));
    }
    if (find_zip_witness(h1, h2, G, chi, big).has_value()) return true;
  }
  return false;
}

void resolve_geometric(OrbitTable& table, const WeylGroup& W, int rmax) {
  std::vector<int> J = type_of_cochar(W, table.chi);
  table.jw = W.min_coset_reps(J);
  table.geometric_label.assign(table.orbits.size(), -1);
  for (size_t oi = 0; oi < table.orbits.size(); ++oi) {
    Mat rep = bmat_to(GFTable(table.gf), table.orbits[oi].rep);
    for (size_t wi = 0; wi < table.jw.size(); ++wi) {
      Mat pw = pi_rep(W, table.jw[wi], J, table.gf);
      if (geometric_equal(rep, pw, table.G, table.chi, table.gf, rmax)) {
        table.geometric_label[oi] = (int)wi;
        break;
      }
    }
  }
}

size_t geometric_class_count(const OrbitTable& table, int rmax) {
  // union-find over orbit representatives under extension equivalence
  size_t n = table.orbits.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  GFTable F(table.gf);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if (find(i) == find(j)) continue;
      // resolved labels decide cheaply
      if (table.geometric_label[i] >= 0 && table.geometric_label[j] >= 0) {
        if (table.geometric_label[i] == table.geometric_label[j]) parent[find(j)] = find(i);
        continue;
      }
      Mat a = bmat_to(F, table.orbits[i].rep);
      Mat b = bmat_to(F, table.orbits[j].rep);
      if (geometric_equal(a, b, table.G, table.chi, table.gf, rmax)) parent[find(j)] = find(i);
    }
  std::unordered_set<size_t> roots;
  for (size_t i = 0; i < n; ++i) roots.insert(find(i));
  return roots.size();
}

}  // namespace eozip
