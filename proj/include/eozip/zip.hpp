#ifndef EOZIP_ZIP_HPP
#define EOZIP_ZIP_HPP

#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "eozip/weyl.hpp"

namespace eozip {

struct GuardExceeded : std::runtime_error {
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Dense arithmetic tables for F_q, q <= 64, elements indexed 0..q-1
/// (index = sum c_i p^i of the polynomial coefficients).
struct GFTable {
  Ring ring;
  uint32_t q = 0;
  std::vector<uint8_t> add, mul;  // q*q, row-major
  std::vector<uint8_t> neg, inv, frob, frob_inv;

  explicit GFTable(const Ring& gf);
  uint8_t a(uint8_t x, uint8_t y) const { return add[(size_t)x * q + y]; }
  uint8_t m(uint8_t x, uint8_t y) const { return mul[(size_t)x * q + y]; }
};

/// Small matrix over a tabled field; fixed capacity, entries are field indices.
struct BMat {
  uint8_t n = 0;
  std::array<uint8_t, 36> e{};

  uint8_t& at(int i, int j) { return e[(size_t)i * n + j]; }
  uint8_t at(int i, int j) const { return e[(size_t)i * n + j]; }
  bool operator==(const BMat&) const = default;
};

/// Row-major packing; entry (0,0) occupies the highest bits so that integer
/// order agrees with the lexicographic order on entries.
uint64_t pack(const BMat& m, int bits);
int bits_needed(uint32_t q);

BMat bmat_from(const Mat& m);
Mat bmat_to(const GFTable& F, const BMat& m);
BMat bmul(const GFTable& F, const BMat& a, const BMat& b);
BMat binv(const GFTable& F, const BMat& a);  // throws NonUnitError
BMat bident(const GFTable& F, int n);
BMat bfrob(const GFTable& F, const BMat& a);

/// Embedding F_{p^r} -> F_{p^{r s}} as an index map (scans for a root of the
/// small modulus in the big field).
std::vector<uint8_t> embed_field(const GFTable& small, const GFTable& big);
BMat embed_mat(const BMat& m, const std::vector<uint8_t>& emb);

struct Orbit {
  BMat rep;        // canonical representative: minimum packed value
  uint64_t size = 0;
};

struct OrbitTable {
  GroupSpec G;
  Cochar chi;
  Ring gf;
  uint64_t group_order = 0;
  std::vector<Orbit> orbits;
  std::unordered_map<uint64_t, uint32_t> orbit_of;  // packed matrix -> orbit index
  std::vector<int> geometric_label;                 // orbit -> index into jw, -1 unresolved
  std::vector<WeylGroup::Elem> jw;                  // ^J W reps used for labels

  uint32_t index_of(const Mat& g) const;
};

/// The displayed left action (p+, p-) . g = p+ g p-^{-1}.
Mat zip_act(const ZipPair& z, const Mat& g, const GroupSpec& G, const Cochar& chi);

/// Exhaustive partition of G(F_q) into E_chi(F_q)-orbits by closure under the
/// zip-group generators. Guard on |G(F_q)|.
OrbitTable classify_orbits(const GroupSpec& G, const Cochar& chi, const Ring& gf,
                           uint64_t guard = 10'000'000);

/// Canonical orbit label of g (the canonical representative's packed matrix).
const Orbit& zeta_class(const Mat& g, const OrbitTable& table);

/// True iff some z in E_chi(F_{q^s}), s <= rmax, carries g1 to g2.
/// Exhausts the Levi x U+ factorization of the zip group over each extension.
bool geometric_equal(const Mat& g1, const Mat& g2, const GroupSpec& G, const Cochar& chi,
                     const Ring& gf, int rmax, uint64_t guard = 100'000'000);

/// Witness form of the search at a fixed extension degree: g2 = u+ m g1 (u- sigma(m))^{-1}.
struct ZipWitness {
  Mat uplus, m, uminus;
};
std::optional<ZipWitness> find_zip_witness(const Mat& g1, const Mat& g2, const GroupSpec& G,
                                           const Cochar& chi, const Ring& gf);

/// Resolve geometric labels of an orbit table against the ^J W representatives
/// and count geometric classes (orbits merged under extension equivalence).
void resolve_geometric(OrbitTable& table, const WeylGroup& W, int rmax);
size_t geometric_class_count(const OrbitTable& table, int rmax);

}  // namespace eozip

#endif
