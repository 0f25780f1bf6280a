#ifndef EOZIP_WEYL_HPP
#define EOZIP_WEYL_HPP

#include <map>

#include "eozip/group.hpp"

namespace eozip {

/// Finite Coxeter machinery for types A_{n-1} (GL_n, SL_n) and C_g (GSp_2g).
/// Type C is realized inside S_{2g} as the centrally symmetric permutations
/// pi(N-1-i) = N-1-pi(i); lifts are signed permutation matrices.
class WeylGroup {
 public:
  explicit WeylGroup(const GroupSpec& G);

  const GroupSpec& group() const { return G_; }
  int rank() const { return rank_; }
  size_t size() const { return perms_.size(); }

  /// Element handle: index into the BFS-ordered enumeration (identity first).
  using Elem = uint32_t;

  Elem identity() const { return id_; }
  Elem longest() const { return w0_; }
  int length(Elem w) const { return length_[(size_t)w]; }
  const std::vector<uint8_t>& word(Elem w) const { return word_[(size_t)w]; }
  const std::vector<int>& perm(Elem w) const { return perms_[(size_t)w]; }

  Elem mul(Elem a, Elem b) const;  // (ab)(i) = a(b(i))
  Elem inverse(Elem a) const;
  Elem simple(int s) const;  // s in 1..rank

  /// All elements exactly once, identity first (BFS order by length).
  std::vector<Elem> enumerate() const;

  /// Subword test on the cached reduced expression of w2.
  bool bruhat_leq(Elem w1, Elem w2) const;

  /// Longest element of the standard parabolic W_J.
  Elem longest_in(const std::vector<int>& J) const;
  bool in_WJ(Elem w, const std::vector<int>& J) const;
  std::vector<Elem> enumerate_WJ(const std::vector<int>& J) const;

  /// Minimal-length coset representatives of W_J \ W.
  std::vector<Elem> min_coset_reps(const std::vector<int>& J) const;
  bool is_min_rep(Elem w, const std::vector<int>& J) const;

  /// The twisted order on ^J W: exists y in W_J with
  /// y^{ -1} w1 (x_J y x_J^{-1}) <= w2, x_J = w0 w0_J (sigma trivial: split case).
  bool preceq(Elem w1, Elem w2, const std::vector<int>& J) const;

  /// Signed permutation-matrix lift over the given ring (entries 0, +-1).
  Mat lift(Elem w, const Ring& ring) const;

 private:
  GroupSpec G_;
  int rank_ = 0;
  int nperm_ = 0;  // ambient symmetric group degree
  Elem id_ = 0, w0_ = 0;
  std::vector<std::vector<int>> perms_;
  std::vector<int> length_;
  std::vector<std::vector<uint8_t>> word_;        // one reduced word per element
  std::map<std::vector<int>, Elem> index_;
  std::vector<std::vector<Elem>> simple_mul_l_;   // s * w
  std::vector<std::vector<Elem>> simple_mul_r_;   // w * s

  std::vector<int> simple_perm(int s) const;
  Elem lookup(const std::vector<int>& p) const;
};

/// Type J of a cocharacter: simple reflections whose root subgroup has
/// chi-weight zero.
std::vector<int> type_of_cochar(const WeylGroup& W, const Cochar& chi);

struct StrataPoset {
  std::vector<WeylGroup::Elem> elements;      // ^J W sorted by (length, index)
  std::vector<int> lengths;
  std::vector<std::vector<bool>> leq;         // leq[i][j] : elements[i] preceq elements[j]
  std::vector<std::pair<int, int>> hasse;     // covering pairs (lower, upper)
  size_t max_index = 0, min_index = 0;        // positions of w_{0,J} w_0 and e
};

/// Full twisted-order poset on ^J W; verifies the partial-order axioms and
/// the unique extremes (hard error on violation).
StrataPoset strata_poset(const WeylGroup& W, const std::vector<int>& J);

/// Representative of the zip orbit attached to w in ^J W:
/// lift(w) * lift(w0) * sigma(lift(w0_J)) over F_q (sigma fixes 0/+-1 entries).
Mat pi_rep(const WeylGroup& W, WeylGroup::Elem w, const std::vector<int>& J, const Ring& gf);

}  // namespace eozip

#endif
