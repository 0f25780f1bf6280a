#ifndef EOZIP_GROUP_HPP
#define EOZIP_GROUP_HPP

#include <random>

#include "eozip/series.hpp"

namespace eozip {

struct MembershipError : std::runtime_error {
  explicit MembershipError(const std::string& what) : std::runtime_error(what) {}
};

/// Constant square matrix over a coefficient ring.
class Mat {
 public:
  Mat(Ring ring, int n);
  static Mat identity(const Ring& ring, int n);
  static Mat from_entries(const Ring& ring, int n, std::vector<RElem> entries);

  const Ring& ring() const { return ring_; }
  int n() const { return n_; }
  RElem& at(int i, int j) { return a_[(size_t)i * n_ + j]; }
  const RElem& at(int i, int j) const { return a_[(size_t)i * n_ + j]; }
  const std::vector<RElem>& entries() const { return a_; }

  Mat mul(const Mat& o) const;
  Mat add(const Mat& o) const;
  Mat sub(const Mat& o) const;
  Mat transpose() const;
  Mat inv() const;  // Gauss with unit pivots; throws NonUnitError
  RElem det() const;
  bool equal(const Mat& o) const { return ring_ == o.ring_ && a_ == o.a_; }
  bool is_identity() const;

  /// Entrywise p-power (relative Frobenius twist on points).
  Mat frobenius_twist() const;
  Mat frobenius_twist_inverse() const;

  MatSeries to_series(int N) const;
  static Mat from_series_mod_u(const MatSeries& m);

  bool operator==(const Mat& o) const { return equal(o); }

  std::string to_string() const;

 private:
  Ring ring_;
  int n_ = 0;
  std::vector<RElem> a_;
};

enum class GroupKind { GL, SL, GSp };

/// GL_n, SL_n, or GSp_2g with the antidiagonal symplectic form
/// (+1 on the upper antidiagonal half, -1 on the lower half).
struct GroupSpec {
  GroupKind kind = GroupKind::GL;
  int n = 1;  // matrix size (2g for GSp)

  static GroupSpec gl(int n) { return {GroupKind::GL, n}; }
  static GroupSpec sl(int n) { return {GroupKind::SL, n}; }
  static GroupSpec gsp(int n);

  int g() const { return n / 2; }
  std::string name() const;
  bool operator==(const GroupSpec&) const = default;
};

/// The fixed symplectic form matrix J for GSp_n over the given ring.
Mat symplectic_form(const Ring& ring, int n);

/// Weight vector a_1 >= ... >= a_n of a diagonal cocharacter.
struct Cochar {
  std::vector<int> w;

  explicit Cochar(std::vector<int> weights);
  int n() const { return (int)w.size(); }
  int max_weight() const;
  bool zip_weights() const;  // all in {0,1}
  bool gsp_compatible() const;  // a_i + a_{n+1-i} = 1
  /// Entry weight a_i - a_j: sign decides which parabolic an entry lives in.
  int entry_weight(int i, int j) const { return w[(size_t)i] - w[(size_t)j]; }
  /// Sizes of the equal-weight blocks, in order.
  std::vector<int> blocks() const;
};

enum class Part { PPlus, PMinus, UPlus, UMinus, Levi };

bool membership(const GroupSpec& G, const Mat& M);
bool membership(const GroupSpec& G, const MatSeries& M);
/// The similitude factor c with M^T J M = c J; NonUnitError when M is not in GSp.
RElem gsp_multiplier(const Mat& M);

bool parabolic_membership(const Cochar& chi, const Mat& M, Part part);
/// Block-diagonal part of M with respect to chi.
Mat levi_part(const Cochar& chi, const Mat& M);

struct ZipPair {
  Mat gplus;
  Mat gminus;
};

/// (g+, g-) in E_chi: g+ in P+, g- in P-, Levi(g-) = sigma(Levi(g+)).
bool zip_membership(const ZipPair& z, const GroupSpec& G, const Cochar& chi);

/// mu(u) = diag(u^{p a_1}, ..., u^{p a_n}) in the truncated ring.
MatSeries mu_matrix(const Cochar& chi, uint32_t p, const Ring& coeff, int N);
/// chi(u) = diag(u^{a_i}); mu = chi composed with u -> u^p.
MatSeries chi_matrix(const Cochar& chi, const Ring& coeff, int N);

/// One root of G as a set of matrix positions with signs; the one-parameter
/// subgroup is x -> I + x * pattern.
struct Root {
  std::vector<std::tuple<int, int, int>> pattern;  // (row, col, sign)
  int i, j;                                        // defining pair, weight read off chi via (i, j)
};

std::vector<Root> positive_entry_roots(const GroupSpec& G);  // all roots, by (i, j) with i != j
Mat root_element(const GroupSpec& G, const Ring& ring, const Root& r, const RElem& x);
MatSeries root_element_series(const GroupSpec& G, const Ring& ring, int N, const Root& r,
                              const TruncSeries& f);

/// Torus generators of G(F_q) (diagonal part), used for group enumeration.
std::vector<Mat> torus_generators(const GroupSpec& G, const Ring& gf);
/// Generators of G(F_q): root elements over all scalars plus torus generators.
std::vector<Mat> group_generators(const GroupSpec& G, const Ring& gf);
/// Generators of the Levi M(F_q) of chi: weight-zero roots plus torus.
std::vector<Mat> levi_generators(const GroupSpec& G, const Cochar& chi, const Ring& gf);

/// Seeded random element of K = G(A[u]/u^N): a product of root-subgroup
/// elements with random series arguments and a random torus element.
/// Deterministic for a fixed seed.
MatSeries random_k_element(const GroupSpec& G, const Ring& coeff, int N, uint64_t seed);
/// Seeded random element of G over a constant coefficient ring.
Mat random_group_element(const GroupSpec& G, const Ring& ring, uint64_t seed);

}  // namespace eozip

#endif
