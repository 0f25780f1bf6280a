#ifndef EOZIP_SERIES_HPP
#define EOZIP_SERIES_HPP

#include <optional>

#include "eozip/ring.hpp"

namespace eozip {

struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

struct NonUnitConstantTerm : std::runtime_error {
  explicit NonUnitConstantTerm(const std::string& what) : std::runtime_error(what) {}
};

enum class Tri { True, False, Inconclusive };

/// Truncated Laurent series sum_{i} c[i] u^{val+i}, exact modulo u^{val+known}.
/// c has fixed length N (the construction window); entries past `known` are
/// not meaningful. Arithmetic tracks the guaranteed precision exactly: adding
/// series of different valuations, or substituting u -> u^p past the window,
/// can only shrink `known`, never fabricate coefficients.
class TruncSeries {
 public:
  TruncSeries(Ring ring, int N);  // zero, val = 0, fully known
  static TruncSeries constant(const Ring& ring, int N, const RElem& c);
  static TruncSeries monomial(const Ring& ring, int N, int exponent, const RElem& c);
  static TruncSeries u(const Ring& ring, int N) { return monomial(ring, N, 1, ring.one()); }
  static TruncSeries from_coeffs(const Ring& ring, int N, int val, std::vector<RElem> cs);
  /// As from_coeffs but with an explicit guaranteed-precision count <= N.
  static TruncSeries with_known(const Ring& ring, int N, int val, int known,
                                std::vector<RElem> cs);

  const Ring& ring() const { return ring_; }
  int N() const { return N_; }
  int val() const { return val_; }
  int known() const { return known_; }
  int prec() const { return val_ + known_; }  // exact modulo u^prec

  /// Coefficient of u^e; zero below val, throws PrecisionError at or past prec.
  const RElem& coeff(int e) const;
  bool known_at(int e) const { return e < prec(); }

  /// True valuation if a nonzero coefficient is known; nullopt when the series
  /// is zero on the whole known window.
  std::optional<int> order() const;

  bool is_known_zero() const { return !order().has_value(); }

  TruncSeries add(const TruncSeries& o) const;
  TruncSeries sub(const TruncSeries& o) const;
  TruncSeries neg() const;
  TruncSeries mul(const TruncSeries& o) const;
  TruncSeries scale(const RElem& c) const;
  TruncSeries shift(int k) const;  // multiply by u^k, exact

  /// Inverse of a series whose lowest known coefficient is a unit.
  /// Throws NonUnitConstantTerm when order() is undefined or the lead is not
  /// a unit of the coefficient ring.
  TruncSeries invert() const;

  /// Equality on the common guaranteed window (val down to min prec).
  /// Hard error when truncation parameters N differ.
  bool equal(const TruncSeries& o) const;
  /// Equality of all coefficients below u^k; Inconclusive if either side's
  /// precision stops earlier.
  Tri equal_mod(const TruncSeries& o, int k) const;

  /// Canonical form: while val < 0 and the lowest coefficient is zero, raise
  /// val (precision bookkeeping keeps prec unchanged).
  void canonicalize();

  std::string to_string() const;

 private:
  Ring ring_;
  int N_ = 0;
  int val_ = 0;
  int known_ = 0;
  std::vector<RElem> c_;

  friend struct SeriesOps;
};

struct PhiResult {
  TruncSeries series;
  bool lost;  // a known-nonzero coefficient fell off the window
};

/// phi(f) = sum a_i^p u^{p i}: coefficient Frobenius plus u -> u^p.
PhiResult phi_series(const TruncSeries& f);
/// sigma(f) = sum a_i^p u^i: coefficient Frobenius only.
TruncSeries sigma_series(const TruncSeries& f);
/// u -> u^p with coefficients untouched.
PhiResult subst_u_to_up(const TruncSeries& f);
/// phi with a configured coefficient map (Frobenius lift on the base).
PhiResult phi_series_with(const TruncSeries& f, const FrobLiftSpec& lift);

struct MatPhiResult;

/// Square matrix of truncated series sharing ring and window N.
class MatSeries {
 public:
  MatSeries(Ring ring, int n, int N);  // zero matrix
  static MatSeries identity(const Ring& ring, int n, int N);
  static MatSeries from_const(const Ring& ring, int N, int n, const std::vector<RElem>& entries);

  const Ring& ring() const { return ring_; }
  int n() const { return n_; }
  int N() const { return N_; }
  TruncSeries& at(int i, int j) { return e_[(size_t)i * n_ + j]; }
  const TruncSeries& at(int i, int j) const { return e_[(size_t)i * n_ + j]; }

  MatSeries mul(const MatSeries& o) const;
  MatSeries add(const MatSeries& o) const;
  MatSeries sub(const MatSeries& o) const;
  MatSeries transpose() const;
  MatSeries scale(const TruncSeries& f) const;
  bool equal(const MatSeries& o) const;
  Tri equal_mod(const MatSeries& o, int k) const;

  /// Entrywise sigma / phi / u->u^p; phi and subst report window loss.
  MatSeries sigma() const;
  MatPhiResult phi() const;
  MatPhiResult subst_up() const;
  MatPhiResult phi_with(const FrobLiftSpec& lift) const;

  TruncSeries det() const;  // cofactor expansion, n <= 6
  /// Inverse for constant-term-invertible matrices (power series inverse):
  /// invert M(0) then Neumann-iterate. Throws NonUnitConstantTerm.
  MatSeries invert() const;
  /// Laurent inverse via adjugate and series division; tolerates u-power
  /// determinant (GL over the Laurent field). Throws NonUnitConstantTerm when
  /// the determinant has no known nonzero coefficient.
  MatSeries laurent_invert() const;

  /// Constant term M(0) as ring elements; PrecisionError if unknown.
  std::vector<RElem> reduce_mod_u() const;

  /// True iff M = identity mod u. PoleError when a known pole is present;
  /// Inconclusive never occurs for val >= 0 inputs.
  bool is_in_K1() const;
  Tri in_K1_tri() const;
  bool has_known_pole() const;

  std::string to_string() const;

 private:
  Ring ring_;
  int n_ = 0;
  int N_ = 0;
  std::vector<TruncSeries> e_;
};

struct MatPhiResult {
  MatSeries mat;
  bool lost;
};

}  // namespace eozip

#endif
