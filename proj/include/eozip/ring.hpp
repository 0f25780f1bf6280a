#ifndef EOZIP_RING_HPP
#define EOZIP_RING_HPP

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace eozip {

struct NonUnitError : std::runtime_error {
  explicit NonUnitError(const std::string& what) : std::runtime_error(what) {}
};

struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Element of one of the three coefficient rings; the owning Ring knows the layout.
struct RElem {
  std::vector<uint64_t> v;
  auto operator<=>(const RElem&) const = default;
};

enum class RingKind {
  GF,       // F_{p^r}, limbs = r residues mod p, low degree first
  Wm,       // Z/p^m, one limb
  RelBase,  // (Z/p^m)[t]/(t^D), limbs = D residues mod p^m, low degree first
};

/// Frobenius lift t -> t^p + p*t*h(t) on (Z/p^m)[t]/(t^D).
/// Every member of this family is a well-defined endomorphism of the
/// truncated ring and reduces to x -> x^p mod p.
struct FrobLiftSpec {
  std::vector<uint64_t> h;  // coefficients of h mod p^m, degree < D-1

  static FrobLiftSpec zero() { return FrobLiftSpec{{}}; }
};

/// One of F_{p^r} (with deterministic modulus), Z/p^m, or (Z/p^m)[t]/(t^D).
/// Immutable spec; all element operations are pure.
class Ring {
 public:
  static Ring gf(uint32_t p, uint32_t r);
  static Ring wm(uint32_t p, uint32_t m);
  static Ring rel_base(uint32_t p, uint32_t m, uint32_t D);

  RingKind kind() const { return kind_; }
  uint32_t p() const { return p_; }
  uint32_t r() const { return r_; }
  uint32_t m() const { return m_; }
  uint32_t D() const { return D_; }
  uint64_t pm() const { return pm_; }  // p^m for Wm/RelBase, p for GF limbs
  size_t width() const { return width_; }
  const std::vector<uint64_t>& modulus() const { return modulus_; }

  /// Number of elements for GF rings (p^r); throws for non-fields.
  uint64_t card() const;

  bool operator==(const Ring& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && r_ == o.r_ && m_ == o.m_ && D_ == o.D_;
  }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  RElem zero() const;
  RElem one() const;
  RElem from_int(int64_t x) const;
  /// GF only: the element with the given index in 0..p^r-1 (base-p digits).
  RElem from_index(uint64_t idx) const;
  uint64_t to_index(const RElem& x) const;

  bool is_zero(const RElem& x) const;
  bool is_one(const RElem& x) const;
  /// Unit test: nonzero for GF; unit mod p for Wm/RelBase (local rings).
  bool is_unit(const RElem& x) const;

  RElem add(const RElem& a, const RElem& b) const;
  RElem sub(const RElem& a, const RElem& b) const;
  RElem neg(const RElem& a) const;
  RElem mul(const RElem& a, const RElem& b) const;
  RElem inv(const RElem& a) const;  // throws NonUnitError
  RElem pow(const RElem& a, uint64_t e) const;

  /// x -> x^p where canonical: GF always, Wm identity (k = F_p),
  /// RelBase only for m == 1 (absolute Frobenius of F_p[t]/(t^D)).
  RElem frobenius(const RElem& x) const;
  /// Inverse of frobenius on GF (apply r-1 more times).
  RElem frobenius_inverse(const RElem& x) const;

  std::string to_string(const RElem& x) const;

 private:
  Ring() = default;
  void check(const RElem& x) const;

  RingKind kind_ = RingKind::Wm;
  uint32_t p_ = 2, r_ = 1, m_ = 1, D_ = 1;
  uint64_t pm_ = 2;
  size_t width_ = 1;
  std::vector<uint64_t> modulus_;  // GF only: monic degree-r, stored coeffs 0..r-1
};

/// Apply the lift t -> t^p + p*t*h(t) to an element of (Z/p^m)[t]/(t^D).
RElem frob_lift_apply(const Ring& ring, const RElem& x, const FrobLiftSpec& lift);

/// Lexicographically smallest (low-degree-first coefficient order) monic
/// irreducible polynomial of degree r over F_p; returned without the leading 1.
std::vector<uint64_t> smallest_irreducible(uint32_t p, uint32_t r);

}  // namespace eozip

#endif
