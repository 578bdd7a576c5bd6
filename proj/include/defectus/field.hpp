#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace defectus {

/// Error raised for malformed input (bad parameters, inconsistent rings, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite field element.  The value packs the coordinate vector over the
/// prime field in base p (coordinate 0 is the least significant digit), so
/// prime-field elements are just their residues and every element of F_q is
/// an integer in [0, q).
struct Fel {
  std::uint64_t v = 0;

  friend constexpr bool operator==(Fel, Fel) = default;
  friend constexpr auto operator<=>(Fel, Fel) = default;
};

/// Raised when an exhaustive enumeration would exceed its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::string required)
      : std::runtime_error(what), required_(std::move(required)) {}
  /// Decimal count of the work the request would need.
  const std::string& required() const { return required_; }

 private:
  std::string required_;
};

bool is_prime(std::uint64_t n);

/// q = p^k with p prime; k == 0 when q is not a prime power.
struct PrimePower {
  std::uint64_t p = 0;
  unsigned k = 0;
};
PrimePower prime_power(std::uint64_t q);

namespace detail {
struct FieldImpl;
}

/// Handle to an immutable finite field F_q.
///
/// Either a prime field F_p or an extension F_Q[t]/(m(t)) of another field
/// F_Q by a monic irreducible modulus m.  Extensions of extensions (towers)
/// are allowed; an element of the extension is packed as sum c_j Q^j over
/// its base-field digits c_j, which keeps base-field elements fixed under the
/// inclusion F_Q -> F_{Q^m}.
class Field {
 public:
  /// The prime field F_p.
  static Field prime(std::uint64_t p);

  /// F_{p^k}; the modulus is the first irreducible candidate produced by a
  /// seeded search over monic degree-k polynomials.
  static Field make(std::uint64_t p, unsigned k, std::uint64_t seed);

  /// F_{p^k} for an explicit monic modulus (coefficients low to high, size k+1).
  static Field with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);

  /// F_{q^m} as an extension of this field.
  Field extension(unsigned m, std::uint64_t seed) const;

  /// The smallest extension F_{q^m} with q^m >= 2^20 (m = 1 when q is
  /// already that large), with a fixed modulus.
  Field randomization_extension() const;

  std::uint64_t characteristic() const;
  std::uint64_t order() const;
  /// Degree over the prime field.
  unsigned absolute_degree() const;
  /// Degree over the immediate base field (1 for prime fields).
  unsigned relative_degree() const;
  bool is_prime_field() const;
  /// The immediate base field; only valid when !is_prime_field().
  Field base() const;
  /// Modulus over the immediate base field, low to high, monic.
  std::vector<Fel> modulus() const;
  /// True when `sub` is this field or one of the fields this tower was built on.
  bool contains_subfield(const Field& sub) const;

  Fel zero() const { return Fel{0}; }
  Fel one() const { return Fel{1}; }
  /// Image of an integer under Z -> F_p -> F_q.
  Fel from_int(std::int64_t n) const;
  /// Element from its packed index in [0, q).
  Fel element(std::uint64_t index) const;
  bool is_zero(Fel a) const { return a.v == 0; }

  Fel add(Fel a, Fel b) const;
  Fel sub(Fel a, Fel b) const;
  Fel neg(Fel a) const;
  Fel mul(Fel a, Fel b) const;
  /// Throws InvalidArgument on zero.
  Fel inv(Fel a) const;
  Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }
  Fel pow(Fel a, std::uint64_t e) const;

  /// Coordinates over Z_p (length absolute_degree()).
  std::vector<std::uint64_t> coords(Fel a) const;
  Fel from_coords(std::span<const std::uint64_t> c) const;

  std::string to_string(Fel a) const;
  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b);

 private:
  explicit Field(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::FieldImpl> impl_;
};

/// Dense univariate polynomials over a Field, coefficients low to high.  Used
/// for modulus search and the irreducibility test.
namespace upoly {
using UPoly = std::vector<Fel>;
void trim(UPoly& f);
int degree(const UPoly& f);
UPoly rem(const Field& F, UPoly a, const UPoly& m);
UPoly mulmod(const Field& F, const UPoly& a, const UPoly& b, const UPoly& m);
UPoly powmod(const Field& F, UPoly base, std::uint64_t e, const UPoly& m);
UPoly gcd(const Field& F, UPoly a, UPoly b);
/// Ben-Or: f monic of degree k is irreducible iff gcd(f, X^{Q^i} - X) = 1
/// for 1 <= i <= k/2, Q = |F|.
bool is_irreducible(const Field& F, const UPoly& f);
}  // namespace upoly

}  // namespace defectus
