#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conicrank {

/// Raw element handle: the base-p encoding sum(coeffs[i] * p^i) of an element
/// of GF(p^e). Elements of the prime subfield encode as 0..p-1.
using Elem = std::uint32_t;

class FieldError : public std::runtime_error {
 public:
  enum class Kind {
    NonPrime,
    EvenCharacteristic,
    NotPrimePower,
    ReducibleModulus,
    DegreeMismatch,
    InvalidCoefficient,
    DivisionByZero,
    FieldMismatch,
  };

  FieldError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

enum class SquareClass { Zero, Square, NonSquare };

const char* to_string(SquareClass c);

bool is_prime(std::uint64_t n);

/// Splits q into (p, e) with q = p^e, p an odd prime.
/// Throws FieldError(NotPrimePower / EvenCharacteristic).
std::pair<unsigned, unsigned> factor_prime_power(std::uint64_t q);

/// Parses "1,0,1" (constant term first) into coefficients.
std::vector<unsigned> parse_modulus(const std::string& text);

class FieldElement;

/// GF(p^e) realised as GF(p)[t]/(f) for a monic irreducible f of degree e.
///
/// Immutable after construction. Multiplication uses discrete log tables
/// built from a primitive element; addition works digit-wise in base p.
class Field : public std::enable_shared_from_this<Field> {
 public:
  /// When `modulus` is omitted the lexicographically smallest monic
  /// irreducible of degree e is chosen, comparing (c_{e-1}, ..., c_0).
  static std::shared_ptr<const Field> make(unsigned p, unsigned e,
                                           std::optional<std::vector<unsigned>> modulus = std::nullopt);
  static std::shared_ptr<const Field> make_order(std::uint64_t q,
                                                 std::optional<std::vector<unsigned>> modulus = std::nullopt);

  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return e_; }
  Elem order() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return e_ == 1; }

  /// Monic modulus, constant term first, length e + 1.
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }
  std::string modulus_string() const;
  /// "q=9 (p=3, e=2, modulus 1,0,1)"
  std::string describe() const;

  /// The prime field GF(p) underlying this field (itself when e == 1).
  std::shared_ptr<const Field> prime_subfield() const;

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem minus_one() const noexcept { return p_ - 1; }
  Elem from_int(long long n) const noexcept;
  bool contains(Elem a) const noexcept { return a < q_; }

  Elem add(Elem a, Elem b) const noexcept {
    if (e_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_digits(a, b, false);
  }
  Elem sub(Elem a, Elem b) const noexcept {
    if (e_ == 1) return a >= b ? a - b : a + p_ - b;
    return add_digits(a, b, true);
  }
  Elem neg(Elem a) const noexcept { return sub(0, a); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (e_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const noexcept;

  SquareClass square_class(Elem a) const noexcept;
  bool is_square(Elem a) const noexcept { return square_class(a) == SquareClass::Square; }

  std::vector<unsigned> coefficients(Elem a) const;
  Elem from_coefficients(const std::vector<unsigned>& coeffs) const;

  FieldElement element(Elem index) const;
  FieldElement element_from_int(long long n) const;

  /// Schoolbook product modulo f on coefficient vectors. Independent of the
  /// log tables; used to build them and available as a cross-check.
  Elem mul_polynomial(Elem a, Elem b) const;

 private:
  Field(unsigned p, unsigned e, std::vector<unsigned> modulus);
  Elem add_digits(Elem a, Elem b, bool subtract) const noexcept;
  void build_tables();

  unsigned p_;
  unsigned e_;
  Elem q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> exp_;           // exp_[k] = g^k, k in [0, q-1)
  std::vector<std::uint32_t> log_;  // log_[a] for a != 0
};

/// Value type bound to a field; the arithmetic operators refuse to mix
/// elements of different fields.
class FieldElement {
 public:
  FieldElement(std::shared_ptr<const Field> field, Elem index);

  const Field& field() const noexcept { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const noexcept { return field_; }
  Elem index() const noexcept { return index_; }
  std::vector<unsigned> coeffs() const { return field_->coefficients(index_); }
  bool is_zero() const noexcept { return index_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t n) const;
  SquareClass square_class() const { return field_->square_class(index_); }

  bool operator==(const FieldElement& o) const noexcept {
    return index_ == o.index_ && same_field(o);
  }

 private:
  bool same_field(const FieldElement& o) const noexcept;
  void require_same_field(const FieldElement& o) const;

  std::shared_ptr<const Field> field_;
  Elem index_;
};

/// Irreducibility over GF(p) of a monic polynomial (constant term first).
/// Degree <= 3 is decided by an exhaustive root search, larger degrees by
/// gcd(f, t^(p^k) - t) == 1 for k <= deg/2.
bool is_irreducible(unsigned p, const std::vector<unsigned>& monic);
/// The gcd-with-Frobenius test alone, for any degree.
bool is_irreducible_by_frobenius(unsigned p, const std::vector<unsigned>& monic);

}  // namespace conicrank
