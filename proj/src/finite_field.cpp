#include "conicrank/finite_field.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace conicrank {

namespace {

using Poly = std::vector<unsigned>;  // constant term first, over GF(p)

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) {
  long long t = 0, new_t = 1;
  long long r = p, new_r = a;
  while (new_r != 0) {
    long long quot = r / new_r;
    t -= quot * new_t;
    std::swap(t, new_t);
    r -= quot * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<unsigned>(t);
}

// f mod g, g nonzero.
Poly poly_mod(Poly f, const Poly& g, unsigned p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const unsigned lead_inv = inv_mod(g.back(), p);
  while (f.size() > dg) {
    const unsigned factor = static_cast<unsigned>((std::uint64_t{f.back()} * lead_inv) % p);
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t sub = (std::uint64_t{factor} * g[i]) % p;
      f[shift + i] = static_cast<unsigned>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<unsigned>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(prod), f, p);
}

Poly poly_gcd(Poly a, Poly b, unsigned p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

unsigned eval_poly(const Poly& f, unsigned x, unsigned p) {
  std::uint64_t acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
  return static_cast<unsigned>(acc);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void validate_monic(unsigned p, unsigned e, const Poly& modulus) {
  if (modulus.size() != e + 1 || modulus.back() != 1) {
    throw FieldError(FieldError::Kind::DegreeMismatch,
                     "modulus must be monic of degree " + std::to_string(e) +
                         " (" + std::to_string(e + 1) + " coefficients, constant term first)");
  }
  for (unsigned c : modulus) {
    if (c >= p) {
      throw FieldError(FieldError::Kind::InvalidCoefficient,
                       "modulus coefficient " + std::to_string(c) + " is not a residue mod " +
                           std::to_string(p));
    }
  }
}

}  // namespace

const char* to_string(SquareClass c) {
  switch (c) {
    case SquareClass::Zero: return "zero";
    case SquareClass::Square: return "square";
    case SquareClass::NonSquare: return "nonsquare";
  }
  return "?";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<unsigned, unsigned> factor_prime_power(std::uint64_t q) {
  if (q < 2) throw FieldError(FieldError::Kind::NotPrimePower, std::to_string(q) + " is not a prime power");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  unsigned e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw FieldError(FieldError::Kind::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (p == 2) throw FieldError(FieldError::Kind::EvenCharacteristic, "characteristic 2 is not supported");
  if (p > std::numeric_limits<unsigned>::max()) {
    throw FieldError(FieldError::Kind::NotPrimePower, std::to_string(q) + " is too large");
  }
  return {static_cast<unsigned>(p), e};
}

std::vector<unsigned> parse_modulus(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw FieldError(FieldError::Kind::InvalidCoefficient, "empty coefficient in modulus '" + text + "'");
    }
    const std::string tok = item.substr(first, last - first + 1);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw FieldError(FieldError::Kind::InvalidCoefficient, "bad coefficient '" + tok + "' in modulus");
    }
    out.push_back(value);
  }
  if (out.empty()) throw FieldError(FieldError::Kind::InvalidCoefficient, "empty modulus");
  return out;
}

bool is_irreducible_by_frobenius(unsigned p, const std::vector<unsigned>& monic) {
  Poly f = monic;
  trim(f);
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  const Poly t{0, 1};
  Poly h = t;  // t^(p^k) mod f
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    Poly base = h;
    Poly acc{1};
    for (unsigned n = p; n > 0; n >>= 1) {
      if (n & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    h = acc;
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;  // f divides t^(p^k) - t
    if (poly_gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

bool is_irreducible(unsigned p, const std::vector<unsigned>& monic) {
  Poly f = monic;
  trim(f);
  const std::size_t deg = f.empty() ? 0 : f.size() - 1;
  if (deg == 0) return false;
  if (deg <= 3) {
    for (unsigned x = 0; x < p; ++x) {
      if (eval_poly(f, x, p) == 0) return deg == 1;
    }
    return true;
  }
  return is_irreducible_by_frobenius(p, f);
}

Field::Field(unsigned p, unsigned e, std::vector<unsigned> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < e_; ++i) q_ *= p_;
}

std::shared_ptr<const Field> Field::make(unsigned p, unsigned e, std::optional<std::vector<unsigned>> modulus) {
  if (p == 2) throw FieldError(FieldError::Kind::EvenCharacteristic, "characteristic 2 is not supported");
  if (!is_prime(p)) throw FieldError(FieldError::Kind::NonPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw FieldError(FieldError::Kind::DegreeMismatch, "extension degree must be positive");
  {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
      q *= p;
      if (q > (std::uint64_t{1} << 26)) {
        throw FieldError(FieldError::Kind::NotPrimePower, "field order exceeds 2^26");
      }
    }
  }

  Poly f;
  if (modulus) {
    f = *modulus;
    validate_monic(p, e, f);
    if (!is_irreducible(p, f)) {
      throw FieldError(FieldError::Kind::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    }
  } else {
    // Counting N = sum c_i p^i upward visits (c_{e-1}, ..., c_0) in ascending lexicographic order.
    f.assign(e + 1, 0);
    f[e] = 1;
    for (;;) {
      if (is_irreducible(p, f)) break;
      std::size_t i = 0;
      while (i < e && ++f[i] == p) f[i++] = 0;
    }
  }

  std::shared_ptr<Field> field(new Field(p, e, std::move(f)));
  field->build_tables();
  return field;
}

std::shared_ptr<const Field> Field::make_order(std::uint64_t q, std::optional<std::vector<unsigned>> modulus) {
  auto [p, e] = factor_prime_power(q);
  return make(p, e, std::move(modulus));
}

void Field::build_tables() {
  if (e_ == 1) return;
  const std::uint64_t group = q_ - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [&](Elem a, std::uint64_t n) {
    Elem acc = 1;
    while (n > 0) {
      if (n & 1) acc = mul_polynomial(acc, a);
      a = mul_polynomial(a, a);
      n >>= 1;
    }
    return acc;
  };
  Elem generator = 0;
  for (Elem g = 2; g < q_; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(g, group / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = g;
      break;
    }
  }
  exp_.resize(group);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint32_t k = 0; k < group; ++k) {
    exp_[k] = x;
    log_[x] = k;
    x = mul_polynomial(x, generator);
  }
}

Elem Field::mul_polynomial(Elem a, Elem b) const {
  Poly pa = coefficients(a);
  Poly pb = coefficients(b);
  trim(pa);
  trim(pb);
  Poly r = poly_mulmod(pa, pb, modulus_, p_);
  r.resize(e_, 0);
  return from_coefficients(r);
}

Elem Field::add_digits(Elem a, Elem b, bool subtract) const noexcept {
  Elem result = 0;
  Elem place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    const Elem da = a % p_;
    const Elem db = b % p_;
    a /= p_;
    b /= p_;
    Elem d = subtract ? (da + p_ - db) : (da + db);
    if (d >= p_) d -= p_;
    result += d * place;
    place *= p_;
  }
  return result;
}

Elem Field::from_int(long long n) const noexcept {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError(FieldError::Kind::DivisionByZero, "inverse of zero");
  if (e_ == 1) return inv_mod(a, p_);
  const std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Elem Field::pow(Elem a, std::uint64_t n) const noexcept {
  Elem acc = 1;
  while (n > 0) {
    if (n & 1) acc = mul(acc, a);
    a = mul(a, a);
    n >>= 1;
  }
  return acc;
}

SquareClass Field::square_class(Elem a) const noexcept {
  if (a == 0) return SquareClass::Zero;
  return pow(a, (q_ - 1) / 2) == 1 ? SquareClass::Square : SquareClass::NonSquare;
}

std::vector<unsigned> Field::coefficients(Elem a) const {
  std::vector<unsigned> c(e_);
  for (unsigned i = 0; i < e_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::from_coefficients(const std::vector<unsigned>& coeffs) const {
  if (coeffs.size() > e_) {
    throw FieldError(FieldError::Kind::DegreeMismatch, "too many coefficients for GF(" + std::to_string(q_) + ")");
  }
  Elem r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) {
      throw FieldError(FieldError::Kind::InvalidCoefficient, "coefficient out of range");
    }
    r = r * p_ + coeffs[i];
  }
  return r;
}

std::string Field::modulus_string() const {
  std::string s;
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(modulus_[i]);
  }
  return s;
}

std::string Field::describe() const {
  return "q=" + std::to_string(q_) + " (p=" + std::to_string(p_) + ", e=" + std::to_string(e_) + ", modulus " +
         modulus_string() + ")";
}

std::shared_ptr<const Field> Field::prime_subfield() const {
  if (e_ == 1) return shared_from_this();
  return make(p_, 1);
}

FieldElement Field::element(Elem index) const {
  if (index >= q_) {
    throw FieldError(FieldError::Kind::FieldMismatch,
                     "index " + std::to_string(index) + " is not an element of GF(" + std::to_string(q_) + ")");
  }
  return FieldElement(shared_from_this(), index);
}

FieldElement Field::element_from_int(long long n) const { return element(from_int(n)); }

FieldElement::FieldElement(std::shared_ptr<const Field> field, Elem index) : field_(std::move(field)), index_(index) {}

bool FieldElement::same_field(const FieldElement& o) const noexcept {
  if (field_ == o.field_) return true;
  return field_->characteristic() == o.field_->characteristic() && field_->degree() == o.field_->degree() &&
         field_->modulus() == o.field_->modulus();
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (!same_field(o)) {
    throw FieldError(FieldError::Kind::FieldMismatch,
                     "operands from " + field_->describe() + " and " + o.field_->describe());
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_->add(index_, o.index_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_->sub(index_, o.index_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_->mul(index_, o.index_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_->div(index_, o.index_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(index_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(index_)}; }
FieldElement FieldElement::pow(std::uint64_t n) const { return {field_, field_->pow(index_, n)}; }

}  // namespace conicrank
