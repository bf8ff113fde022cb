#include <gtest/gtest.h>

#include <random>
#include <set>

#include "conicrank/finite_field.hpp"
#include "support/oracle.hpp"

using namespace conicrank;

namespace {

const std::vector<std::uint64_t> kOddPrimePowersTo81{3,  5,  7,  9,  11, 13, 17, 19, 23, 25, 27, 29, 31,
                                                     37, 41, 43, 47, 49, 53, 59, 61, 67, 71, 73, 79, 81};

oracle::PolyField oracle_of(const Field& f) { return oracle::PolyField(f.characteristic(), f.modulus()); }

// Exhaustive root search, written out independently of the library.
bool has_root(unsigned p, const std::vector<unsigned>& f) {
  for (unsigned x = 0; x < p; ++x) {
    unsigned long long acc = 0, pw = 1;
    for (unsigned c : f) {
      acc = (acc + c * pw) % p;
      pw = pw * x % p;
    }
    if (acc == 0) return true;
  }
  return false;
}

template <class Fn>
void expect_field_error(FieldError::Kind kind, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected FieldError";
  } catch (const FieldError& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(MakeField, PrimeField) {
  auto f = Field::make(3, 1);
  EXPECT_EQ(f->order(), 3u);
  EXPECT_EQ(f->characteristic(), 3u);
  EXPECT_EQ(f->degree(), 1u);
  EXPECT_TRUE(f->is_prime_field());
  EXPECT_EQ(f->modulus(), (std::vector<unsigned>{0, 1}));
}

TEST(MakeField, SmallestIrreducibleDegreeTwo) {
  auto f = Field::make(3, 2);
  EXPECT_EQ(f->order(), 9u);
  EXPECT_EQ(f->modulus(), (std::vector<unsigned>{1, 0, 1}));
  EXPECT_FALSE(has_root(3, f->modulus()));
  // every lexicographically smaller monic quadratic has a root
  EXPECT_TRUE(has_root(3, {0, 0, 1}));
}

TEST(MakeField, SmallestIrreducibleDegreeThree) {
  auto f = Field::make(3, 3);
  EXPECT_EQ(f->modulus(), (std::vector<unsigned>{1, 2, 0, 1}));
  EXPECT_FALSE(has_root(3, f->modulus()));
  for (std::vector<unsigned> smaller : {std::vector<unsigned>{0, 0, 0, 1}, {1, 0, 0, 1}, {2, 0, 0, 1}, {0, 1, 0, 1},
                                        {1, 1, 0, 1}, {2, 1, 0, 1}, {0, 2, 0, 1}}) {
    EXPECT_TRUE(has_root(3, smaller));
  }
}

TEST(MakeField, ModulusOverride) {
  // t^2 + t + 2 is irreducible over GF(3): values 2, 1, 2 at 0, 1, 2
  auto f = Field::make(3, 2, std::vector<unsigned>{2, 1, 1});
  EXPECT_EQ(f->modulus_string(), "2,1,1");
  EXPECT_EQ(f->order(), 9u);
}

TEST(MakeField, Errors) {
  expect_field_error(FieldError::Kind::NonPrime, [] { Field::make(9, 1); });
  expect_field_error(FieldError::Kind::EvenCharacteristic, [] { Field::make(2, 3); });
  expect_field_error(FieldError::Kind::ReducibleModulus, [] { Field::make(3, 2, std::vector<unsigned>{2, 0, 1}); });
  expect_field_error(FieldError::Kind::DegreeMismatch, [] { Field::make(3, 2, std::vector<unsigned>{1, 0, 0, 1}); });
  expect_field_error(FieldError::Kind::DegreeMismatch, [] { Field::make(3, 2, std::vector<unsigned>{1, 0, 2}); });
  expect_field_error(FieldError::Kind::InvalidCoefficient, [] { Field::make(3, 2, std::vector<unsigned>{4, 0, 1}); });
}

TEST(FactorPrimePower, Cases) {
  EXPECT_EQ(factor_prime_power(9), (std::pair<unsigned, unsigned>{3, 2}));
  EXPECT_EQ(factor_prime_power(27), (std::pair<unsigned, unsigned>{3, 3}));
  EXPECT_EQ(factor_prime_power(13), (std::pair<unsigned, unsigned>{13, 1}));
  expect_field_error(FieldError::Kind::NotPrimePower, [] { factor_prime_power(15); });
  expect_field_error(FieldError::Kind::NotPrimePower, [] { factor_prime_power(1); });
  expect_field_error(FieldError::Kind::EvenCharacteristic, [] { factor_prime_power(8); });
}

TEST(ParseModulus, Cases) {
  EXPECT_EQ(parse_modulus("1,0,1"), (std::vector<unsigned>{1, 0, 1}));
  EXPECT_EQ(parse_modulus(" 2, 1 ,1"), (std::vector<unsigned>{2, 1, 1}));
  expect_field_error(FieldError::Kind::InvalidCoefficient, [] { parse_modulus("1,,1"); });
  expect_field_error(FieldError::Kind::InvalidCoefficient, [] { parse_modulus("1,x"); });
}

TEST(Arithmetic, WorkedExamples) {
  auto f3 = Field::make(3, 1);
  EXPECT_EQ(f3->inv(2), 2u);
  auto f9 = Field::make(3, 2);
  const Elem t = f9->from_coefficients({0, 1});
  EXPECT_EQ(f9->mul(t, t), f9->minus_one());
  EXPECT_EQ(f9->mul(t, t), 2u);
  auto f7 = Field::make(7, 1);
  EXPECT_EQ(f7->pow(3, 6), 1u);
}

TEST(Arithmetic, ElementWrapperAndErrors) {
  auto f5 = Field::make(5, 1);
  auto f3 = Field::make(3, 1);
  const FieldElement two = f5->element(2);
  EXPECT_EQ((two * two.inv()).index(), 1u);
  EXPECT_EQ((two / two).index(), 1u);
  EXPECT_EQ((-two).index(), 3u);
  EXPECT_EQ(two.pow(4).index(), 1u);
  expect_field_error(FieldError::Kind::DivisionByZero, [&] { f5->element(0).inv(); });
  expect_field_error(FieldError::Kind::DivisionByZero, [&] { two / f5->element(0); });
  expect_field_error(FieldError::Kind::FieldMismatch, [&] { two + f3->element(1); });
  expect_field_error(FieldError::Kind::FieldMismatch, [&] { f3->element(3); });
}

TEST(SquareClass, WorkedExamples) {
  auto f3 = Field::make(3, 1);
  EXPECT_EQ(f3->square_class(1), SquareClass::Square);
  EXPECT_EQ(f3->square_class(2), SquareClass::NonSquare);
  EXPECT_EQ(f3->square_class(0), SquareClass::Zero);
  auto f5 = Field::make(5, 1);
  const auto squares5 = oracle::nonzero_squares(oracle_of(*f5));
  EXPECT_EQ(squares5, (std::set<unsigned>{1, 4}));
  EXPECT_EQ(f5->square_class(4), SquareClass::Square);
  EXPECT_EQ(f5->square_class(2), SquareClass::NonSquare);
  auto f9 = Field::make(3, 2);
  EXPECT_EQ(f9->square_class(f9->minus_one()), SquareClass::Square);
  EXPECT_TRUE(oracle::nonzero_squares(oracle_of(*f9)).count(f9->minus_one()));
}

TEST(SquareClass, AgreesWithEnumerationAndIsMultiplicative) {
  for (auto q : kOddPrimePowersTo81) {
    auto f = Field::make_order(q);
    const auto squares = oracle::nonzero_squares(oracle_of(*f));
    EXPECT_EQ(squares.size(), (q - 1) / 2) << "q=" << q;
    std::size_t counted = 0;
    for (Elem a = 0; a < q; ++a) {
      const auto c = f->square_class(a);
      if (a == 0) {
        EXPECT_EQ(c, SquareClass::Zero);
        continue;
      }
      EXPECT_EQ(c == SquareClass::Square, squares.count(a) == 1) << "q=" << q << " a=" << a;
      if (c == SquareClass::Square) ++counted;
    }
    EXPECT_EQ(counted, (q - 1) / 2);
    for (Elem a = 1; a < q; ++a) {
      for (Elem b = 1; b < q; ++b) {
        const bool sa = f->is_square(a), sb = f->is_square(b);
        EXPECT_EQ(f->is_square(f->mul(a, b)), sa == sb) << "q=" << q;
      }
    }
  }
}

TEST(Arithmetic, FieldAxiomsExhaustiveSmall) {
  for (std::uint64_t q : {3, 5, 7, 9}) {
    auto f = Field::make_order(q);
    for (Elem a = 0; a < q; ++a) {
      EXPECT_EQ(f->add(a, f->neg(a)), 0u);
      if (a != 0) EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
      for (Elem b = 0; b < q; ++b) {
        EXPECT_EQ(f->add(a, b), f->add(b, a));
        EXPECT_EQ(f->mul(a, b), f->mul(b, a));
        EXPECT_EQ(f->sub(f->add(a, b), b), a);
        for (Elem c = 0; c < q; ++c) {
          EXPECT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
          EXPECT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
          EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
        }
      }
    }
  }
}

TEST(Arithmetic, FieldAxiomsRandomLarge) {
  std::mt19937 rng(20261016);
  for (std::uint64_t q : {25, 27, 49, 81, 125, 243, 2187}) {
    auto f = Field::make_order(q);
    const oracle::PolyField ref = oracle_of(*f);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(q - 1));
    for (int i = 0; i < 10000; ++i) {
      const Elem a = pick(rng), b = pick(rng), c = pick(rng);
      ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
      ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
      ASSERT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
      ASSERT_EQ(f->mul(a, b), ref.mul(a, b)) << "q=" << q;
      if (a != 0) ASSERT_EQ(f->mul(a, f->inv(a)), 1u);
    }
  }
}

TEST(Arithmetic, LogTablesAgreeWithSchoolbook) {
  for (std::uint64_t q : {9, 25, 27}) {
    auto f = Field::make_order(q);
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) ASSERT_EQ(f->mul(a, b), f->mul_polynomial(a, b));
  }
}

TEST(Encoding, IndexRoundTrips) {
  for (std::uint64_t q : {3, 9, 27, 25, 81}) {
    auto f = Field::make_order(q);
    std::set<Elem> seen;
    for (Elem a = 0; a < q; ++a) {
      const auto c = f->coefficients(a);
      ASSERT_EQ(c.size(), f->degree());
      for (unsigned d : c) ASSERT_LT(d, f->characteristic());
      ASSERT_EQ(f->from_coefficients(c), a);
      seen.insert(f->from_coefficients(c));
    }
    EXPECT_EQ(seen.size(), q);
  }
}

TEST(Irreducibility, RootTestAgreesWithFrobenius) {
  for (unsigned p : {3u, 5u, 7u}) {
    for (unsigned deg : {2u, 3u}) {
      std::vector<unsigned> f(deg + 1, 0);
      f[deg] = 1;
      for (;;) {
        EXPECT_EQ(is_irreducible(p, f), is_irreducible_by_frobenius(p, f));
        EXPECT_EQ(is_irreducible(p, f), !has_root(p, f));
        std::size_t i = 0;
        while (i < deg && ++f[i] == p) f[i++] = 0;
        if (i == deg) break;
      }
    }
  }
}

TEST(Irreducibility, CountsMatchNecklaceFormula) {
  // number of monic irreducibles of degree n over GF(p) = (1/n) sum_{d|n} mu(d) p^(n/d)
  const std::vector<std::tuple<unsigned, unsigned, unsigned>> cases{{3, 4, 18}, {3, 5, 48}, {5, 4, 150}};
  for (auto [p, deg, expected] : cases) {
    std::vector<unsigned> f(deg + 1, 0);
    f[deg] = 1;
    unsigned count = 0;
    for (;;) {
      if (is_irreducible(p, f)) ++count;
      std::size_t i = 0;
      while (i < deg && ++f[i] == p) f[i++] = 0;
      if (i == deg) break;
    }
    EXPECT_EQ(count, expected) << "p=" << p << " deg=" << deg;
  }
}
