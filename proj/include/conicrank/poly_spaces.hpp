#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "conicrank/dense_matrix.hpp"
#include "conicrank/incidence.hpp"
#include "conicrank/plane_geometry.hpp"

namespace conicrank {

class PolySpaceError : public std::runtime_error {
 public:
  enum class Kind { ZeroVector, DegreeOutOfRange, InvalidRowLocus, UnknownLocus };
  PolySpaceError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Vector loci of F_q^3. ZSk/ZSe/ZT split by the line discriminant
/// y1^2 - 4 y0 y2 (ZT without the zero vector); ZI/ZE/ZO by the quadratic
/// form x1^2 - x0 x2 (ZO with the zero vector).
enum class LocusTag { ZSk, ZSe, ZT, ZI, ZE, ZO, Full };

const char* to_string(LocusTag tag);
LocusTag parse_locus(const std::string& text);

/// Vectors of the locus in ascending index order.
std::vector<Triple> locus(const Field& f, LocusTag tag);
std::size_t expected_locus_size(std::size_t q, LocusTag tag);

struct EvaluationVector {
  LocusTag domain;
  std::vector<Elem> values;
};

/// Values of 1 - (y . X)^(q-1) over the domain.
EvaluationVector eval_vector(const Field& f, const Triple& y, LocusTag domain);

/// One row per projective class of the row locus (scalar multiples give
/// identical rows), columns over the domain, entries in GF(q).
DenseMatrix evaluation_matrix(const Field& f, LocusTag row_tag, LocusTag domain);

/// Dimension of the span of the evaluation vectors of f_y, y in row_tag,
/// restricted to `domain`. row_tag must be one of ZSk, ZSe, ZT, Full.
std::size_t span_dim(const Field& f, LocusTag row_tag, LocusTag domain, unsigned size_guard = kDefaultSizeGuard);

/// J(x) = 1 + sum over y in ZT of (y . x)^(q-1), by direct summation.
struct JProfile {
  LocusTag domain;
  std::vector<Elem> values;
  std::map<Elem, std::size_t> histogram;
  std::size_t zero_count = 0;
};

JProfile j_profile(const Field& f, LocusTag domain);

/// Whether the evaluation vector of J over F_q^3 lies in the span of the
/// tangent evaluation rows.
bool j_in_tangent_span(const Field& f, unsigned size_guard = kDefaultSizeGuard);

struct MonomialBasis {
  unsigned degree = 0;
  std::vector<std::array<unsigned, 3>> exponents;  // X0^d first
};

MonomialBasis monomial_basis(unsigned degree);
std::string format_monomial(const std::array<unsigned, 3>& exps);

enum class NullstellensatzVariant { SquareLocus, NonSquareOrZeroLocus };
const char* to_string(NullstellensatzVariant v);

struct NullstellensatzResult {
  unsigned degree = 0;
  NullstellensatzVariant variant{};
  std::size_t monomials = 0;
  std::size_t locus_size = 0;
  std::size_t rank = 0;
  bool passed = false;
  MonomialBasis basis;
  /// Coefficient vectors (over the basis) of homogeneous forms vanishing on the locus.
  std::vector<std::vector<Elem>> kernel;
};

/// Monomials of degree d evaluated on ZE (square locus) or on ZI u ZO
/// (nonsquare-or-zero locus); passes iff no nonzero form vanishes there.
NullstellensatzResult nullstellensatz_check(const Field& f, unsigned degree, NullstellensatzVariant variant);

}  // namespace conicrank
