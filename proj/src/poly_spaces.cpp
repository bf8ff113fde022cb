#include "conicrank/poly_spaces.hpp"

#include <algorithm>

namespace conicrank {

namespace {

bool in_locus(const Field& f, const Triple& v, LocusTag tag) {
  switch (tag) {
    case LocusTag::ZSk: return f.square_class(line_discriminant(f, v)) == SquareClass::NonSquare;
    case LocusTag::ZSe: return f.square_class(line_discriminant(f, v)) == SquareClass::Square;
    case LocusTag::ZT:
      return line_discriminant(f, v) == 0 && v != Triple{0, 0, 0};
    case LocusTag::ZI: return f.square_class(quadratic_form(f, v)) == SquareClass::NonSquare;
    case LocusTag::ZE: return f.square_class(quadratic_form(f, v)) == SquareClass::Square;
    case LocusTag::ZO: return quadratic_form(f, v) == 0;
    case LocusTag::Full: return true;
  }
  return false;
}

Elem indicator(const Field& f, const Triple& y, const Triple& x) {
  return f.sub(f.one(), f.pow(dot(f, y, x), f.order() - 1));
}

void check_guard(const Field& f, unsigned size_guard) {
  if (f.order() > size_guard) {
    throw IncidenceError(IncidenceError::Kind::SizeGuardExceeded,
                         "evaluation spans for q=" + std::to_string(f.order()) + " exceed the size guard q <= " +
                             std::to_string(size_guard));
  }
}

Elem monomial_value(const Field& f, const std::array<unsigned, 3>& exps, const Triple& x) {
  return f.mul(f.mul(f.pow(x[0], exps[0]), f.pow(x[1], exps[1])), f.pow(x[2], exps[2]));
}

}  // namespace

const char* to_string(LocusTag tag) {
  switch (tag) {
    case LocusTag::ZSk: return "ZSk";
    case LocusTag::ZSe: return "ZSe";
    case LocusTag::ZT: return "ZT";
    case LocusTag::ZI: return "ZI";
    case LocusTag::ZE: return "ZE";
    case LocusTag::ZO: return "ZO";
    case LocusTag::Full: return "Full";
  }
  return "?";
}

LocusTag parse_locus(const std::string& text) {
  for (LocusTag t : {LocusTag::ZSk, LocusTag::ZSe, LocusTag::ZT, LocusTag::ZI, LocusTag::ZE, LocusTag::ZO,
                     LocusTag::Full}) {
    if (text == to_string(t)) return t;
  }
  throw PolySpaceError(PolySpaceError::Kind::UnknownLocus, "unknown locus '" + text + "'");
}

std::vector<Triple> locus(const Field& f, LocusTag tag) {
  const std::size_t q = f.order();
  std::vector<Triple> out;
  for (std::size_t idx = 0; idx < q * q * q; ++idx) {
    const Triple v = vector_from_index(f, idx);
    if (in_locus(f, v, tag)) out.push_back(v);
  }
  return out;
}

std::size_t expected_locus_size(std::size_t q, LocusTag tag) {
  switch (tag) {
    case LocusTag::ZT: return q * q - 1;
    case LocusTag::ZSk:
    case LocusTag::ZI: return q * (q - 1) * (q - 1) / 2;
    case LocusTag::ZSe:
    case LocusTag::ZE: return q * (q * q - 1) / 2;
    case LocusTag::ZO: return q * q;
    case LocusTag::Full: return q * q * q;
  }
  return 0;
}

EvaluationVector eval_vector(const Field& f, const Triple& y, LocusTag domain) {
  if (y == Triple{0, 0, 0}) throw PolySpaceError(PolySpaceError::Kind::ZeroVector, "f_y needs a nonzero y");
  EvaluationVector ev{domain, {}};
  for (const Triple& x : locus(f, domain)) ev.values.push_back(indicator(f, y, x));
  return ev;
}

DenseMatrix evaluation_matrix(const Field& f, LocusTag row_tag, LocusTag domain) {
  if (row_tag != LocusTag::ZSk && row_tag != LocusTag::ZSe && row_tag != LocusTag::ZT && row_tag != LocusTag::Full) {
    throw PolySpaceError(PolySpaceError::Kind::InvalidRowLocus,
                         std::string("row locus must be ZSk, ZSe, ZT or Full, not ") + to_string(row_tag));
  }
  std::vector<Triple> rows;
  for (const Triple& y : locus(f, row_tag)) {
    if (y != Triple{0, 0, 0} && canonicalize(f, y) == y) rows.push_back(y);
  }
  const auto cols = locus(f, domain);
  std::shared_ptr<const Field> field = f.shared_from_this();
  DenseMatrix m(field, rows.size(), cols.size());
  std::vector<std::string> row_labels, col_labels;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = indicator(f, rows[r], cols[c]);
    row_labels.push_back("f" + format_triple(rows[r]));
  }
  for (const auto& x : cols) col_labels.push_back("x" + format_triple(x));
  m.set_row_labels(std::move(row_labels));
  m.set_col_labels(std::move(col_labels));
  return m;
}

std::size_t span_dim(const Field& f, LocusTag row_tag, LocusTag domain, unsigned size_guard) {
  check_guard(f, size_guard);
  return rank(evaluation_matrix(f, row_tag, domain)).rank;
}

JProfile j_profile(const Field& f, LocusTag domain) {
  const auto tangents = locus(f, LocusTag::ZT);
  const std::uint64_t exponent = f.order() - 1;
  JProfile prof{domain, {}, {}, 0};
  for (const Triple& x : locus(f, domain)) {
    Elem acc = f.one();
    for (const Triple& y : tangents) acc = f.add(acc, f.pow(dot(f, y, x), exponent));
    prof.values.push_back(acc);
    ++prof.histogram[acc];
    if (acc == 0) ++prof.zero_count;
  }
  return prof;
}

bool j_in_tangent_span(const Field& f, unsigned size_guard) {
  check_guard(f, size_guard);
  const DenseMatrix tangent_rows = evaluation_matrix(f, LocusTag::ZT, LocusTag::Full);
  const JProfile j = j_profile(f, LocusTag::Full);
  DenseMatrix stacked(f.shared_from_this(), tangent_rows.rows() + 1, tangent_rows.cols());
  for (std::size_t r = 0; r < tangent_rows.rows(); ++r) {
    std::copy(tangent_rows.row(r).begin(), tangent_rows.row(r).end(), stacked.row(r).begin());
  }
  std::copy(j.values.begin(), j.values.end(), stacked.row(tangent_rows.rows()).begin());
  return rank(stacked).rank == rank(tangent_rows).rank;
}

MonomialBasis monomial_basis(unsigned degree) {
  MonomialBasis b{degree, {}};
  for (unsigned a = degree + 1; a-- > 0;) {
    for (unsigned bb = degree - a + 1; bb-- > 0;) b.exponents.push_back({a, bb, degree - a - bb});
  }
  return b;
}

std::string format_monomial(const std::array<unsigned, 3>& exps) {
  std::string s;
  for (std::size_t i = 0; i < 3; ++i) {
    if (exps[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "X" + std::to_string(i);
    if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
  }
  return s.empty() ? "1" : s;
}

const char* to_string(NullstellensatzVariant v) {
  return v == NullstellensatzVariant::SquareLocus ? "square" : "nonsquare-or-zero";
}

NullstellensatzResult nullstellensatz_check(const Field& f, unsigned degree, NullstellensatzVariant variant) {
  if (degree < 1 || degree > f.order() - 1) {
    throw PolySpaceError(PolySpaceError::Kind::DegreeOutOfRange,
                         "degree must lie in 1.." + std::to_string(f.order() - 1));
  }
  std::vector<Triple> points;
  if (variant == NullstellensatzVariant::SquareLocus) {
    points = locus(f, LocusTag::ZE);
  } else {
    points = locus(f, LocusTag::ZI);
    const auto zo = locus(f, LocusTag::ZO);
    points.insert(points.end(), zo.begin(), zo.end());
  }

  NullstellensatzResult res;
  res.degree = degree;
  res.variant = variant;
  res.basis = monomial_basis(degree);
  res.monomials = res.basis.exponents.size();
  res.locus_size = points.size();

  // Column-per-monomial layout so the kernel is directly the vanishing forms.
  DenseMatrix values(f.shared_from_this(), points.size(), res.monomials);
  for (std::size_t r = 0; r < points.size(); ++r) {
    for (std::size_t c = 0; c < res.monomials; ++c) values(r, c) = monomial_value(f, res.basis.exponents[c], points[r]);
  }
  auto reduced = rref_and_kernel(values);
  res.rank = reduced.pivot_columns.size();
  res.kernel = std::move(reduced.kernel);
  res.passed = res.rank == res.monomials;
  return res;
}

}  // namespace conicrank
