#include "conicrank/incidence.hpp"

#include <algorithm>
#include <cctype>

#include "conicrank/parallel.hpp"

namespace conicrank {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::size_t group_of(SquareClass c) {
  switch (c) {
    case SquareClass::Zero: return 0;
    case SquareClass::NonSquare: return 1;
    case SquareClass::Square: return 2;
  }
  return 0;
}

struct Grouped {
  std::vector<Triple> vectors;
  std::array<std::size_t, 4> offsets{};
};

// Vectors in ascending index order within each square-class group.
template <class Discriminant>
Grouped group_vectors(const Field& f, bool skip_zero, Discriminant disc) {
  const std::size_t q = f.order();
  std::array<std::vector<Triple>, 3> groups;
  for (std::size_t idx = skip_zero ? 1 : 0; idx < q * q * q; ++idx) {
    const Triple v = vector_from_index(f, idx);
    groups[group_of(f.square_class(disc(v)))].push_back(v);
  }
  Grouped g;
  for (std::size_t k = 0; k < 3; ++k) {
    g.offsets[k + 1] = g.offsets[k] + groups[k].size();
    g.vectors.insert(g.vectors.end(), groups[k].begin(), groups[k].end());
  }
  return g;
}

std::vector<std::string> labels(const char* prefix, const std::vector<Triple>& vs) {
  std::vector<std::string> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(prefix + format_triple(v));
  return out;
}

}  // namespace

BlockSelector BlockSelector::cell(IncidenceKind part, int i, int j) {
  if (i < 1 || i > 3 || j < 1 || j > 3) {
    throw IncidenceError(IncidenceError::Kind::InvalidSelector, "block indices must lie in 1..3");
  }
  BlockSelector s;
  s.part = part;
  s.i = i;
  s.j = j;
  return s;
}

BlockSelector BlockSelector::group(IncidenceKind part, Aggregate agg) {
  BlockSelector s;
  s.part = part;
  s.aggregate = agg;
  return s;
}

BlockSelector BlockSelector::parse(const std::string& text) {
  auto bad = [&] {
    return IncidenceError(IncidenceError::Kind::InvalidSelector, "invalid block selector '" + text + "'");
  };
  if (text.empty()) throw bad();
  IncidenceKind part;
  switch (text[0]) {
    case 'A': case 'a': part = IncidenceKind::A; break;
    case 'S': case 's': part = IncidenceKind::S; break;
    default: throw bad();
  }
  std::string rest = lower(text.substr(1));
  if (!rest.empty() && rest[0] == '_') rest.erase(0, 1);
  if (rest.empty()) return group(part, Aggregate::Whole);
  if (rest == "nonsec") return group(part, Aggregate::NonSec);
  if (rest == "sec") return group(part, Aggregate::Sec);
  if (rest == "sk") return group(part, Aggregate::Sk);
  if (rest == "t") return group(part, Aggregate::T);
  if (rest.size() == 2 && rest[0] >= '1' && rest[0] <= '3' && rest[1] >= '1' && rest[1] <= '3') {
    return cell(part, rest[0] - '0', rest[1] - '0');
  }
  throw bad();
}

std::string BlockSelector::name() const {
  std::string s = part == IncidenceKind::A ? "A" : "S";
  if (!aggregate) return s + std::to_string(i) + std::to_string(j);
  switch (*aggregate) {
    case Aggregate::Whole: return s;
    case Aggregate::NonSec: return s + "_nonsec";
    case Aggregate::Sec: return s + "_sec";
    case Aggregate::Sk: return s + "_sk";
    case Aggregate::T: return s + "_T";
  }
  return s;
}

PartitionedIncidence build_A(const Plane& plane) {
  const Field& f = plane.field();
  const auto& lines = plane.lines();
  const auto& points = plane.points();
  DenseMatrix m(f.prime_subfield(), lines.size(), points.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    for (std::size_t c = 0; c < points.size(); ++c) {
      m(r, c) = plane.incident(points[c], lines[r]) ? 1 : 0;
    }
  }
  PartitionedIncidence out{IncidenceKind::A, std::move(m), plane.line_offsets(), plane.point_offsets(), {}, {}};
  for (const auto& l : lines) out.row_vectors.push_back(l.coords);
  for (const auto& p : points) out.col_vectors.push_back(p.coords);
  out.matrix.set_row_labels(labels("L", out.row_vectors));
  out.matrix.set_col_labels(labels("P", out.col_vectors));
  return out;
}

PartitionedIncidence build_S(const Field& f, unsigned size_guard) {
  if (f.order() > size_guard) {
    throw IncidenceError(IncidenceError::Kind::SizeGuardExceeded,
                         "S for q=" + std::to_string(f.order()) + " exceeds the size guard q <= " +
                             std::to_string(size_guard));
  }
  const Grouped rows = group_vectors(f, true, [&](const Triple& y) { return line_discriminant(f, y); });
  const Grouped cols = group_vectors(f, false, [&](const Triple& x) { return quadratic_form(f, x); });
  const std::uint64_t exponent = f.order() - 1;

  DenseMatrix m(f.prime_subfield(), rows.vectors.size(), cols.vectors.size());
  for (std::size_t r = 0; r < rows.vectors.size(); ++r) {
    for (std::size_t c = 0; c < cols.vectors.size(); ++c) {
      // 1 - (x.y)^(q-1) is 0 or 1, which encode identically in GF(p).
      m(r, c) = f.sub(f.one(), f.pow(dot(f, rows.vectors[r], cols.vectors[c]), exponent));
    }
  }
  PartitionedIncidence out{IncidenceKind::S, std::move(m), rows.offsets, cols.offsets, rows.vectors, cols.vectors};
  out.matrix.set_row_labels(labels("y", out.row_vectors));
  out.matrix.set_col_labels(labels("x", out.col_vectors));
  return out;
}

DenseMatrix get_block(const PartitionedIncidence& part, const BlockSelector& sel) {
  if (sel.part != part.kind) {
    throw IncidenceError(IncidenceError::Kind::InvalidSelector,
                         "selector " + sel.name() + " does not refer to this matrix");
  }
  const auto& ro = part.row_offsets;
  const auto& co = part.col_offsets;
  const std::size_t all_cols = co[3];
  if (!sel.aggregate) {
    if (sel.i < 1 || sel.i > 3 || sel.j < 1 || sel.j > 3) {
      throw IncidenceError(IncidenceError::Kind::InvalidSelector, "block indices must lie in 1..3");
    }
    return part.matrix.block(ro[sel.i - 1], ro[sel.i], co[sel.j - 1], co[sel.j]);
  }
  switch (*sel.aggregate) {
    case Aggregate::Whole: return part.matrix;
    case Aggregate::NonSec: return part.matrix.block(ro[0], ro[2], 0, all_cols);
    case Aggregate::Sec: return part.matrix.block(ro[2], ro[3], 0, all_cols);
    case Aggregate::Sk: return part.matrix.block(ro[1], ro[2], 0, all_cols);
    case Aggregate::T: return part.matrix.block(ro[0], ro[1], 0, all_cols);
  }
  throw IncidenceError(IncidenceError::Kind::InvalidSelector, "unknown aggregate");
}

bool SRelationReport::ok() const {
  return column_sum_zero && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
}

SRelationReport check_S_A_relations(const PartitionedIncidence& a, const PartitionedIncidence& s, unsigned threads) {
  std::vector<std::pair<BlockSelector, BlockSelector>> pairs;
  auto add = [&](BlockSelector sa) {
    BlockSelector ss = sa;
    ss.part = IncidenceKind::S;
    pairs.emplace_back(sa, ss);
  };
  add(BlockSelector::group(IncidenceKind::A, Aggregate::Whole));
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) add(BlockSelector::cell(IncidenceKind::A, i, j));
  }
  add(BlockSelector::group(IncidenceKind::A, Aggregate::NonSec));
  add(BlockSelector::group(IncidenceKind::A, Aggregate::Sec));
  add(BlockSelector::group(IncidenceKind::A, Aggregate::Sk));

  SRelationReport report;
  report.checks.resize(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto& [sa, ss] = pairs[k];
    RelationCheck& c = report.checks[k];
    c.name = ss.name() + " vs " + sa.name();
    c.rank_a = rank(get_block(a, sa)).rank;
    c.rank_s = rank(get_block(s, ss)).rank;
    const bool skew_absolute = !sa.aggregate && sa.i == 2 && sa.j == 1;
    c.ok = skew_absolute ? (c.rank_s == 1 && c.rank_a == 0) : (c.rank_s == c.rank_a);
  });

  const Field& pf = s.matrix.field();
  report.column_sum_zero = true;
  for (std::size_t r = 0; r < s.matrix.rows() && report.column_sum_zero; ++r) {
    Elem acc = 0;
    for (Elem v : s.matrix.row(r)) acc = pf.add(acc, v);
    report.column_sum_zero = acc == 0;
  }
  return report;
}

}  // namespace conicrank
