#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conicrank/dense_matrix.hpp"
#include "conicrank/plane_geometry.hpp"

namespace conicrank {

class IncidenceError : public std::runtime_error {
 public:
  enum class Kind { SizeGuardExceeded, InvalidSelector };
  IncidenceError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

inline constexpr unsigned kDefaultSizeGuard = 9;
inline constexpr unsigned kMaxSizeGuard = 13;

enum class IncidenceKind { A, S };

/// A or S with its 3x3 partition. Row groups are (tangent, skew, secant) and
/// column groups (absolute, internal, external); for S the groups are the
/// square classes (zero, nonsquare, square) of the respective discriminant.
struct PartitionedIncidence {
  IncidenceKind kind;
  DenseMatrix matrix;  // over GF(p), entries 0/1
  std::array<std::size_t, 4> row_offsets;
  std::array<std::size_t, 4> col_offsets;
  std::vector<Triple> row_vectors;
  std::vector<Triple> col_vectors;
};

enum class Aggregate { Whole, NonSec, Sec, Sk, T };

struct BlockSelector {
  IncidenceKind part = IncidenceKind::A;
  std::optional<Aggregate> aggregate;  // set for aggregates, otherwise (i, j) is used
  int i = 1;
  int j = 1;

  static BlockSelector cell(IncidenceKind part, int i, int j);
  static BlockSelector group(IncidenceKind part, Aggregate agg);
  /// Accepts "A", "S", "A13", "S_21", "Anonsec", "Asec", "A_sk", "ST", ...
  static BlockSelector parse(const std::string& text);
  std::string name() const;
};

PartitionedIncidence build_A(const Plane& plane);
/// Throws IncidenceError(SizeGuardExceeded) when q > size_guard.
PartitionedIncidence build_S(const Field& field, unsigned size_guard = kDefaultSizeGuard);

DenseMatrix get_block(const PartitionedIncidence& part, const BlockSelector& sel);

struct RelationCheck {
  std::string name;
  std::size_t rank_s = 0;
  std::size_t rank_a = 0;
  bool ok = false;
};

struct SRelationReport {
  std::vector<RelationCheck> checks;
  bool column_sum_zero = false;
  bool ok() const;
};

/// rank(S_X) against rank(A_X) for the whole matrix, every cell, and the
/// nonsec/sec/sk aggregates. Cell (2,1) is expected to give 1 versus 0.
SRelationReport check_S_A_relations(const PartitionedIncidence& a, const PartitionedIncidence& s,
                                    unsigned threads = 1);

}  // namespace conicrank
