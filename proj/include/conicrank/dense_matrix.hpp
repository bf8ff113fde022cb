#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conicrank/finite_field.hpp"

namespace conicrank {

class LinalgError : public std::runtime_error {
 public:
  enum class Kind { NonBinaryEntries, DimensionMismatch, FieldMismatch };
  LinalgError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Row-major matrix of raw element indices over a single field, carrying
/// opaque row and column labels.
class DenseMatrix {
 public:
  DenseMatrix(std::shared_ptr<const Field> field, std::size_t rows, std::size_t cols);

  const Field& field() const noexcept { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }
  void set_row_labels(std::vector<std::string> labels);
  void set_col_labels(std::vector<std::string> labels);

  DenseMatrix transpose() const;
  DenseMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  /// Rows [r0, r1) x columns [c0, c1).
  DenseMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
  /// Same entries viewed in another field; every entry must lie in the prime subfield.
  DenseMatrix embed(std::shared_ptr<const Field> target) const;

  bool operator==(const DenseMatrix& o) const;

 private:
  std::shared_ptr<const Field> field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

struct RankResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Forward elimination; the pivot in each column is the lowest-indexed row
/// with a nonzero entry there.
RankResult rank(const DenseMatrix& m);

struct RrefResult {
  DenseMatrix rref;
  std::vector<std::size_t> pivot_columns;
  /// Basis of {v : M v = 0}, one vector per free column.
  std::vector<std::vector<Elem>> kernel;
};

RrefResult rref_and_kernel(const DenseMatrix& m);

std::vector<Elem> multiply(const DenseMatrix& m, std::span<const Elem> v);

struct StructureProbe {
  bool is_zero = false;
  bool is_permutation = false;
  std::vector<std::size_t> row_sums;
  std::vector<std::size_t> col_sums;
};

/// Throws LinalgError(NonBinaryEntries) unless every entry is 0 or 1.
StructureProbe structure_probe(const DenseMatrix& m);

bool is_binary(const DenseMatrix& m);

}  // namespace conicrank
