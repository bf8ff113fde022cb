#include "conicrank/dense_matrix.hpp"

#include <algorithm>
#include <utility>

namespace conicrank {

namespace {

struct PrimeOps {
  std::uint64_t p;
  Elem inv_of(const Field& f, Elem a) const { return f.inv(a); }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t{a} * b) % p); }
  // a - f*b
  Elem axpy(Elem a, Elem factor, Elem b) const {
    return static_cast<Elem>((a + (p - (std::uint64_t{factor} * b) % p)) % p);
  }
};

struct GeneralOps {
  const Field* f;
  Elem inv_of(const Field& fld, Elem a) const { return fld.inv(a); }
  Elem mul(Elem a, Elem b) const { return f->mul(a, b); }
  Elem axpy(Elem a, Elem factor, Elem b) const { return f->sub(a, f->mul(factor, b)); }
};

// Row-echelon reduction in place. With `full`, entries above each pivot are
// cleared as well (reduced form).
template <class Ops>
std::vector<std::size_t> eliminate(const Field& field, const Ops& ops, std::vector<Elem>& a, std::size_t rows,
                                   std::size_t cols, bool full) {
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < cols && prow < rows; ++col) {
    std::size_t found = rows;
    for (std::size_t r = prow; r < rows; ++r) {
      if (a[r * cols + col] != 0) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    Elem* pivot = a.data() + prow * cols;
    if (found != prow) std::swap_ranges(pivot, pivot + cols, a.data() + found * cols);

    const Elem scale = ops.inv_of(field, pivot[col]);
    support.clear();
    for (std::size_t c = col; c < cols; ++c) {
      if (pivot[c] != 0) {
        pivot[c] = ops.mul(pivot[c], scale);
        support.push_back(c);
      }
    }
    const std::size_t start = full ? 0 : prow + 1;
    for (std::size_t r = start; r < rows; ++r) {
      if (r == prow) continue;
      Elem* target = a.data() + r * cols;
      const Elem factor = target[col];
      if (factor == 0) continue;
      for (std::size_t c : support) target[c] = ops.axpy(target[c], factor, pivot[c]);
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

std::vector<std::size_t> eliminate(const Field& field, std::vector<Elem>& a, std::size_t rows, std::size_t cols,
                                   bool full) {
  if (field.is_prime_field()) return eliminate(field, PrimeOps{field.characteristic()}, a, rows, cols, full);
  return eliminate(field, GeneralOps{&field}, a, rows, cols, full);
}

std::vector<std::string> pick(const std::vector<std::string>& labels, std::span<const std::size_t> idx) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(labels[i]);
  return out;
}

}  // namespace

DenseMatrix::DenseMatrix(std::shared_ptr<const Field> field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)),
      rows_(rows),
      cols_(cols),
      data_(rows * cols, 0),
      row_labels_(rows),
      col_labels_(cols) {}

void DenseMatrix::set_row_labels(std::vector<std::string> labels) {
  if (labels.size() != rows_) throw LinalgError(LinalgError::Kind::DimensionMismatch, "row label count mismatch");
  row_labels_ = std::move(labels);
}

void DenseMatrix::set_col_labels(std::vector<std::string> labels) {
  if (labels.size() != cols_) throw LinalgError(LinalgError::Kind::DimensionMismatch, "column label count mismatch");
  col_labels_ = std::move(labels);
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  t.row_labels_ = col_labels_;
  t.col_labels_ = row_labels_;
  return t;
}

DenseMatrix DenseMatrix::submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  DenseMatrix s(field_, row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (std::size_t j = 0; j < col_idx.size(); ++j) s(i, j) = (*this)(row_idx[i], col_idx[j]);
  }
  s.row_labels_ = pick(row_labels_, row_idx);
  s.col_labels_ = pick(col_labels_, col_idx);
  return s;
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  if (r0 > r1 || r1 > rows_ || c0 > c1 || c1 > cols_) {
    throw LinalgError(LinalgError::Kind::DimensionMismatch, "block range out of bounds");
  }
  DenseMatrix s(field_, r1 - r0, c1 - c0);
  for (std::size_t r = r0; r < r1; ++r) {
    std::copy(data_.begin() + r * cols_ + c0, data_.begin() + r * cols_ + c1, s.data_.begin() + (r - r0) * s.cols_);
  }
  s.row_labels_.assign(row_labels_.begin() + r0, row_labels_.begin() + r1);
  s.col_labels_.assign(col_labels_.begin() + c0, col_labels_.begin() + c1);
  return s;
}

DenseMatrix DenseMatrix::embed(std::shared_ptr<const Field> target) const {
  if (target->characteristic() != field_->characteristic()) {
    throw LinalgError(LinalgError::Kind::FieldMismatch, "embedding requires equal characteristic");
  }
  for (Elem v : data_) {
    if (v >= field_->characteristic()) {
      throw LinalgError(LinalgError::Kind::FieldMismatch, "entry outside the prime subfield");
    }
  }
  DenseMatrix out(std::move(target), rows_, cols_);
  out.data_ = data_;  // prime subfield elements share their encoding in every GF(p^e)
  out.row_labels_ = row_labels_;
  out.col_labels_ = col_labels_;
  return out;
}

bool DenseMatrix::operator==(const DenseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_->order() == o.field_->order() && data_ == o.data_;
}

RankResult rank(const DenseMatrix& m) {
  std::vector<Elem> work(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) std::copy(m.row(r).begin(), m.row(r).end(), work.begin() + r * m.cols());
  RankResult res;
  res.pivot_columns = eliminate(m.field(), work, m.rows(), m.cols(), false);
  res.rank = res.pivot_columns.size();
  return res;
}

RrefResult rref_and_kernel(const DenseMatrix& m) {
  DenseMatrix reduced = m;
  std::vector<Elem> work(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) std::copy(m.row(r).begin(), m.row(r).end(), work.begin() + r * m.cols());
  auto pivots = eliminate(m.field(), work, m.rows(), m.cols(), true);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::copy(work.begin() + r * m.cols(), work.begin() + (r + 1) * m.cols(), reduced.row(r).begin());
  }

  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> kernel;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(reduced(i, free));
    kernel.push_back(std::move(v));
  }
  return {std::move(reduced), std::move(pivots), std::move(kernel)};
}

std::vector<Elem> multiply(const DenseMatrix& m, std::span<const Elem> v) {
  if (v.size() != m.cols()) throw LinalgError(LinalgError::Kind::DimensionMismatch, "vector length mismatch");
  const Field& f = m.field();
  std::vector<Elem> out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Elem acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc = f.add(acc, f.mul(m(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

bool is_binary(const DenseMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (Elem v : m.row(r)) {
      if (v > 1) return false;
    }
  }
  return true;
}

StructureProbe structure_probe(const DenseMatrix& m) {
  if (!is_binary(m)) throw LinalgError(LinalgError::Kind::NonBinaryEntries, "structure probe needs a 0/1 matrix");
  StructureProbe probe;
  probe.row_sums.assign(m.rows(), 0);
  probe.col_sums.assign(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) {
        ++probe.row_sums[r];
        ++probe.col_sums[c];
      }
    }
  }
  auto all_equal = [](const std::vector<std::size_t>& v, std::size_t x) {
    return std::all_of(v.begin(), v.end(), [x](std::size_t s) { return s == x; });
  };
  probe.is_zero = all_equal(probe.row_sums, 0);
  probe.is_permutation = m.rows() == m.cols() && all_equal(probe.row_sums, 1) && all_equal(probe.col_sums, 1);
  return probe;
}

}  // namespace conicrank
