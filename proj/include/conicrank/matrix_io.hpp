#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include "conicrank/dense_matrix.hpp"

namespace conicrank {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header row "label,<col labels...>", then one "<row label>,v,v,..." line
/// per row. Entries are element indices (0/1 for incidence matrices).
void write_dense_csv(std::ostream& os, const DenseMatrix& m);
DenseMatrix read_dense_csv(std::istream& is, std::shared_ptr<const Field> field);

/// alist: "N M" (columns, rows), max column and row degrees, the column
/// degrees, the row degrees, then 1-based row indices per column and
/// 1-based column indices per row. Lists are not zero padded.
void write_alist(std::ostream& os, const DenseMatrix& m);
DenseMatrix read_alist(std::istream& is, std::shared_ptr<const Field> field);

struct MatrixMetadata {
  std::size_t q = 0;
  unsigned p = 0;
  unsigned e = 0;
  std::string modulus;
  std::string block;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::optional<std::size_t> rank;
};

void write_metadata_json(std::ostream& os, const MatrixMetadata& meta);

}  // namespace conicrank
