#include "conicrank/matrix_io.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace conicrank {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Elem parse_entry(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size()) throw FormatError("bad matrix entry '" + s + "'");
    return static_cast<Elem>(v);
  } catch (const std::logic_error&) {
    throw FormatError("bad matrix entry '" + s + "'");
  }
}

void write_list(std::ostream& os, const std::vector<std::size_t>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  os << '\n';
}

std::vector<std::size_t> read_numbers(std::istream& is, std::size_t count) {
  std::vector<std::size_t> out(count);
  for (auto& x : out) {
    if (!(is >> x)) throw FormatError("truncated alist");
  }
  return out;
}

}  // namespace

void write_dense_csv(std::ostream& os, const DenseMatrix& m) {
  os << "label";
  for (const auto& l : m.col_labels()) os << ',' << l;
  os << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << m.row_labels()[r];
    for (Elem v : m.row(r)) os << ',' << v;
    os << '\n';
  }
}

DenseMatrix read_dense_csv(std::istream& is, std::shared_ptr<const Field> field) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty CSV");
  auto header = split_commas(line);
  if (header.empty() || header.front() != "label") throw FormatError("CSV header must start with 'label'");
  std::vector<std::string> col_labels(header.begin() + 1, header.end());

  std::vector<std::string> row_labels;
  std::vector<Elem> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split_commas(line);
    if (cells.size() != col_labels.size() + 1) throw FormatError("ragged CSV row '" + cells.front() + "'");
    row_labels.push_back(cells.front());
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const Elem v = parse_entry(cells[c]);
      if (!field->contains(v)) throw FormatError("entry " + cells[c] + " is not a field element");
      values.push_back(v);
    }
  }
  DenseMatrix m(std::move(field), row_labels.size(), col_labels.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::copy(values.begin() + r * m.cols(), values.begin() + (r + 1) * m.cols(), m.row(r).begin());
  }
  m.set_row_labels(std::move(row_labels));
  m.set_col_labels(std::move(col_labels));
  return m;
}

void write_alist(std::ostream& os, const DenseMatrix& m) {
  if (!is_binary(m)) throw LinalgError(LinalgError::Kind::NonBinaryEntries, "alist export needs a 0/1 matrix");
  std::vector<std::vector<std::size_t>> by_col(m.cols());
  std::vector<std::vector<std::size_t>> by_row(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) {
        by_col[c].push_back(r + 1);
        by_row[r].push_back(c + 1);
      }
    }
  }
  std::vector<std::size_t> col_deg, row_deg;
  for (const auto& v : by_col) col_deg.push_back(v.size());
  for (const auto& v : by_row) row_deg.push_back(v.size());
  const std::size_t max_col = col_deg.empty() ? 0 : *std::max_element(col_deg.begin(), col_deg.end());
  const std::size_t max_row = row_deg.empty() ? 0 : *std::max_element(row_deg.begin(), row_deg.end());

  os << m.cols() << ' ' << m.rows() << '\n' << max_col << ' ' << max_row << '\n';
  write_list(os, col_deg);
  write_list(os, row_deg);
  for (const auto& v : by_col) write_list(os, v);
  for (const auto& v : by_row) write_list(os, v);
}

DenseMatrix read_alist(std::istream& is, std::shared_ptr<const Field> field) {
  std::size_t n = 0, rows = 0, max_col = 0, max_row = 0;
  if (!(is >> n >> rows >> max_col >> max_row)) throw FormatError("bad alist header");
  const auto col_deg = read_numbers(is, n);
  const auto row_deg = read_numbers(is, rows);
  DenseMatrix m(std::move(field), rows, n);
  for (std::size_t c = 0; c < n; ++c) {
    if (col_deg[c] > max_col) throw FormatError("column degree exceeds declared maximum");
    for (std::size_t r : read_numbers(is, col_deg[c])) {
      if (r == 0 || r > rows) throw FormatError("row index out of range");
      m(r - 1, c) = 1;
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_deg[r] > max_row) throw FormatError("row degree exceeds declared maximum");
    for (std::size_t c : read_numbers(is, row_deg[r])) {
      if (c == 0 || c > n || m(r, c - 1) != 1) throw FormatError("row list disagrees with column lists");
    }
  }
  return m;
}

void write_metadata_json(std::ostream& os, const MatrixMetadata& meta) {
  nlohmann::ordered_json j;
  j["q"] = meta.q;
  j["p"] = meta.p;
  j["e"] = meta.e;
  j["modulus"] = meta.modulus;
  j["block"] = meta.block;
  j["rows"] = meta.rows;
  j["cols"] = meta.cols;
  if (meta.rank) {
    j["rank"] = *meta.rank;
  } else {
    j["rank"] = nullptr;
  }
  os << j.dump(2) << '\n';
}

}  // namespace conicrank
