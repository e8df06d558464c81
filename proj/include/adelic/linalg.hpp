#pragma once

#include <optional>
#include <vector>

#include "adelic/scalar.hpp"

namespace adelic {

using Matrix = std::vector<std::vector<Scalar>>;  // row-major, rectangular

// Gauss-Jordan over a field. Returns reduced row echelon form in place and
// the pivot column of each row.
inline std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Scalar inv = m[r][c].inverse();
    for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar factor = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - factor * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

// solve A x = b (A given column-major as a list of columns); empty when
// inconsistent. Free variables are set to zero.
inline std::optional<std::vector<Scalar>> solve_columns(const std::vector<std::vector<Scalar>>& cols,
                                                        const std::vector<Scalar>& b,
                                                        const RingPtr& ring) {
  size_t n = cols.size(), rows = b.size();
  Matrix m(rows, std::vector<Scalar>(n + 1, ring->zero()));
  for (size_t j = 0; j < n; ++j) {
    if (cols[j].size() != rows) fail(Err::Internal, "ragged column in linear solve");
    for (size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  }
  for (size_t i = 0; i < rows; ++i) m[i][n] = b[i];
  auto pivots = rref(m);
  for (size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] == static_cast<int>(n)) return std::nullopt;  // inconsistent
  std::vector<Scalar> x(n, ring->zero());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][n];
  return x;
}

}  // namespace adelic
