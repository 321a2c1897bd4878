#pragma once

#include <map>
#include <vector>

#include "ncproj/util.hpp"

namespace ncproj {

// Incremental reduced row echelon span over the rationals. Column 0 is the
// first monomial in canonical order, and pivots always take the earliest
// nonzero column, so reduction is deterministic.
class LinSpan {
public:
  explicit LinSpan(int ncols) : ncols_(ncols) {}

  int ncols() const { return ncols_; }
  int rank() const { return (int)rows_.size(); }

  // Reduces v against the current rows (no insertion).
  std::vector<Rat> reduce(std::vector<Rat> v) const {
    for (auto& [p, row] : rows_) {
      if (v[p] == 0) continue;
      Rat c = v[p];
      for (int j = p; j < ncols_; ++j)
        if (row[j] != 0) v[j] -= c * row[j];
    }
    return v;
  }

  bool contains(const std::vector<Rat>& v) const {
    for (auto& x : reduce(v))
      if (x != 0) return false;
    return true;
  }

  // Returns true if v enlarged the span.
  bool insert(std::vector<Rat> v) {
    require_internal((int)v.size() == ncols_, "row width mismatch");
    v = reduce(std::move(v));
    int p = -1;
    for (int j = 0; j < ncols_; ++j)
      if (v[j] != 0) { p = j; break; }
    if (p < 0) return false;
    Rat inv = Rat(1) / v[p];
    for (int j = p; j < ncols_; ++j)
      if (v[j] != 0) v[j] *= inv;
    // Back-eliminate so stored rows stay fully reduced.
    for (auto& [pp, row] : rows_) {
      if (row[p] == 0) continue;
      Rat c = row[p];
      for (int j = p; j < ncols_; ++j)
        if (v[j] != 0) row[j] -= c * v[j];
    }
    rows_.emplace(p, std::move(v));
    return true;
  }

  const std::map<int, std::vector<Rat>>& rows() const { return rows_; }

  bool same_span(const LinSpan& o) const {
    if (ncols_ != o.ncols_ || rank() != o.rank()) return false;
    for (auto& [p, row] : rows_)
      if (!o.contains(row)) return false;
    return true;
  }

private:
  int ncols_;
  std::map<int, std::vector<Rat>> rows_;  // pivot column -> reduced row
};

// Nullspace basis of the linear map rows x : columns of A (A given by rows),
// i.e. all v with sum_i v_i * A_i = 0. Used for coordinate-subspace
// intersections. Returns vectors in the row-index space.
inline std::vector<std::vector<Rat>> left_nullspace(const std::vector<std::vector<Rat>>& rows,
                                                    int ncols) {
  int m = (int)rows.size();
  // Augment each row with an identity tail tracking the combination.
  LinSpan span(ncols + m);
  std::vector<std::vector<Rat>> combos;
  for (int i = 0; i < m; ++i) {
    std::vector<Rat> v(ncols + m, Rat(0));
    for (int j = 0; j < ncols; ++j) v[j] = rows[i][j];
    v[ncols + i] = 1;
    // Reduce only on the leading block: rows whose pivot is in the tail are
    // exactly the nullspace combinations.
    v = span.reduce(std::move(v));
    int p = -1;
    for (int j = 0; j < ncols + m; ++j)
      if (v[j] != 0) { p = j; break; }
    if (p < 0) continue;
    if (p >= ncols) {
      combos.push_back(std::vector<Rat>(v.begin() + ncols, v.end()));
      continue;
    }
    Rat inv = Rat(1) / v[p];
    for (auto& x : v) x *= inv;
    span.insert(std::move(v));
  }
  return combos;
}

}  // namespace ncproj
