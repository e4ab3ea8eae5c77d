#pragma once

// Dense exact linear algebra over a coefficient field from poly.hpp.

#include <cstddef>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace boroczky {

template <class D>
using Matrix = std::vector<std::vector<typename D::value_type>>;

/// Reduced row echelon form in place; returns the pivot columns.
template <class D>
std::vector<std::size_t> rref(const D& dom, Matrix<D>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && dom.is_zero(m[sel][col])) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    auto inv = dom.inv(m[row][col]);
    for (std::size_t j = col; j < cols; ++j) m[row][j] = dom.mul(m[row][j], inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || dom.is_zero(m[i][col])) continue;
      auto factor = m[i][col];
      for (std::size_t j = col; j < cols; ++j)
        if (!dom.is_zero(m[row][j])) m[i][j] = dom.sub(m[i][j], dom.mul(factor, m[row][j]));
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

/// Basis of the right kernel, one vector per free column, in the canonical
/// echelon normalization (free coordinate 1, other free coordinates 0).
template <class D>
Matrix<D> kernel(const D& dom, Matrix<D> m, std::size_t cols) {
  auto pivots = rref(dom, m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix<D> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename D::value_type> v(cols, dom.zero());
    v[free] = dom.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = dom.neg(m[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class D>
std::size_t rank(const D& dom, Matrix<D> m, std::size_t cols) {
  return rref(dom, m, cols).size();
}

/// Row space grown one vector at a time; rows are kept monic at their pivot.
template <class D>
class Echelon {
 public:
  using V = typename D::value_type;

  Echelon(D dom, std::size_t cols) : dom_(std::move(dom)), cols_(cols) {}

  std::size_t rank() const { return rows_.size(); }

  /// Residue of v after eliminating the current pivots.
  std::vector<V> reduce(std::vector<V> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::size_t p = pivots_[r];
      if (dom_.is_zero(v[p])) continue;
      V factor = v[p];
      for (std::size_t j = p; j < cols_; ++j)
        if (!dom_.is_zero(rows_[r][j])) v[j] = dom_.sub(v[j], dom_.mul(factor, rows_[r][j]));
    }
    return v;
  }

  bool contains(const std::vector<V>& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (!dom_.is_zero(x)) return false;
    return true;
  }

  /// Adds v; returns false if it was already in the span.
  bool insert(std::vector<V> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < cols_ && dom_.is_zero(v[p])) ++p;
    if (p == cols_) return false;
    V inv = dom_.inv(v[p]);
    for (std::size_t j = p; j < cols_; ++j) v[j] = dom_.mul(v[j], inv);
    // Keep earlier rows free of the new pivot so reduce() stays one pass.
    for (auto& row : rows_) {
      if (dom_.is_zero(row[p])) continue;
      V factor = row[p];
      for (std::size_t j = p; j < cols_; ++j)
        if (!dom_.is_zero(v[j])) row[j] = dom_.sub(row[j], dom_.mul(factor, v[j]));
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  D dom_;
  std::size_t cols_;
  Matrix<D> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace boroczky
