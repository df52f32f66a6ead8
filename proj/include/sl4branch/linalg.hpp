#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "sl4branch/matrix4.hpp"

namespace sl4branch {

using Vec = std::vector<Gaussian>;

/// Dense matrix over Q(i) with exact Gauss-Jordan elimination.  Sizes in
/// this library stay tiny; the largest case is the 136-column
/// enveloping-algebra degree bound.
class DenseMat {
public:
  DenseMat(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static DenseMat from_rows(const std::vector<Vec>& rows) {
    size_t nc = rows.empty() ? 0 : rows.front().size();
    DenseMat m(rows.size(), nc);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < nc; ++j) m.at(i, j) = rows[i][j];
    return m;
  }

  static DenseMat from_columns(const std::vector<Vec>& cols) {
    size_t nr = cols.empty() ? 0 : cols.front().size();
    DenseMat m(nr, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
      for (size_t i = 0; i < nr; ++i) m.at(i, j) = cols[j][i];
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Gaussian& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Gaussian& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<size_t> rref() {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
      size_t p = row;
      while (p < rows_ && at(p, col).is_zero()) ++p;
      if (p == rows_) continue;
      if (p != row)
        for (size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(row, j));
      Gaussian inv = Gaussian(1) / at(row, col);
      for (size_t j = col; j < cols_; ++j) at(row, j) = inv * at(row, j);
      for (size_t i = 0; i < rows_; ++i) {
        if (i == row || at(i, col).is_zero()) continue;
        Gaussian f = at(i, col);
        for (size_t j = col; j < cols_; ++j)
          at(i, j) = at(i, j) - f * at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  size_t rank() const {
    DenseMat m = *this;
    return m.rref().size();
  }

  /// Basis of the right null space of this matrix (solutions of A x = 0).
  std::vector<Vec> kernel() const {
    DenseMat m = *this;
    std::vector<size_t> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      Vec v(cols_);
      v[free] = Gaussian(1);
      for (size_t r = 0; r < pivots.size(); ++r)
        v[pivots[r]] = -m.at(r, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// One solution of A x = b, if any.
  std::optional<Vec> solve(const Vec& b) const {
    DenseMat aug(rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[i];
    }
    std::vector<size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    Vec x(cols_);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
  }

private:
  size_t rows_;
  size_t cols_;
  std::vector<Gaussian> a_;
};

inline Vec flatten(const Mat4& m) {
  Vec v(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v[static_cast<size_t>(4 * i + j)] = m.at(i, j);
  return v;
}

inline Mat4 unflatten(const Vec& v) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = v[static_cast<size_t>(4 * i + j)];
  return m;
}

/// Linear combination sum_k coeffs[k] * basis[k].
inline Mat4 combine(const std::vector<Mat4>& basis, const Vec& coeffs) {
  Mat4 m;
  for (size_t k = 0; k < basis.size(); ++k) m = m + coeffs[k] * basis[k];
  return m;
}

/// Rescale so all entries are Gaussian integers with content 1 and the
/// first nonzero entry has positive leading part.
inline Vec primitive_scale(const Vec& v) {
  long long l = 1;
  for (const auto& z : v) {
    l = std::lcm(l, z.re().den());
    l = std::lcm(l, z.im().den());
  }
  long long g = 0;
  for (const auto& z : v) {
    g = std::gcd(g, (z.re() * Rational(l)).num());
    g = std::gcd(g, (z.im() * Rational(l)).num());
  }
  if (g == 0) return v;
  Gaussian s(Rational(l, g));
  Vec out(v.size());
  for (size_t k = 0; k < v.size(); ++k) out[k] = s * v[k];
  for (const auto& z : out) {
    if (z.is_zero()) continue;
    const Rational& lead = z.re().is_zero() ? z.im() : z.re();
    if (lead.sign() < 0)
      for (auto& w : out) w = -w;
    break;
  }
  return out;
}

inline size_t span_dim(const std::vector<Mat4>& span) {
  std::vector<Vec> rows;
  rows.reserve(span.size());
  for (const auto& m : span) rows.push_back(flatten(m));
  return DenseMat::from_rows(rows).rank();
}

/// Coordinates of m in the given basis, if m lies in its span.
inline std::optional<Vec> coordinates_in(const std::vector<Mat4>& basis,
                                         const Mat4& m) {
  std::vector<Vec> cols;
  cols.reserve(basis.size());
  for (const auto& b : basis) cols.push_back(flatten(b));
  return DenseMat::from_columns(cols).solve(flatten(m));
}

inline bool in_span(const std::vector<Mat4>& basis, const Mat4& m) {
  return coordinates_in(basis, m).has_value();
}

/// Canonical reduced basis of the span (rref rows, primitively scaled).
inline std::vector<Mat4> reduce_span(const std::vector<Mat4>& span) {
  std::vector<Vec> rows;
  rows.reserve(span.size());
  for (const auto& m : span) rows.push_back(flatten(m));
  DenseMat mat = DenseMat::from_rows(rows);
  std::vector<size_t> pivots = mat.rref();
  std::vector<Mat4> out;
  for (size_t r = 0; r < pivots.size(); ++r) {
    Vec v(16);
    for (size_t j = 0; j < 16; ++j) v[j] = mat.at(r, j);
    out.push_back(unflatten(primitive_scale(v)));
  }
  return out;
}

inline bool same_span(const std::vector<Mat4>& a, const std::vector<Mat4>& b) {
  return reduce_span(a) == reduce_span(b);
}

/// Basis of span(a) intersected with span(b).
inline std::vector<Mat4> intersect_spans(const std::vector<Mat4>& a,
                                         const std::vector<Mat4>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Vec> cols;
  cols.reserve(a.size() + b.size());
  for (const auto& m : a) cols.push_back(flatten(m));
  for (const auto& m : b) {
    Vec v = flatten(m);
    for (auto& z : v) z = -z;
    cols.push_back(std::move(v));
  }
  std::vector<Mat4> raw;
  for (const Vec& k : DenseMat::from_columns(cols).kernel()) {
    Vec ca(k.begin(), k.begin() + static_cast<long>(a.size()));
    raw.push_back(combine(a, ca));
  }
  return reduce_span(raw);
}

inline std::vector<Mat4> sum_spans(const std::vector<Mat4>& a,
                                   const std::vector<Mat4>& b) {
  std::vector<Mat4> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return reduce_span(all);
}

}  // namespace sl4branch
