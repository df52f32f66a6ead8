#pragma once

#include <array>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include "sl4branch/gaussian.hpp"

namespace sl4branch {

/// Exact 4x4 matrix over Q(i).  Value type; all operations allocate-free
/// and exact.
class Mat4 {
public:
  Mat4() = default;

  static Mat4 zero() { return Mat4(); }

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m.at(i, i) = Gaussian(1);
    return m;
  }

  /// Integer matrix from row-major entries.
  static Mat4 from_rows(const std::array<std::array<long long, 4>, 4>& rows) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = Gaussian(rows[i][j]);
    return m;
  }

  Gaussian& at(int i, int j) { return a_[static_cast<size_t>(4 * i + j)]; }
  const Gaussian& at(int i, int j) const { return a_[static_cast<size_t>(4 * i + j)]; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!v.is_zero()) return false;
    return true;
  }

  Gaussian trace() const { return at(0, 0) + at(1, 1) + at(2, 2) + at(3, 3); }

  Mat4 transpose() const {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = at(j, i);
    return m;
  }

  Mat4 operator-() const {
    Mat4 m;
    for (size_t k = 0; k < 16; ++k) m.a_[k] = -a_[k];
    return m;
  }

  friend Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 m;
    for (size_t k = 0; k < 16; ++k) m.a_[k] = a.a_[k] + b.a_[k];
    return m;
  }
  friend Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 m;
    for (size_t k = 0; k < 16; ++k) m.a_[k] = a.a_[k] - b.a_[k];
    return m;
  }
  friend Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Gaussian s;
        for (int k = 0; k < 4; ++k) s += a.at(i, k) * b.at(k, j);
        m.at(i, j) = s;
      }
    return m;
  }
  friend Mat4 operator*(const Gaussian& c, const Mat4& a) {
    Mat4 m;
    for (size_t k = 0; k < 16; ++k) m.a_[k] = c * a.a_[k];
    return m;
  }

  friend bool operator==(const Mat4& a, const Mat4& b) { return a.a_ == b.a_; }
  friend bool operator!=(const Mat4& a, const Mat4& b) { return !(a == b); }

  /// Lie bracket [a, b] = ab - ba.
  static Mat4 bracket(const Mat4& a, const Mat4& b) { return a * b - b * a; }

  std::string str() const {
    std::ostringstream os;
    for (int i = 0; i < 4; ++i) {
      os << "[";
      for (int j = 0; j < 4; ++j) os << (j ? " " : "") << at(i, j).str();
      os << "]";
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Mat4& m) {
    return os << m.str();
  }

private:
  std::array<Gaussian, 16> a_{};
};

}  // namespace sl4branch
