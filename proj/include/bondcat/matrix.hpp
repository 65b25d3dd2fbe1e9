#pragma once

#include <cassert>
#include <cstddef>
#include <string>
#include <vector>

#include "bondcat/errors.hpp"
#include "bondcat/fields.hpp"

namespace bondcat {

/// Dense row-major matrix over an exact field. Zero-row and zero-column
/// shapes are first-class citizens: empty Bondarenko bands are everywhere.
template <Scalar K>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, K(0)) {}
  Mat(std::size_t rows, std::size_t cols, std::vector<K> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw DimensionMismatch("entry count != rows*cols");
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty_shape() const { return rows_ == 0 || cols_ == 0; }

  K& at(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return e_[i * cols_ + j];
  }
  const K& at(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return e_[i * cols_ + j];
  }

  bool is_zero() const {
    for (const K& x : e_)
      if (!bondcat::is_zero(x)) return false;
    return true;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_)
      throw DimensionMismatch("matrix product " + shape_str() + " * " + o.shape_str());
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const K& a = at(i, k);
        if (bondcat::is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    require_same_shape(o, "sum");
    Mat r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    require_same_shape(o, "difference");
    Mat r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
    return r;
  }
  Mat operator-() const {
    Mat r = *this;
    for (K& x : r.e_) x = -x;
    return r;
  }
  Mat scaled(const K& c) const {
    Mat r = *this;
    for (K& x : r.e_) x = x * c;
    return r;
  }

  /// Copies `src` into this matrix with its top-left corner at (r0, c0).
  void paste(std::size_t r0, std::size_t c0, const Mat& src) {
    if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
      throw DimensionMismatch("paste out of range");
    for (std::size_t i = 0; i < src.rows_; ++i)
      for (std::size_t j = 0; j < src.cols_; ++j) at(r0 + i, c0 + j) = src.at(i, j);
  }

  Mat submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("submatrix out of range");
    Mat r(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
    return r;
  }

  bool operator==(const Mat&) const = default;

  std::string shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + scalar_to_string(at(i, j));
    }
    return s + "]";
  }

 private:
  void require_same_shape(const Mat& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch(std::string("matrix ") + op + " " + shape_str() + " vs " +
                              o.shape_str());
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> e_;
};

/// mat_mul by name, for symmetry with the rest of the operation surface.
template <Scalar K>
Mat<K> mat_mul(const Mat<K>& a, const Mat<K>& b) {
  return a * b;
}

}  // namespace bondcat
