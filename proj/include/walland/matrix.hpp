#pragma once

#include <cstddef>
#include <vector>

#include "walland/rational.hpp"

namespace walland {

/// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<Rational> &entries() const { return a_; }

  bool is_zero() const;
  Rational trace() const;
  Matrix transpose() const;

  friend Matrix operator+(const Matrix &a, const Matrix &b);
  friend Matrix operator-(const Matrix &a, const Matrix &b);
  friend Matrix operator*(const Matrix &a, const Matrix &b);
  friend Matrix operator*(const Rational &k, const Matrix &a);
  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Reduced row echelon form; pivot columns are returned through `pivots`.
Matrix rref(Matrix m, std::vector<std::size_t> *pivots = nullptr);

std::size_t rank(const Matrix &m);

/// Columns form a basis of the null space.
Matrix kernel_basis(const Matrix &m);

/// Solves m x = b; returns false when there is no solution.
bool solve(const Matrix &m, const std::vector<Rational> &b, std::vector<Rational> *x);

/// Horizontal concatenation [a | b]; row counts must agree.
Matrix hcat(const Matrix &a, const Matrix &b);

}  // namespace walland
