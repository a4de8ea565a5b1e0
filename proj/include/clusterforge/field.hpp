#pragma once

// Linear algebra over a prime field F_p, or over Q when p == 0.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "clusterforge/zlinalg.hpp"

namespace clusterforge {

class Field {
 public:
  /// p must be 0 (rationals) or a prime.
  explicit Field(unsigned long p = 0);

  unsigned long characteristic() const { return p_; }
  mpq_class reduce(const mpq_class& x) const;
  mpq_class reduce(const Integer& x) const { return reduce(mpq_class(x)); }
  mpq_class inverse(const mpq_class& x) const;

 private:
  unsigned long p_;
};

bool is_prime(unsigned long p);

class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Entrywise image of an integer matrix.
  FieldMatrix(const IntMatrix& m, const Field& f);

  static FieldMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpq_class> data_;
};

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b, const Field& f);

std::size_t rank(const FieldMatrix& m, const Field& f);
std::size_t rank(const IntMatrix& m, const Field& f);

/// Inverse of a square invertible matrix; throws std::invalid_argument if
/// singular.
FieldMatrix inverse(const FieldMatrix& m, const Field& f);

/// Indices of pivot columns in reduced row echelon form.
std::vector<std::size_t> pivot_columns(const FieldMatrix& m, const Field& f);

}  // namespace clusterforge
