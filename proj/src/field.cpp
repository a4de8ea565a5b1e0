#include "clusterforge/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace clusterforge {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field::Field(unsigned long p) : p_(p) {
  if (p != 0 && !is_prime(p))
    throw std::invalid_argument(std::to_string(p) + " is not prime");
}

mpq_class Field::reduce(const mpq_class& x) const {
  if (p_ == 0) {
    mpq_class y = x;
    y.canonicalize();
    return y;
  }
  Integer mod(static_cast<unsigned long>(p_));
  Integer num = x.get_num(), den = x.get_den();
  Integer r;
  mpz_mod(r.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
  if (den != 1) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw std::domain_error("denominator divisible by the characteristic");
    r = r * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  }
  return mpq_class(r);
}

mpq_class Field::inverse(const mpq_class& x) const {
  if (x == 0) throw std::domain_error("division by zero");
  if (p_ == 0) return 1 / x;
  Integer mod(static_cast<unsigned long>(p_)), inv;
  Integer num = reduce(x).get_num();
  mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
  return mpq_class(inv);
}

FieldMatrix::FieldMatrix(const IntMatrix& m, const Field& f)
    : rows_(m.rows()), cols_(m.cols()), data_(m.rows() * m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = f.reduce(m(i, j));
}

FieldMatrix FieldMatrix::identity(std::size_t n) {
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool FieldMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpq_class& x) { return x == 0; });
}

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b, const Field& f) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape");
  FieldMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      mpq_class s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = f.reduce(s);
    }
  return c;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(FieldMatrix& a, const Field& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    mpq_class inv = f.inverse(a(r, c));
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = f.reduce(a(r, j) * inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      mpq_class factor = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = f.reduce(a(i, j) - factor * a(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const FieldMatrix& m, const Field& f) {
  FieldMatrix a = m;
  return rref(a, f).size();
}

std::size_t rank(const IntMatrix& m, const Field& f) { return rank(FieldMatrix(m, f), f); }

std::vector<std::size_t> pivot_columns(const FieldMatrix& m, const Field& f) {
  FieldMatrix a = m;
  return rref(a, f);
}

FieldMatrix inverse(const FieldMatrix& m, const Field& f) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  FieldMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug, f);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::invalid_argument("singular matrix");
  FieldMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

}  // namespace clusterforge
