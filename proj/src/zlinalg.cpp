#include "clusterforge/zlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace clusterforge {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows,
                               std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::column_vector(const IntVector& v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::set_column(std::size_t j, const IntVector& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                           std::size_t nc) const {
  IntMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  IntMatrix b(rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t i = 0; i < rows_; ++i) b(i, k) = (*this)(i, idx[k]);
  return b;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src,
                                 const Integer& c) {
  if (c == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src,
                                 const Integer& c) {
  if (c == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape");
  IntVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) r[i] += a(i, k) * v[k];
  return r;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum shape");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  return a + Integer(-1) * b;
}

IntMatrix operator*(const Integer& c, const IntMatrix& a) {
  IntMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) *= c;
  return r;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack shape");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack shape");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

std::string FinAbGroup::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  if (free_rank > 0) out = "Z^" + std::to_string(free_rank);
  for (const auto& d : torsion) {
    if (!out.empty()) out += " ⊕ ";
    out += "Z/" + d.get_str();
  }
  return out;
}

FinAbGroup make_group(std::size_t free_rank, std::vector<Integer> cyclic) {
  // diag(c_1, ..., c_k) has the invariant factors we want.
  IntMatrix d(cyclic.size(), cyclic.size());
  for (std::size_t i = 0; i < cyclic.size(); ++i) {
    if (cyclic[i] <= 0) throw std::invalid_argument("cyclic orders must be positive");
    d(i, i) = cyclic[i];
  }
  FinAbGroup g = cokernel_structure(d);
  g.free_rank += free_rank;
  return g;
}

FinAbGroup operator+(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<Integer> cyclic = a.torsion;
  cyclic.insert(cyclic.end(), b.torsion.begin(), b.torsion.end());
  return make_group(a.free_rank + b.free_rank, std::move(cyclic));
}

namespace {

Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// floor division keeps |a - q*p| < |p|
Integer floor_div(const Integer& a, const Integer& p) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return q;
}

bool divides(const Integer& d, const Integer& x) {
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

struct SnfWork {
  IntMatrix a, left, left_inv, right, right_inv;

  // row_dst += c * row_src on a, tracked in left (and its inverse).
  void row_op(std::size_t dst, std::size_t src, const Integer& c) {
    a.add_row_multiple(dst, src, c);
    left.add_row_multiple(dst, src, c);
    left_inv.add_col_multiple(src, dst, -c);
  }
  void col_op(std::size_t dst, std::size_t src, const Integer& c) {
    a.add_col_multiple(dst, src, c);
    right.add_col_multiple(dst, src, c);
    right_inv.add_row_multiple(src, dst, -c);
  }
  void row_swap(std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    left.swap_rows(x, y);
    left_inv.swap_cols(x, y);
  }
  void col_swap(std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    right.swap_cols(x, y);
    right_inv.swap_rows(x, y);
  }
  void row_negate(std::size_t i) {
    a.negate_row(i);
    left.negate_row(i);
    left_inv.negate_col(i);
  }
};

}  // namespace

SnfDecomposition snf(const IntMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  SnfWork w{m, IntMatrix::identity(nr), IntMatrix::identity(nr),
            IntMatrix::identity(nc), IntMatrix::identity(nc)};
  std::size_t t = 0;
  for (; t < std::min(nr, nc); ++t) {
    // smallest nonzero |entry| in the trailing block, row-major first hit
    std::size_t pi = nr, pj = nc;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j)
        if (w.a(i, j) != 0 &&
            (pi == nr || abs_of(w.a(i, j)) < abs_of(w.a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == nr) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      for (std::size_t i = t + 1; i < nr; ++i)
        if (w.a(i, t) != 0) w.row_op(i, t, -floor_div(w.a(i, t), w.a(t, t)));
      for (std::size_t j = t + 1; j < nc; ++j)
        if (w.a(t, j) != 0) w.col_op(j, t, -floor_div(w.a(t, j), w.a(t, t)));

      // a remainder left in the pivot row/column becomes the new pivot
      std::size_t ri = nr, cj = nc;
      for (std::size_t i = t + 1; i < nr; ++i)
        if (w.a(i, t) != 0 && (ri == nr || abs_of(w.a(i, t)) < abs_of(w.a(ri, t))))
          ri = i;
      for (std::size_t j = t + 1; j < nc; ++j)
        if (w.a(t, j) != 0 && (cj == nc || abs_of(w.a(t, j)) < abs_of(w.a(t, cj))))
          cj = j;
      if (ri != nr || cj != nc) {
        bool use_row = ri != nr &&
                       (cj == nc || abs_of(w.a(ri, t)) <= abs_of(w.a(t, cj)));
        if (use_row)
          w.row_swap(t, ri);
        else
          w.col_swap(t, cj);
        continue;
      }

      std::size_t bad = nr;
      for (std::size_t i = t + 1; i < nr && bad == nr; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (!divides(w.a(t, t), w.a(i, j))) {
            bad = i;
            break;
          }
      if (bad == nr) break;
      w.row_op(t, bad, 1);
    }
    if (w.a(t, t) < 0) w.row_negate(t);
  }

  SnfDecomposition d;
  d.rank = t;
  d.S = std::move(w.a);
  d.U = std::move(w.left_inv);
  d.U_inv = std::move(w.left);
  d.V = std::move(w.right_inv);
  d.V_inv = std::move(w.right);
  return d;
}

std::size_t rank(const IntMatrix& m) { return snf(m).rank; }

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  // Bareiss fraction-free elimination
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

FinAbGroup cokernel_structure(const IntMatrix& m) {
  SnfDecomposition d = snf(m);
  FinAbGroup g;
  g.free_rank = m.rows() - d.rank;
  for (std::size_t i = 0; i < d.rank; ++i)
    if (d.S(i, i) != 1) g.torsion.push_back(d.S(i, i));
  return g;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  SnfDecomposition d = snf(m);
  const std::size_t nc = m.cols();
  IntMatrix k(nc, nc - d.rank);
  for (std::size_t j = d.rank; j < nc; ++j)
    for (std::size_t i = 0; i < nc; ++i) k(i, j - d.rank) = d.V_inv(i, j);
  return k;
}

IntMatrix image_basis(const IntMatrix& m) {
  SnfDecomposition d = snf(m);
  IntMatrix b(m.rows(), d.rank);
  for (std::size_t j = 0; j < d.rank; ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, j) = d.U(i, j) * d.S(j, j);
  return b;
}

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
  SnfDecomposition d = snf(m);
  IntVector c = d.U_inv * b;
  IntVector y(m.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < d.rank) {
      if (!divides(d.S(i, i), c[i])) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), d.S(i, i).get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return d.V_inv * y;
}

std::optional<IntMatrix> solve(const IntMatrix& m, const IntMatrix& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
  SnfDecomposition d = snf(m);
  IntMatrix c = d.U_inv * b;
  IntMatrix y(m.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < c.rows(); ++i) {
      if (i < d.rank) {
        if (!divides(d.S(i, i), c(i, j))) return std::nullopt;
        mpz_divexact(y(i, j).get_mpz_t(), c(i, j).get_mpz_t(), d.S(i, i).get_mpz_t());
      } else if (c(i, j) != 0) {
        return std::nullopt;
      }
    }
  return d.V_inv * y;
}

FinAbGroup subquotient(const IntMatrix& top, const IntMatrix& sub) {
  if (top.rows() != sub.rows()) throw std::invalid_argument("subquotient: ambient mismatch");
  IntMatrix basis = image_basis(top);
  auto coords = solve(basis, sub);
  if (!coords) throw std::invalid_argument("subquotient: sub is not contained in top");
  return cokernel_structure(*coords);
}

FinAbGroup Presentation::structure() const {
  if (relations.cols() == 0) return FinAbGroup{generators, {}};
  return cokernel_structure(relations);
}

namespace {
IntMatrix relations_or_empty(const Presentation& p) {
  if (p.relations.rows() == p.generators) return p.relations;
  return IntMatrix(p.generators, 0);
}
}  // namespace

FinAbGroup homology(const Presentation& x, const IntMatrix& f,
                    const Presentation& y, const IntMatrix& g,
                    const Presentation& z) {
  if (f.rows() != y.generators || f.cols() != x.generators ||
      g.rows() != z.generators || g.cols() != y.generators)
    throw std::invalid_argument("homology: shape mismatch");
  const IntMatrix ry = relations_or_empty(y);
  const IntMatrix rz = relations_or_empty(z);
  // preimage in Z^y of the classes killed by g
  IntMatrix ker = kernel_basis(hstack(g, rz));
  IntMatrix cycles = ker.block(0, 0, y.generators, ker.cols());
  IntMatrix boundaries = hstack(f, ry);
  return subquotient(cycles, boundaries);
}

bool is_saturated(const IntMatrix& m) {
  SnfDecomposition d = snf(m);
  for (std::size_t i = 0; i < d.rank; ++i)
    if (d.S(i, i) != 1) return false;
  return true;
}

}  // namespace clusterforge
