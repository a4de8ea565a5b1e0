#pragma once

// Exact linear algebra over the integers: Smith normal form, kernels,
// cokernels, subquotients and the structure of finitely generated abelian
// groups. All entries are arbitrary precision (GMP).

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace clusterforge {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  /// Row-major literal, e.g. IntMatrix{{1, 2}, {3, 4}}. All rows must have
  /// equal length; an empty list gives a 0x0 matrix.
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows,
                             std::size_t cols);
  static IntMatrix column_vector(const IntVector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  void set_column(std::size_t j, const IntVector& v);

  IntMatrix transpose() const;
  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
                  std::size_t nc) const;
  IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;

  // elementary operations (used by the normal form routines)
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& c);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& c);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& c, const IntMatrix& a);

/// [A | B]; row counts must agree.
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
/// [A ; B]; column counts must agree.
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
/// Block diagonal diag(A, B).
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

Integer determinant(const IntMatrix& m);

/// Structure of a finitely generated abelian group:
/// Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i >= 2.
struct FinAbGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  /// Z^r + Z/d1 + ... in text form; the trivial group prints as "0".
  std::string to_string() const;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

/// Direct sum of two groups, renormalized to invariant-factor form.
FinAbGroup operator+(const FinAbGroup& a, const FinAbGroup& b);
/// Builds the invariant-factor form of Z^free + sum Z/c_i for arbitrary
/// positive c_i (units are dropped).
FinAbGroup make_group(std::size_t free_rank, std::vector<Integer> cyclic);

struct SnfDecomposition {
  IntMatrix U, S, V;       // input = U * S * V
  IntMatrix U_inv, V_inv;  // U_inv * input * V_inv = S
  std::size_t rank = 0;

  Integer diagonal(std::size_t i) const { return S(i, i); }
};

/// Smith normal form with smallest-absolute-value pivoting. Deterministic.
SnfDecomposition snf(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Z^rows / image(m).
FinAbGroup cokernel_structure(const IntMatrix& m);

/// Columns form a Z-basis of the (saturated) kernel lattice of m.
IntMatrix kernel_basis(const IntMatrix& m);

/// Columns form a Z-basis of the column lattice of m.
IntMatrix image_basis(const IntMatrix& m);

/// Some integral x with m x = b, or nullopt when none exists over Z.
std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b);

/// Solves m X = b column by column; nullopt if any column is unsolvable.
std::optional<IntMatrix> solve(const IntMatrix& m, const IntMatrix& b);

/// Structure of span(top) / span(sub), where the column lattice of `sub`
/// lies inside that of `top` (both in Z^rows). Throws std::invalid_argument
/// when the containment fails.
FinAbGroup subquotient(const IntMatrix& top, const IntMatrix& sub);

/// A finitely presented abelian group Z^generators / image(relations).
struct Presentation {
  std::size_t generators = 0;
  IntMatrix relations;  // generators x r

  FinAbGroup structure() const;
};

/// Homology ker(g)/im(f) of X --f--> Y --g--> Z for presented groups; f and
/// g are integer matrices on generators which must descend to the quotients.
FinAbGroup homology(const Presentation& x, const IntMatrix& f,
                    const Presentation& y, const IntMatrix& g,
                    const Presentation& z);

/// True if the columns of m span a direct summand of Z^rows (all invariant
/// factors of m are 1).
bool is_saturated(const IntMatrix& m);

}  // namespace clusterforge
