#include <random>

#include "clusterforge/field.hpp"
#include "clusterforge/zlinalg.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace clusterforge;

namespace {

std::vector<Integer> diagonal_of(const SnfDecomposition& d) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < d.rank; ++i) out.push_back(d.S(i, i));
  return out;
}

bool is_diagonal(const IntMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("snf of small matrices") {
  SUBCASE("identity") {
    auto d = snf(IntMatrix::identity(2));
    CHECK(d.S == IntMatrix::identity(2));
  }
  SUBCASE("diag(2,3) becomes diag(1,6)") {
    auto d = snf(IntMatrix{{2, 0}, {0, 3}});
    CHECK(d.S == (IntMatrix{{1, 0}, {0, 6}}));
  }
  SUBCASE("[[2,4],[6,8]] becomes diag(2,4)") {
    IntMatrix m{{2, 4}, {6, 8}};
    CHECK(oracle::invariant_factors(m) == std::vector<Integer>{2, 4});
    auto d = snf(m);
    CHECK(d.S == (IntMatrix{{2, 0}, {0, 4}}));
    CHECK(d.U * d.S * d.V == m);
  }
  SUBCASE("empty matrices") {
    auto d = snf(IntMatrix(0, 3));
    CHECK(d.rank == 0);
    CHECK(d.V.rows() == 3);
    CHECK(snf(IntMatrix(2, 0)).U == IntMatrix::identity(2));
  }
}

TEST_CASE("snf decomposition properties on random matrices") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m = oracle::random_matrix(rng, r, c, -6, 6);
    auto d = snf(m);
    CAPTURE(m.to_string());
    CHECK(d.U * d.S * d.V == m);
    CHECK(d.U_inv * m * d.V_inv == d.S);
    CHECK(abs(determinant(d.U)) == 1);
    CHECK(abs(determinant(d.V)) == 1);
    CHECK(is_diagonal(d.S));
    auto diag = diagonal_of(d);
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) CHECK(mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()));
    CHECK(diag == oracle::invariant_factors(m));
    if (r == c) {
      Integer prod = 1;
      for (std::size_t i = 0; i < r; ++i) prod *= d.S(i, i);
      CHECK(abs(determinant(m)) == prod);
      CHECK(determinant(m) == oracle::det_laplace(m));
    }
    // deterministic
    CHECK(snf(m).U == d.U);
  }
}

TEST_CASE("snf intermediate growth needs big integers") {
  std::mt19937 rng(7);
  IntMatrix m = oracle::random_matrix(rng, 10, 10, -1000000, 1000000);
  auto d = snf(m);
  CHECK(d.U * d.S * d.V == m);
  Integer prod = 1;
  for (std::size_t i = 0; i < 10; ++i) prod *= d.S(i, i);
  CHECK(abs(determinant(m)) == prod);
  CHECK(prod > Integer("1000000000000000000000000000000"));
}

TEST_CASE("cokernel structure") {
  CHECK(cokernel_structure(IntMatrix(1, 1)) == FinAbGroup{1, {}});
  CHECK(cokernel_structure(IntMatrix{{2}}) == FinAbGroup{0, {2}});
  CHECK(cokernel_structure(IntMatrix{{2, 0}, {0, 3}}) == FinAbGroup{0, {6}});
  CHECK(cokernel_structure(IntMatrix{{2, 0}, {0, 3}}).to_string() == "Z/6");
  CHECK(FinAbGroup{}.to_string() == "0");
  CHECK((FinAbGroup{2, {2, 4}}).to_string() == "Z^2 ⊕ Z/2 ⊕ Z/4");
  CHECK((FinAbGroup{0, {2}} + FinAbGroup{1, {3}}) == FinAbGroup{1, {6}});
}

TEST_CASE("cokernel reduced mod p matches rank mod p") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m = oracle::random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, -8, 8);
    FinAbGroup g = cokernel_structure(m);
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
      std::size_t expect = g.free_rank;
      for (const auto& d : g.torsion)
        if (mpz_divisible_ui_p(d.get_mpz_t(), p)) ++expect;
      CHECK(m.rows() - rank(m, Field(p)) == expect);
    }
  }
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
  auto k = kernel_basis(IntMatrix{{1, 1}});
  REQUIRE(k.cols() == 1);
  CHECK(abs(k(0, 0)) == 1);
  CHECK(k(0, 0) == -k(1, 0));
  auto k2 = kernel_basis(IntMatrix{{2, 4}});
  REQUIRE(k2.cols() == 1);
  // primitive generator of 2x + 4y = 0 is +-(2, -1)
  CHECK(((k2(0, 0) == 2 && k2(1, 0) == -1) || (k2(0, 0) == -2 && k2(1, 0) == 1)));

  std::mt19937 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    IntMatrix m = oracle::random_matrix(rng, 1 + rng() % 3, 2 + rng() % 4, -5, 5);
    IntMatrix kb = kernel_basis(m);
    CHECK((m * kb).is_zero());
    CHECK(kb.cols() == m.cols() - rank(m));
    if (kb.cols()) CHECK(is_saturated(kb));
  }
}

TEST_CASE("solve over the integers") {
  CHECK(solve(IntMatrix{{2}}, IntVector{4}) == IntVector{2});
  CHECK_FALSE(solve(IntMatrix{{2}}, IntVector{3}).has_value());
  IntMatrix m{{1, 2}, {0, 0}};
  auto x = solve(m, IntVector{5, 0});
  REQUIRE(x);
  CHECK(m * *x == IntVector{5, 0});
  CHECK_FALSE(solve(m, IntVector{5, 1}).has_value());
}

TEST_CASE("homology of presented groups") {
  // Z --2--> Z --0--> 0 : H = Z/2
  Presentation z1{1, IntMatrix(1, 0)};
  CHECK(homology(z1, IntMatrix{{2}}, z1, IntMatrix(0, 1), Presentation{}) == FinAbGroup{0, {2}});
  // Z/2 --0--> Z/2 --0--> 0 : H = Z/2
  Presentation z2{1, IntMatrix{{2}}};
  CHECK(homology(z2, IntMatrix{{0}}, z2, IntMatrix(0, 1), Presentation{}) == FinAbGroup{0, {2}});
  // 0 -> Z --3--> Z/6 : kernel is 2Z/6Z = Z/3... of Z: elements x with 3x in 6Z -> 2Z; H = 2Z ~ Z
  Presentation z6{1, IntMatrix{{6}}};
  CHECK(homology(Presentation{}, IntMatrix(1, 0), z1, IntMatrix{{3}}, z6) == FinAbGroup{1, {}});
}

TEST_CASE("field rank and inverse") {
  Field f2(2), q(0);
  IntMatrix m{{2, 1}, {4, 3}};
  CHECK(rank(m, f2) == 1);
  CHECK(rank(m, q) == 2);
  FieldMatrix fm(m, q);
  auto inv = inverse(fm, q);
  CHECK(multiply(fm, inv, q) == FieldMatrix::identity(2));
  CHECK_THROWS_AS(Field(4), std::invalid_argument);
}
