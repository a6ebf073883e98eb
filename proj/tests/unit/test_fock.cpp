#include <doctest.h>

#include <bit>

#include "enaqt/errors.hpp"
#include "enaqt/fock.hpp"

using namespace enaqt;

TEST_CASE("basis dimensions") {
  CHECK(enumerate_basis(7, 1).dim() == 8);
  CHECK(enumerate_basis(7, 2).dim() == 29);
  CHECK(enumerate_basis(1, 2).dim() == 2);
  for (int L = 1; L <= 10; ++L) {
    CHECK(enumerate_basis(L, 1).dim() == std::size_t(1 + L));
    CHECK(enumerate_basis(L, 2).dim() == std::size_t(1 + L + L * (L - 1) / 2));
  }
}

TEST_CASE("basis rejects bad arguments") {
  CHECK_THROWS_AS(enumerate_basis(0, 1), ArgumentError);
  CHECK_THROWS_AS(enumerate_basis(3, 0), ArgumentError);
  CHECK_THROWS_AS(enumerate_basis(3, 3), ArgumentError);
}

TEST_CASE("ordering: vacuum first, then by particle number, then lexicographic") {
  const FockBasis b(4, 2);
  CHECK(b.state(0) == 0);
  CHECK(b.label(0) == "0");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < b.dim(); ++k) labels.push_back(b.label(k));
  const std::vector<std::string> expected = {"0", "1", "2", "3", "4", "1,2", "1,3", "1,4", "2,3", "2,4", "3,4"};
  CHECK(labels == expected);
  for (std::size_t k = 0; k < b.dim(); ++k) {
    CHECK(b.index_of(b.state(k)) == k);
    CHECK(std::popcount(b.state(k)) <= 2);
    CHECK(b.particle_count(k) == std::popcount(b.state(k)));
  }
  CHECK_FALSE(b.index_of(0b111).has_value());
}

TEST_CASE("creation operator on small bases") {
  SUBCASE("L=2, n_max=1") {
    const FockBasis b(2, 1);
    const auto c1 = creation_op(b, 1);
    const std::size_t vac = 0, s1 = *b.index_of(0b01), s2 = *b.index_of(0b10);
    CHECK(c1(s1, vac) == Complex(1));
    CHECK(c1.col(s2).isZero());  // truncation
    CHECK(c1.col(s1).isZero());  // hard core
  }
  SUBCASE("L=2, n_max=2") {
    const FockBasis b(2, 2);
    const auto c1 = creation_op(b, 1);
    CHECK(c1(*b.index_of(0b11), *b.index_of(0b10)) == Complex(1));
  }
  const FockBasis b(3, 1);
  CHECK_THROWS_AS(creation_op(b, 0), ArgumentError);
  CHECK_THROWS_AS(creation_op(b, 4), ArgumentError);
}

TEST_CASE("operator algebra") {
  for (int n_max : {1, 2}) {
    for (int L = 1; L <= 4; ++L) {
      const FockBasis b(L, n_max);
      OperatorMatrix total = OperatorMatrix::Zero(b.dim(), b.dim());
      for (int i = 1; i <= L; ++i) {
        const auto c = creation_op(b, i);
        const auto a = annihilation_op(b, i);
        const auto n = number_op(b, i);
        CHECK(c.adjoint() == a);
        CHECK((c * a - n).norm() == 0.0);
        CHECK((n * n - n).norm() == 0.0);
        CHECK((c * c).norm() == 0.0);
        for (auto v : c.reshaped()) CHECK((v == Complex(0) || v == Complex(1)));
        CHECK(n.isDiagonal());
        CHECK(n(0, 0) == Complex(0));
        for (int j = 1; j <= L; ++j) {
          const auto m = number_op(b, j);
          CHECK((n * m - m * n).norm() == 0.0);
        }
        total += n;
      }
      CHECK((total - total_number_op(b)).norm() == 0.0);
      for (std::size_t k = 0; k < b.dim(); ++k) CHECK(total(k, k).real() == b.particle_count(k));
    }
  }
  const FockBasis b(7, 2);
  CHECK(total_number_op(b)(*b.index_of(0b1100), *b.index_of(0b1100)) == Complex(2));
}
