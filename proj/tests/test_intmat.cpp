#include <catch2/catch_amalgamated.hpp>

#include "rrb/abelian.hpp"
#include "rrb/group.hpp"
#include "rrb/intmat.hpp"

using namespace rrb;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  return m;
}

void check_snf(const IntMatrix& m) {
  SnfResult s = smith_normal_form(m);
  REQUIRE(matmul(matmul(s.u, m), s.v) == s.d);
  int mn = std::min(m.rows, m.cols);
  for (int i = 0; i + 1 < mn; ++i) {
    if (s.d.at(i, i) != 0 && s.d.at(i + 1, i + 1) != 0) REQUIRE(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
  }
  // unimodularity via inverse existence
  REQUIRE(matmul(s.u, unimodular_inverse(s.u)) == IntMatrix::identity(m.rows));
  REQUIRE(matmul(s.v, unimodular_inverse(s.v)) == IntMatrix::identity(m.cols));
}

}  // namespace

TEST_CASE("snf of a diagonal matrix with chain keeps it") {
  IntMatrix m = from_rows({{1, 0}, {0, 6}});
  SnfResult s = smith_normal_form(m);
  REQUIRE(s.d.at(0, 0) == 1);
  REQUIRE(s.d.at(1, 1) == 6);
  check_snf(m);
}

TEST_CASE("snf of diag(2,3) is diag(1,6)") {
  IntMatrix m = from_rows({{2, 0}, {0, 3}});
  SnfResult s = smith_normal_form(m);
  REQUIRE(s.d.at(0, 0) == 1);
  REQUIRE(s.d.at(1, 1) == 6);
  check_snf(m);
}

TEST_CASE("snf of the zero matrix") {
  IntMatrix m(3, 2);
  SnfResult s = smith_normal_form(m);
  REQUIRE(s.rank == 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) REQUIRE(s.d.at(i, j) == 0);
  check_snf(m);
}

TEST_CASE("snf postconditions on pseudo-random matrices") {
  std::uint64_t seed = 42;
  for (int trial = 0; trial < 25; ++trial) {
    int r = 1 + static_cast<int>(detail::lcg_next(seed) % 6);
    int c = 1 + static_cast<int>(detail::lcg_next(seed) % 6);
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<long long>(detail::lcg_next(seed) % 21) - 10;
    check_snf(m);
  }
}

TEST_CASE("solve_mod basic cases") {
  SECTION("identity system returns b") {
    IntMatrix m = IntMatrix::identity(3);
    auto x = solve_mod(m, {Int(4), Int(5), Int(6)}, {Int(7), Int(7), Int(7)});
    REQUIRE(x.has_value());
    for (int i = 0; i < 3; ++i) REQUIRE(((*x)[i] - Int(4 + i)) % 7 == 0);
  }
  SECTION("2x = 1 mod 4 has no solution") {
    IntMatrix m(1, 1);
    m.at(0, 0) = 2;
    REQUIRE_FALSE(solve_mod(m, {Int(1)}, {Int(4)}).has_value());
  }
  SECTION("2x = 2 mod 4 solves to 1 or 3") {
    IntMatrix m(1, 1);
    m.at(0, 0) = 2;
    auto x = solve_mod(m, {Int(2)}, {Int(4)});
    REQUIRE(x.has_value());
    Int v = (*x)[0] % 4;
    if (v < 0) v += 4;
    REQUIRE((v == 1 || v == 3));
  }
  SECTION("exact equation with modulus 0") {
    IntMatrix m(1, 1);
    m.at(0, 0) = 3;
    REQUIRE_FALSE(solve_mod(m, {Int(2)}, {Int(0)}).has_value());
    auto x = solve_mod(m, {Int(9)}, {Int(0)});
    REQUIRE(x.has_value());
    REQUIRE((*x)[0] == 3);
  }
}

TEST_CASE("kernel_mod finds all solutions") {
  // x + 2y = 0 mod 4: solutions form a lattice of index 4 in Z^2
  IntMatrix m = from_rows({{1, 2}});
  IntMatrix k = kernel_mod(m, 4);
  // every basis column is a solution
  for (int j = 0; j < k.cols; ++j) {
    Int v = k.at(0, j) + 2 * k.at(1, j);
    REQUIRE(v % 4 == 0);
  }
  // counting: solutions mod 4 should number 4 (y free, x = -2y)
  int count = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if ((x + 2 * y) % 4 == 0) {
        // check membership in the lattice via subquotient machinery
        ++count;
      }
  REQUIRE(count == 4);
  FinAbPresentation p = subquotient_structure(k, IntMatrix(2, 0), {Int(4), Int(4)});
  REQUIRE(p.order() == 4);
}

TEST_CASE("lattice_basis and forward_solve round trip") {
  IntMatrix gens = from_rows({{2, 1, 4}, {0, 3, 1}});
  IntMatrix w = lattice_basis(gens);
  REQUIRE(w.rows == 2);
  REQUIRE(w.cols == 2);
  REQUIRE(w.at(0, 1) == 0);  // lower triangular
  for (int j = 0; j < gens.cols; ++j) {
    auto y = forward_solve(w, gens.col(j));
    REQUIRE(y.has_value());
    std::vector<Int> back = matvec(w, *y);
    REQUIRE(back == gens.col(j));
  }
}

TEST_CASE("subquotient_structure examples") {
  SECTION("Z = all of (Z2)^2, B = 0 gives factors (2,2)") {
    FinAbPresentation p =
        subquotient_structure(IntMatrix::identity(2), IntMatrix(2, 0), {Int(2), Int(2)});
    auto f = p.nontrivial_factors();
    REQUIRE(f == std::vector<Int>{2, 2});
  }
  SECTION("Z = Z^2, B = diag(2,2) gives (2,2)") {
    std::vector<Int> big = {Int(1000003), Int(1000003)};  // effectively free variables
    IntMatrix b = from_rows({{2, 0}, {0, 2}});
    // moduli rows dominate; make moduli multiples of 2 so B includes them
    FinAbPresentation p = subquotient_structure(IntMatrix::identity(2), b, {Int(4), Int(4)});
    // here Z = Z^2 mod (4,4); B = span{2e1, 2e2, 4e1, 4e2}: quotient (2,2)
    REQUIRE(p.nontrivial_factors() == std::vector<Int>{2, 2});
    (void)big;
  }
  SECTION("Z = B gives the trivial group") {
    IntMatrix z = from_rows({{1, 0}, {1, 2}});
    FinAbPresentation p = subquotient_structure(z, z, {Int(6), Int(6)});
    REQUIRE(p.nontrivial_factors().empty());
    REQUIRE(p.order() == 1);
  }
}

TEST_CASE("subquotient coordinate round trip over full enumeration") {
  // Z = <(1,1),(0,2)> inside (Z4)^2, B = <(2,2)>
  IntMatrix z(2, 2);
  z.at(0, 0) = 1;
  z.at(1, 0) = 1;
  z.at(0, 1) = 0;
  z.at(1, 1) = 2;
  IntMatrix b(2, 1);
  b.at(0, 0) = 2;
  b.at(1, 0) = 2;
  FinAbPresentation p = subquotient_structure(z, b, {Int(4), Int(4)});
  REQUIRE(p.order() <= 10000);
  for (const AbElement& e : p.all_elements()) {
    std::vector<Int> raw = p.lift(e);
    AbElement back = p.coords_of(raw);
    REQUIRE(back == e);
  }
  // a vector outside Z must be rejected
  bool threw = false;
  try {
    p.coords_of({Int(1), Int(0)});
  } catch (const Error& err) {
    threw = err.code() == Err::NotInSubgroup;
  }
  REQUIRE(threw);
}

TEST_CASE("abelian invariants normal form") {
  REQUIRE(abelian_invariants(AbGroupSpec({2, 3})) == std::vector<Int>{6});
  REQUIRE(abelian_invariants(AbGroupSpec({2, 2})) == std::vector<Int>{2, 2});
  REQUIRE(abelian_invariants(AbGroupSpec({1})).empty());
  REQUIRE(abelian_invariants(AbGroupSpec({4, 6})) == std::vector<Int>{2, 12});
}
