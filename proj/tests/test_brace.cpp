#include <catch2/catch_amalgamated.hpp>

#include "rrb/brace.hpp"

using namespace rrb;

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

SkewBrace trivial_brace(const GroupPtr& g) { return make_skew_brace(g, g); }

}  // namespace

TEST_CASE("induced brace") {
  SECTION("trivial phi gives the trivial brace") {
    auto z4 = cyclic_group(4);
    SkewBrace b = induced_brace(trivial_rrb(z4, z4, identity_map(4)));
    REQUIRE(b.is_trivial());
  }
  SECTION("constant R gives the trivial brace") {
    RRBGroup r = conjugation_rrb(symmetric_group(3), std::vector<int>(6, 0));
    REQUIRE(induced_brace(r).is_trivial());
  }
  SECTION("inverse RB operator on S3 gives dot != circle") {
    SkewBrace b = induced_brace(inverse_rb(symmetric_group(3)));
    REQUIRE_FALSE(b.is_trivial());
  }
  SECTION("iota does not change the induced brace") {
    RRBGroup r = trivial_rrb(cyclic_group(4), cyclic_group(4), {0, 2, 0, 2});
    SkewBrace b1 = induced_brace(r);
    SkewBrace b2 = induced_brace(iota(r).rrb);
    REQUIRE(b1.dot->table == b2.dot->table);
    REQUIRE(b1.circle->table == b2.circle->table);
  }
}

TEST_CASE("annihilator") {
  SECTION("trivial brace on abelian carrier: whole group") {
    REQUIRE(brace_annihilator(trivial_brace(cyclic_group(4))).size() == 4);
  }
  SECTION("trivial brace on S3: only the identity") {
    REQUIRE(brace_annihilator(trivial_brace(symmetric_group(3))) == std::vector<int>{0});
  }
}

TEST_CASE("brace commutator") {
  SECTION("trivial brace on abelian carrier: trivial") {
    REQUIRE(brace_commutator(trivial_brace(cyclic_group(6))) == std::vector<int>{0});
  }
  SECTION("trivial brace on S3: order-3 subgroup") {
    REQUIRE(brace_commutator(trivial_brace(symmetric_group(3))).size() == 3);
  }
  SECTION("matches the H-part of the RRB commutator through lambda = phi_R") {
    // For the inverse RB operator R is surjective, so displacements by R(H)
    // exhaust all displacements and the two notions agree.
    for (const RRBGroup& r : {inverse_rb(symmetric_group(3)), inverse_rb(quaternion_group()),
                              inverse_rb(dihedral_group(4))}) {
      SkewBrace b = induced_brace(r);
      REQUIRE(brace_commutator(b) == rrb_commutator(r).K);
    }
  }
}

TEST_CASE("ybe solutions") {
  SECTION("trivial brace on abelian carrier gives the flip") {
    auto z3 = cyclic_group(3);
    YBMap m = ybe_map(trivial_brace(z3));
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) REQUIRE(m.r(x, y) == std::make_pair(y, x));
  }
  SECTION("trivial brace on S3 gives conjugation solution, braid verified") {
    auto s3 = symmetric_group(3);
    YBMap m = ybe_map(trivial_brace(s3));
    for (int x = 0; x < 6; ++x)
      for (int y = 0; y < 6; ++y) {
        auto [u, v] = m.r(x, y);
        REQUIRE(u == y);
        REQUIRE(v == s3->mul3(s3->invert(y), x, y));
      }
  }
  SECTION("braces induced from enumerated RB operators all pass the oracle") {
    auto s3 = symmetric_group(3);
    std::vector<std::vector<int>> phi(6, std::vector<int>(6));
    for (int g = 0; g < 6; ++g)
      for (int x = 0; x < 6; ++x) phi[g][x] = s3->conj(g, x);
    for (const RRBGroup& r : enumerate_relative_rb_operators(s3, s3, phi)) {
      YBMap m = ybe_map(induced_brace(r));
      REQUIRE(ybe_check(m) == std::nullopt);
    }
  }
}

TEST_CASE("brace isoclinism") {
  SECTION("a brace is isoclinic to itself with the identity witness") {
    SkewBrace b = induced_brace(inverse_rb(symmetric_group(3)));
    auto w = brace_isoclinic(b, b);
    REQUIRE(w.has_value());
  }
  SECTION("trivial braces on Z2 and Z4 are isoclinic") {
    auto w = brace_isoclinic(trivial_brace(cyclic_group(2)), trivial_brace(cyclic_group(4)));
    REQUIRE(w.has_value());
  }
  SECTION("trivial braces on Z4 and S3 are not isoclinic") {
    auto w = brace_isoclinic(trivial_brace(cyclic_group(4)), trivial_brace(symmetric_group(3)));
    REQUIRE_FALSE(w.has_value());
  }
}
