#include <catch2/catch_amalgamated.hpp>

#include "rrb/rrb.hpp"

using namespace rrb;

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("verify_rrb basic cases") {
  auto z2 = cyclic_group(2);
  SECTION("trivial RRB group on Z2 with R = id") {
    RRBGroup r = trivial_rrb(z2, z2, identity_map(2));
    REQUIRE(r.bijective());
    REQUIRE(r.trivial_phi());
  }
  SECTION("constant R == 1 is always valid") {
    auto s3 = symmetric_group(3);
    std::vector<std::vector<int>> phi(s3->n, std::vector<int>(s3->n));
    for (int g = 0; g < s3->n; ++g)
      for (int x = 0; x < s3->n; ++x) phi[g][x] = s3->conj(g, x);
    RRBGroup r = verify_rrb(s3, s3, phi, std::vector<int>(6, 0));
    REQUIRE_FALSE(r.bijective());
  }
  SECTION("RB identity failure is reported with a witness pair") {
    auto z3 = cyclic_group(3);
    try {
      trivial_rrb(z3, z3, {0, 1, 0});
      FAIL("expected RBIdentityFails");
    } catch (const Error& e) {
      REQUIRE(e.code() == Err::RBIdentityFails);
      REQUIRE(std::string(e.what()).find("h1=1, h2=1") != std::string::npos);
    }
  }
  SECTION("non-automorphism phi entry is rejected") {
    auto z2b = cyclic_group(2);
    auto z4 = cyclic_group(4);
    std::vector<std::vector<int>> phi = {identity_map(4), {0, 2, 1, 3}};
    try {
      verify_rrb(z4, z2b, phi, {0, 0, 0, 0});
      FAIL("expected PhiNotAutomorphism");
    } catch (const Error& e) {
      REQUIRE(e.code() == Err::PhiNotAutomorphism);
    }
  }
  SECTION("phi that is no action is rejected") {
    auto z4g = cyclic_group(4);
    auto z4h = cyclic_group(4);
    std::vector<int> inv = {0, 3, 2, 1};
    // g -> inversion for every g != 0 is not a homomorphism Z4 -> Aut(Z4)
    std::vector<std::vector<int>> phi = {identity_map(4), inv, inv, inv};
    try {
      verify_rrb(z4h, z4g, phi, {0, 0, 0, 0});
      FAIL("expected PhiNotAction");
    } catch (const Error& e) {
      REQUIRE(e.code() == Err::PhiNotAction);
    }
  }
}

TEST_CASE("descendent group") {
  SECTION("trivial phi: descendent table equals H") {
    auto z4 = cyclic_group(4);
    RRBGroup r = trivial_rrb(z4, z4, identity_map(4));
    auto [desc, rhom] = descendent_group(r);
    REQUIRE(desc->table == z4->table);
    REQUIRE(hom_law_holds(rhom));
  }
  SECTION("constant R == 1: descendent table equals H") {
    auto q8 = quaternion_group();
    std::vector<std::vector<int>> phi(8, std::vector<int>(8));
    for (int g = 0; g < 8; ++g)
      for (int x = 0; x < 8; ++x) phi[g][x] = q8->conj(g, x);
    RRBGroup r = verify_rrb(q8, q8, phi, std::vector<int>(8, 0));
    auto [desc, rhom] = descendent_group(r);
    REQUIRE(desc->table == q8->table);
  }
  SECTION("inverse RB operator on S3: descendent differs, R is a hom") {
    RRBGroup r = inverse_rb(symmetric_group(3));
    auto [desc, rhom] = descendent_group(r);
    REQUIRE(desc->table != r.H->table);
    REQUIRE(hom_law_holds(rhom));
    REQUIRE(r.bijective());
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) REQUIRE(r.R[r.circ(a, b)] == r.G->mul(r.R[a], r.R[b]));
  }
}

TEST_CASE("rrb center") {
  SECTION("trivial phi gives (Z(H), G)") {
    auto s3 = symmetric_group(3);
    auto z2 = cyclic_group(2);
    std::vector<int> sign(6);
    for (int x = 0; x < 6; ++x) sign[x] = s3->order_of(x) == 2 ? 1 : 0;
    RRBGroup r = trivial_rrb(s3, z2, sign);
    RRBSubgroup c = rrb_center(r);
    REQUIRE(c.K == std::vector<int>{0});  // Z(S3) trivial
    REQUIRE(static_cast<int>(c.L.size()) == 2);
  }
  SECTION("abelian trivial case: center is everything") {
    auto z4 = cyclic_group(4);
    RRBGroup r = trivial_rrb(z4, z4, identity_map(4));
    RRBSubgroup c = rrb_center(r);
    REQUIRE(static_cast<int>(c.K.size()) == 4);
    REQUIRE(static_cast<int>(c.L.size()) == 4);
  }
  SECTION("center is an ideal and the central quotient is valid") {
    for (const RRBGroup& r : {inverse_rb(symmetric_group(3)), inverse_rb(quaternion_group()),
                              trivial_rrb(symmetric_group(3), symmetric_group(3), identity_map(6))}) {
      RRBSubgroup c = rrb_center(r);
      REQUIRE(is_ideal(r, c).ok);
      RRBQuotient q = rrb_quotient(r, c);
      REQUIRE(q.quotient.H->n * static_cast<int>(c.K.size()) == r.H->n);
    }
  }
}

TEST_CASE("rrb commutator") {
  SECTION("trivial RRB group on abelian H") {
    auto z4 = cyclic_group(4);
    RRBGroup r = trivial_rrb(z4, z4, identity_map(4));
    RRBSubgroup c = rrb_commutator(r);
    REQUIRE(c.K == std::vector<int>{0});
    REQUIRE(static_cast<int>(c.L.size()) == 4);
  }
  SECTION("trivial phi on S3 gives the order-3 part") {
    auto s3 = symmetric_group(3);
    RRBGroup r = trivial_rrb(s3, s3, identity_map(6));
    RRBSubgroup c = rrb_commutator(r);
    REQUIRE(static_cast<int>(c.K.size()) == 3);
  }
  SECTION("conjugation action on Q8: displacements coincide with commutators") {
    RRBGroup r = inverse_rb(quaternion_group());
    RRBSubgroup c = rrb_commutator(r);
    REQUIRE(static_cast<int>(c.K.size()) == 2);
  }
}

TEST_CASE("ideals") {
  auto s3 = symmetric_group(3);
  RRBGroup r = trivial_rrb(s3, s3, identity_map(6));
  SECTION("whole group is an ideal") { REQUIRE(is_ideal(r, whole_rrb_subgroup(r)).ok); }
  SECTION("center is an ideal") { REQUIRE(is_ideal(r, rrb_center(r)).ok); }
  SECTION("non-normal K fails I0") {
    int t = -1;
    for (int x = 1; x < 6; ++x)
      if (s3->order_of(x) == 2) {
        t = x;
        break;
      }
    auto k = subgroup_generated(s3, {t});
    RRBSubgroup sub{k.elements, whole_subgroup(s3).elements};
    Decision d = is_ideal(r, sub);
    REQUIRE_FALSE(d.ok);
    REQUIRE(d.condition == "I0");
  }
}

TEST_CASE("rrb quotients") {
  RRBGroup r = inverse_rb(quaternion_group());
  SECTION("quotient by the whole group is trivial") {
    RRBQuotient q = rrb_quotient(r, whole_rrb_subgroup(r));
    REQUIRE(q.quotient.H->n == 1);
    REQUIRE(q.quotient.G->n == 1);
  }
  SECTION("quotient by the trivial ideal is an isomorphic copy") {
    RRBQuotient q = rrb_quotient(r, RRBSubgroup{{0}, {0}});
    REQUIRE(q.quotient.H->n == r.H->n);
    REQUIRE(is_isomorphic(q.quotient.H, r.H));
    REQUIRE(is_rrb_hom(r, q.quotient, q.projection.psi, q.projection.eta));
  }
}

TEST_CASE("rrb homs, kernels, images") {
  auto z4 = cyclic_group(4);
  RRBGroup r = trivial_rrb(z4, z4, identity_map(4));
  SECTION("identity pair is a hom with trivial kernel and full image") {
    RRBHom f = verify_rrb_hom(r, r, identity_hom(z4), identity_hom(z4));
    RRBSubgroup ker = rrb_hom_kernel(r, f);
    REQUIRE(ker.K == std::vector<int>{0});
    REQUIRE(ker.L == std::vector<int>{0});
    RRBSubgroup img = rrb_hom_image(r, f);
    REQUIRE(static_cast<int>(img.K.size()) == 4);
  }
  SECTION("compatibility violation is caught") {
    auto z2 = cyclic_group(2);
    RRBGroup r2 = trivial_rrb(z2, z2, identity_map(2));
    GroupHom psi{z4, z2, {0, 1, 0, 1}};
    GroupHom eta{z4, z2, {0, 0, 0, 0}};  // eta R != S psi
    try {
      verify_rrb_hom(r, r2, psi, eta);
      FAIL("expected CompatibilityFails");
    } catch (const Error& e) {
      REQUIRE(e.code() == Err::CompatibilityFails);
    }
  }
  SECTION("composition of RRB homs is an RRB hom") {
    auto z2 = cyclic_group(2);
    RRBGroup r2 = trivial_rrb(z2, z2, identity_map(2));
    GroupHom psi{z4, z2, {0, 1, 0, 1}};
    RRBHom f = verify_rrb_hom(r, r2, psi, psi);
    RRBHom g = verify_rrb_hom(r2, r2, identity_hom(z2), identity_hom(z2));
    REQUIRE(is_rrb_hom(r, r2, compose(g.psi, f.psi), compose(g.eta, f.eta)));
  }
}

TEST_CASE("iota") {
  auto z4 = cyclic_group(4);
  SECTION("bijective R keeps G") {
    RRBGroup r = trivial_rrb(z4, z4, identity_map(4));
    IotaResult i = iota(r);
    REQUIRE(i.rrb.G->n == 4);
  }
  SECTION("constant R collapses G to the trivial group") {
    RRBGroup r = trivial_rrb(z4, z4, {0, 0, 0, 0});
    IotaResult i = iota(r);
    REQUIRE(i.rrb.G->n == 1);
  }
  SECTION("non-surjective hom gives the image subgroup") {
    RRBGroup r = trivial_rrb(z4, z4, {0, 2, 0, 2});
    IotaResult i = iota(r);
    REQUIRE(i.rrb.G->n == 2);
    REQUIRE(i.g_embed.to_parent == std::vector<int>{0, 2});
  }
}

TEST_CASE("operator enumeration") {
  SECTION("trivial phi on Z2: exactly the 2 homomorphisms") {
    auto z2 = cyclic_group(2);
    std::vector<std::vector<int>> phi(2, identity_map(2));
    auto ops = enumerate_relative_rb_operators(z2, z2, phi);
    REQUIRE(ops.size() == 2);
  }
  SECTION("trivial phi on Z3: the 3 homomorphisms") {
    auto z3 = cyclic_group(3);
    std::vector<std::vector<int>> phi(3, identity_map(3));
    auto ops = enumerate_relative_rb_operators(z3, z3, phi);
    REQUIRE(ops.size() == 3);
    for (const auto& r : ops) REQUIRE(hom_law_holds(GroupHom{z3, z3, r.R}));
  }
  SECTION("trivial H admits exactly one operator") {
    auto e = trivial_group();
    auto z4 = cyclic_group(4);
    std::vector<std::vector<int>> phi(4, std::vector<int>{0});
    auto ops = enumerate_relative_rb_operators(e, z4, phi);
    REQUIRE(ops.size() == 1);
  }
  SECTION("conjugation on S3 yields operators including the inverse map") {
    auto s3 = symmetric_group(3);
    std::vector<std::vector<int>> phi(6, std::vector<int>(6));
    for (int g = 0; g < 6; ++g)
      for (int x = 0; x < 6; ++x) phi[g][x] = s3->conj(g, x);
    auto ops = enumerate_relative_rb_operators(s3, s3, phi);
    std::vector<int> inv(6);
    for (int x = 0; x < 6; ++x) inv[x] = s3->invert(x);
    bool found = false;
    for (const auto& r : ops) found = found || r.R == inv;
    REQUIRE(found);
    REQUIRE(ops.size() >= 2);
  }
  SECTION("bound is enforced") {
    auto q8 = quaternion_group();
    auto big = direct_product(q8, cyclic_group(2));
    std::vector<std::vector<int>> phi(16, identity_map(16));
    REQUIRE_THROWS_AS(enumerate_relative_rb_operators(big, big, phi), Error);
  }
}

TEST_CASE("direct products of RRB groups") {
  RRBGroup a = inverse_rb(symmetric_group(3));
  RRBGroup b = trivial_rrb(cyclic_group(2), cyclic_group(2), identity_map(2));
  RRBGroup p = rrb_direct_product(a, b);
  REQUIRE(p.H->n == 12);
  REQUIRE(p.G->n == 12);
  REQUIRE(p.bijective());
}

TEST_CASE("hom kernel of a projection is an ideal (paper property)") {
  RRBGroup r = inverse_rb(quaternion_group());
  RRBQuotient q = rrb_quotient(r, rrb_center(r));
  RRBSubgroup ker = rrb_hom_kernel(r, q.projection);
  REQUIRE(is_ideal(r, ker).ok);
  REQUIRE(ker.K == rrb_center(r).K);
  REQUIRE(ker.L == rrb_center(r).L);
}
