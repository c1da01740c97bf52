#include <catch2/catch_amalgamated.hpp>

#include "rrb/cohomology.hpp"
#include "rrb/isoclinism.hpp"

using namespace rrb;

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

RRBGroup trivial_pad() {
  // trivial everything: H = Z2, G = 1, phi trivial, R constant
  return trivial_rrb(cyclic_group(2), trivial_group(), {0, 0}, "pad");
}

}  // namespace

TEST_CASE("omega tables") {
  SECTION("abelian H with trivial phi: both pairings vanish on a point quotient") {
    auto z4 = cyclic_group(4);
    OmegaTables t = omega_tables(trivial_rrb(z4, z4, identity_map(4)));
    REQUIRE(t.qh() == 1);
    REQUIRE(t.omega == std::vector<int>{0});
    REQUIRE(t.omega_phi == std::vector<int>{0});
  }
  SECTION("trivial RRB group on S3: omega is the commutator pairing, omega_phi vanishes") {
    auto s3 = symmetric_group(3);
    RRBGroup r = trivial_rrb(s3, s3, identity_map(6));
    OmegaTables t = omega_tables(r);
    REQUIRE(t.qh() == 6);  // Z(S3) trivial
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        int h1 = t.q.h_rep[i], h2 = t.q.h_rep[j];
        REQUIRE(t.comm.h.to_parent[t.omega[i * 6 + j]] == s3->comm(h1, h2));
        REQUIRE(t.omega_phi[i * 6 + j] == 0);
      }
  }
  SECTION("omega of a built extension lies over the base omega") {
    auto z2 = cyclic_group(2);
    RRBGroup base = trivial_rrb(z2, z2, identity_map(2));
    TrivialRRBModule mod = cyclic_module(2);
    H2Classes h = h2_rrb(base, mod);
    for (const Cocycle4& c : h.basis) {
      ExtensionData ext = extension_from_cocycle(base, mod, c);
      OmegaTables tt = omega_tables(ext.total);
      OmegaTables tb = omega_tables(base);
      int qt = tt.qh(), qb = tb.qh();
      for (int i = 0; i < qt; ++i)
        for (int j = 0; j < qt; ++j) {
          int x = tt.q.h_rep[i], y = tt.q.h_rep[j];
          int bi = tb.q.projection.psi(ext.proj.psi(x));
          int bj = tb.q.projection.psi(ext.proj.psi(y));
          int v_total = tt.comm.h.to_parent[tt.omega[i * qt + j]];
          int v_base = tb.comm.h.to_parent[tb.omega[bi * qb + bj]];
          REQUIRE(ext.proj.psi(v_total) == v_base);
          int p_total = tt.comm.h.to_parent[tt.omega_phi[i * qt + j]];
          int p_base = tb.comm.h.to_parent[tb.omega_phi[bi * qb + bj]];
          REQUIRE(ext.proj.psi(p_total) == p_base);
        }
    }
  }
}

TEST_CASE("isoclinism decisions") {
  SECTION("every RRB group is isoclinic to itself") {
    for (const RRBGroup& r : {inverse_rb(symmetric_group(3)),
                              trivial_rrb(cyclic_group(4), cyclic_group(4), identity_map(4)),
                              inverse_rb(quaternion_group())}) {
      IsoclinismOutcome o = are_isoclinic(r, r);
      REQUIRE(o.witness.has_value());
      REQUIRE(verify_isoclinism_witness(r, r, *o.witness));
    }
  }
  SECTION("padding by a trivial direct factor preserves isoclinism") {
    RRBGroup r = inverse_rb(symmetric_group(3));
    RRBGroup padded = rrb_direct_product(r, trivial_pad());
    IsoclinismOutcome o = are_isoclinic(r, padded);
    REQUIRE(o.witness.has_value());
    REQUIRE(verify_isoclinism_witness(r, padded, *o.witness));
    // and in the weak sense with the same machinery
    IsoclinismOutcome w = are_weakly_isoclinic(r, padded);
    REQUIRE(w.witness.has_value());
  }
  SECTION("commutator order obstruction") {
    RRBGroup a = trivial_rrb(cyclic_group(4), cyclic_group(4), identity_map(4));
    RRBGroup b = trivial_rrb(symmetric_group(3), symmetric_group(3), identity_map(6));
    IsoclinismOutcome o = are_isoclinic(a, b);
    REQUIRE_FALSE(o.witness.has_value());
    REQUIRE_FALSE(o.obstruction.empty());
  }
  SECTION("isoclinic pairs are weakly isoclinic") {
    RRBGroup r = inverse_rb(quaternion_group());
    IsoclinismOutcome o = are_weakly_isoclinic(r, r);
    REQUIRE(o.witness.has_value());
    REQUIRE(o.witness->weak);
  }
  SECTION("symmetry: search succeeds in both directions") {
    RRBGroup r = inverse_rb(symmetric_group(3));
    RRBGroup padded = rrb_direct_product(r, trivial_pad());
    REQUIRE(are_isoclinic(r, padded).witness.has_value());
    REQUIRE(are_isoclinic(padded, r).witness.has_value());
  }
  SECTION("search bound is enforced") {
    auto s4 = symmetric_group(4);
    RRBGroup r = trivial_rrb(s4, s4, identity_map(24));
    REQUIRE_THROWS_AS(are_isoclinic(r, r, 16), Error);
  }
}

TEST_CASE("indiso consequences hold for isoclinic pairs") {
  RRBGroup r = inverse_rb(symmetric_group(3));
  RRBGroup padded = rrb_direct_product(r, trivial_pad());
  REQUIRE(are_isoclinic(r, padded).witness.has_value());
  REQUIRE(indiso_consequences_hold(r, padded));
  // iota pair isoclinic (fourth consequence)
  REQUIRE(are_isoclinic(iota(r).rrb, iota(padded).rrb).witness.has_value());
}

TEST_CASE("weak witness transports") {
  RRBGroup r = inverse_rb(symmetric_group(3));
  RRBGroup padded = rrb_direct_product(r, trivial_pad());
  IsoclinismOutcome o = are_weakly_isoclinic(r, padded);
  REQUIRE(o.witness.has_value());
  SECTION("to the iota pair (restriction construction)") {
    IsoclinismWitness wi = transport_wiso_to_iota(r, padded, *o.witness);
    REQUIRE(wi.weak);
    REQUIRE(verify_isoclinism_witness(iota(r).rrb, iota(padded).rrb, wi));
  }
  SECTION("to the induced braces (isoclinism of skew braces)") {
    BraceIsoWitness bw = transport_wiso_to_braces(r, padded, *o.witness);
    SkewBrace b1 = induced_brace(r), b2 = induced_brace(padded);
    BraceThetaTables t1 = brace_theta_tables(b1), t2 = brace_theta_tables(b2);
    REQUIRE(check_brace_iso_witness(t1, t2, bw.xi1_dot.image, bw.xi2.image));
    // the transported witness agrees with an independent brace-level search
    REQUIRE(brace_isoclinic(b1, b2).has_value());
  }
}
