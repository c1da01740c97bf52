#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rrb/brace.hpp"
#include "rrb/rrb.hpp"

namespace rrb {

/// Commutator subgroup repackaged with standalone carriers:
/// (H^phi, G, phi|, R|) and its iota form (H^phi, R(H^phi), phi|, R|).
struct CommutatorRRB {
  SubgroupGroup h;   // H^phi
  RRBGroup full;     // G-part = the whole parent G
  SubgroupGroup g;   // R(H^phi)
  RRBGroup iota;     // G-part = R(H^phi)
};

inline CommutatorRRB commutator_rrb(const RRBGroup& r) {
  CommutatorRRB c;
  RRBSubgroup comm = rrb_commutator(r);
  c.h = make_subgroup_group(SubgroupHandle{r.H, comm.K}, r.H->name + "^phi");
  int hn = c.h.group->n;

  std::vector<std::vector<int>> phi_full(r.G->n, std::vector<int>(hn));
  for (int g = 0; g < r.G->n; ++g)
    for (int x = 0; x < hn; ++x) {
      int img = c.h.from_parent[r.phi_of(g, c.h.to_parent[x])];
      require(img >= 0, Err::InternalError, "H^phi not phi-invariant");
      phi_full[g][x] = img;
    }
  std::vector<int> r_full(hn);
  for (int x = 0; x < hn; ++x) r_full[x] = r.R[c.h.to_parent[x]];
  c.full = verify_rrb(c.h.group, r.G, phi_full, r_full, r.name + "'");

  std::vector<int> rimg;
  for (int x = 0; x < hn; ++x) rimg.push_back(r_full[x]);
  std::sort(rimg.begin(), rimg.end());
  rimg.erase(std::unique(rimg.begin(), rimg.end()), rimg.end());
  c.g = make_subgroup_group(SubgroupHandle{r.G, rimg}, "R(" + r.H->name + "^phi)");
  std::vector<std::vector<int>> phi_io(c.g.group->n, std::vector<int>(hn));
  for (int gi = 0; gi < c.g.group->n; ++gi) phi_io[gi] = phi_full[c.g.to_parent[gi]];
  std::vector<int> r_io(hn);
  for (int x = 0; x < hn; ++x) r_io[x] = c.g.from_parent[r_full[x]];
  c.iota = verify_rrb(c.h.group, c.g.group, phi_io, r_io, "I(" + r.name + "')");
  return c;
}

/// Central quotient plus the two omega pairings valued in H^phi:
/// omega(h1,h2) = [h1,h2] and omega_phi(h1,h2) = phi_{R(h1)}(h2) h2^{-1},
/// both constant on central cosets (asserted over every representative).
struct OmegaTables {
  RRBQuotient q;
  CommutatorRRB comm;
  std::vector<int> omega;      // (qh x qh) -> H^phi local index
  std::vector<int> omega_phi;

  int qh() const { return q.quotient.H->n; }
};

inline OmegaTables omega_tables(const RRBGroup& r) {
  OmegaTables t{rrb_quotient(r, rrb_center(r)), commutator_rrb(r), {}, {}};
  int qn = t.qh();
  t.omega.assign(static_cast<std::size_t>(qn) * qn, -1);
  t.omega_phi.assign(static_cast<std::size_t>(qn) * qn, -1);
  auto value_omega = [&](int h1, int h2) { return r.H->comm(h1, h2); };
  auto value_omega_phi = [&](int h1, int h2) {
    return r.H->mul(r.phi_of(r.R[h1], h2), r.H->invert(h2));
  };
  for (int i = 0; i < qn; ++i)
    for (int j = 0; j < qn; ++j) {
      int h1 = t.q.h_rep[i], h2 = t.q.h_rep[j];
      int w = t.comm.h.from_parent[value_omega(h1, h2)];
      int wp = t.comm.h.from_parent[value_omega_phi(h1, h2)];
      require(w >= 0 && wp >= 0, Err::InternalError, "omega value escapes H^phi");
      t.omega[static_cast<std::size_t>(i) * qn + j] = w;
      t.omega_phi[static_cast<std::size_t>(i) * qn + j] = wp;
    }
  // well-defined for every representative choice
  for (int h1 = 0; h1 < r.H->n; ++h1)
    for (int h2 = 0; h2 < r.H->n; ++h2) {
      int i = t.q.projection.psi(h1), j = t.q.projection.psi(h2);
      require(t.comm.h.to_parent[t.omega[static_cast<std::size_t>(i) * qn + j]] == value_omega(h1, h2),
              Err::InternalError, "omega not constant on central cosets");
      require(t.comm.h.to_parent[t.omega_phi[static_cast<std::size_t>(i) * qn + j]] ==
                  value_omega_phi(h1, h2),
              Err::InternalError, "omega_phi not constant on central cosets");
    }
  return t;
}

struct IsoclinismWitness {
  bool weak = false;
  GroupHom psi1;  // quotient H-parts
  GroupHom eta1;  // quotient G-parts
  GroupHom psi2;  // H^phi groups (local indices)
  GroupHom eta2;  // strict: G1 -> G2; weak: R(H1^phi) -> R(H2^phi) (local)
};

/// Re-verify a witness independently of the search that produced it: the two
/// omega squares elementwise, psi2 a group isomorphism, (psi1, eta1) an RRB
/// isomorphism of central quotients, and (psi2, eta2) an RRB iso of the
/// commutators (strict) or an RRB hom of their iota forms (weak).
inline bool verify_isoclinism_witness(const RRBGroup& r1, const RRBGroup& r2,
                                      const IsoclinismWitness& w) {
  OmegaTables o1 = omega_tables(r1), o2 = omega_tables(r2);
  int q1 = o1.qh(), q2 = o2.qh();
  if (q1 != q2) return false;
  if (!hom_law_holds(w.psi1) || !w.psi1.is_bijective()) return false;
  if (!hom_law_holds(w.eta1) || !w.eta1.is_bijective()) return false;
  if (!is_rrb_hom(o1.q.quotient, o2.q.quotient, w.psi1, w.eta1)) return false;
  if (!hom_law_holds(w.psi2) || !w.psi2.is_bijective()) return false;
  for (int i = 0; i < q1; ++i)
    for (int j = 0; j < q1; ++j) {
      int ii = w.psi1(i), jj = w.psi1(j);
      if (w.psi2(o1.omega[static_cast<std::size_t>(i) * q1 + j]) !=
          o2.omega[static_cast<std::size_t>(ii) * q2 + jj])
        return false;
      if (w.psi2(o1.omega_phi[static_cast<std::size_t>(i) * q1 + j]) !=
          o2.omega_phi[static_cast<std::size_t>(ii) * q2 + jj])
        return false;
    }
  if (w.weak) {
    if (!hom_law_holds(w.eta2)) return false;
    if (!is_rrb_hom(o1.comm.iota, o2.comm.iota, w.psi2, w.eta2)) return false;
  } else {
    if (!hom_law_holds(w.eta2) || !w.eta2.is_bijective()) return false;
    if (!is_rrb_hom(o1.comm.full, o2.comm.full, w.psi2, w.eta2)) return false;
  }
  return true;
}

namespace detail {

/// Propagate multiplicative closure of a partial map on a group; false on
/// conflict with the homomorphism law or injectivity.
inline bool propagate_partial_iso(const FiniteGroup& dom, const FiniteGroup& cod,
                                  std::vector<int>& f) {
  for (;;) {
    bool changed = false;
    for (int x = 0; x < dom.n; ++x) {
      if (f[x] < 0) continue;
      for (int y = 0; y < dom.n; ++y) {
        if (f[y] < 0) continue;
        int z = dom.mul(x, y);
        int fz = cod.mul(f[x], f[y]);
        if (f[z] < 0) {
          f[z] = fz;
          changed = true;
        } else if (f[z] != fz) {
          return false;
        }
      }
    }
    if (!changed) break;
  }
  std::vector<char> used(cod.n, 0);
  for (int x = 0; x < dom.n; ++x) {
    if (f[x] < 0) continue;
    if (used[f[x]]) return false;
    used[f[x]] = 1;
  }
  return true;
}

/// All completions of a partial injective hom to a bijective hom, invoking
/// the sink for each; the sink returns true to stop the search.
inline bool complete_iso(const FiniteGroup& dom, const FiniteGroup& cod, std::vector<int> f,
                         const std::function<bool(const std::vector<int>&)>& sink) {
  if (!propagate_partial_iso(dom, cod, f)) return false;
  int u = -1;
  for (int x = 0; x < dom.n; ++x)
    if (f[x] < 0) {
      u = x;
      break;
    }
  if (u < 0) return sink(f);  // total; the sink performs the final checks
  std::vector<char> used(cod.n, 0);
  for (int x = 0; x < dom.n; ++x)
    if (f[x] >= 0) used[f[x]] = 1;
  int uo = dom.order_of(u);
  for (int c = 0; c < cod.n; ++c) {
    if (used[c] || cod.order_of(c) != uo) continue;
    std::vector<int> g = f;
    g[u] = c;
    if (complete_iso(dom, cod, std::move(g), sink)) return true;
  }
  return false;
}

}  // namespace detail

struct IsoclinismOutcome {
  std::optional<IsoclinismWitness> witness;
  std::string obstruction;  // why the search failed fast, when it did
};

/// Shared search: obstruction filters, then backtracking over RRB
/// isomorphisms (psi1, eta1) of the central quotients with psi2 forced on
/// omega images, extended over the rest of H^phi, then eta2 (forced for the
/// weak form, enumerated for the strict one).
inline IsoclinismOutcome isoclinism_search(const RRBGroup& r1, const RRBGroup& r2, bool weak,
                                           int bound = 16) {
  IsoclinismOutcome out;
  OmegaTables o1 = omega_tables(r1), o2 = omega_tables(r2);
  auto obstruct = [&](const std::string& why) {
    out.obstruction = why;
    return out;
  };
  if (o1.qh() != o2.qh() || o1.q.quotient.G->n != o2.q.quotient.G->n)
    return obstruct("central quotient orders differ");
  if (o1.comm.h.group->n != o2.comm.h.group->n) return obstruct("commutator orders differ");
  if (o1.q.quotient.H->element_order_multiset() != o2.q.quotient.H->element_order_multiset() ||
      o1.q.quotient.G->element_order_multiset() != o2.q.quotient.G->element_order_multiset() ||
      o1.comm.h.group->element_order_multiset() != o2.comm.h.group->element_order_multiset())
    return obstruct("element order profiles differ");
  if (!weak && r1.G->n != r2.G->n) return obstruct("G-part orders differ (strict mode)");

  require(o1.qh() <= bound && o1.comm.h.group->n <= bound, Err::SearchBoundExceeded,
          "isoclinism search bound " + std::to_string(bound));
  if (!weak)
    require(r1.G->n <= std::max(bound, 24), Err::SearchBoundExceeded,
            "strict isoclinism eta2 search bound");

  const FiniteGroup& hp1 = *o1.comm.h.group;
  const FiniteGroup& hp2 = *o2.comm.h.group;
  int qn = o1.qh();

  for (const GroupHom& psi1 : enumerate_isos(o1.q.quotient.H, o2.q.quotient.H, bound)) {
    for (const GroupHom& eta1 : enumerate_isos(o1.q.quotient.G, o2.q.quotient.G, bound)) {
      if (!is_rrb_hom(o1.q.quotient, o2.q.quotient, psi1, eta1)) continue;
      // force psi2 on the omega images
      std::vector<int> f(hp1.n, -1);
      f[0] = 0;
      bool ok = true;
      for (int i = 0; i < qn && ok; ++i)
        for (int j = 0; j < qn && ok; ++j) {
          int src = o1.omega[static_cast<std::size_t>(i) * qn + j];
          int dst = o2.omega[static_cast<std::size_t>(psi1(i)) * qn + psi1(j)];
          if (f[src] < 0)
            f[src] = dst;
          else
            ok = f[src] == dst;
          if (!ok) break;
          src = o1.omega_phi[static_cast<std::size_t>(i) * qn + j];
          dst = o2.omega_phi[static_cast<std::size_t>(psi1(i)) * qn + psi1(j)];
          if (f[src] < 0)
            f[src] = dst;
          else
            ok = f[src] == dst;
        }
      if (!ok) continue;

      auto try_psi2 = [&](const std::vector<int>& image) -> bool {
        GroupHom psi2{o1.comm.h.group, o2.comm.h.group, image};
        if (!hom_law_holds(psi2) || !psi2.is_bijective()) return false;
        if (weak) {
          // eta2 is forced on R(H1^phi) by eta2(R(x)) = R(psi2(x))
          std::vector<int> e(o1.comm.g.group->n, -1);
          for (int x = 0; x < hp1.n; ++x) {
            int src = o1.comm.iota.R[x];
            int dst = o2.comm.iota.R[image[x]];
            if (e[src] < 0)
              e[src] = dst;
            else if (e[src] != dst)
              return false;
          }
          GroupHom eta2{o1.comm.g.group, o2.comm.g.group, e};
          if (!hom_law_holds(eta2)) return false;
          if (!is_rrb_hom(o1.comm.iota, o2.comm.iota, psi2, eta2)) return false;
          IsoclinismWitness w{true, psi1, eta1, psi2, eta2};
          require(verify_isoclinism_witness(r1, r2, w), Err::InternalError,
                  "weak witness failed re-verification");
          out.witness = std::move(w);
          return true;
        }
        // strict: enumerate isomorphisms G1 -> G2 compatible with psi2
        for (const GroupHom& eta2 : enumerate_isos(r1.G, r2.G, std::max(bound, 24))) {
          if (!is_rrb_hom(o1.comm.full, o2.comm.full, psi2, eta2)) continue;
          IsoclinismWitness w{false, psi1, eta1, psi2, eta2};
          require(verify_isoclinism_witness(r1, r2, w), Err::InternalError,
                  "strict witness failed re-verification");
          out.witness = std::move(w);
          return true;
        }
        return false;
      };
      if (detail::complete_iso(hp1, hp2, f, try_psi2)) return out;
    }
  }
  if (out.obstruction.empty()) out.obstruction = "search exhausted";
  return out;
}

inline IsoclinismOutcome are_isoclinic(const RRBGroup& r1, const RRBGroup& r2, int bound = 16) {
  return isoclinism_search(r1, r2, false, bound);
}

inline IsoclinismOutcome are_weakly_isoclinic(const RRBGroup& r1, const RRBGroup& r2,
                                              int bound = 16) {
  return isoclinism_search(r1, r2, true, bound);
}

// ---- consequences and transports ---------------------------------------------

/// The Prop-indiso invariants that any (weakly) isoclinic pair must satisfy:
/// im(R)/(im R & ker phi) iso, displacement subgroups iso, H/Z^{phi|}_{R|} iso.
inline bool indiso_consequences_hold(const RRBGroup& r1, const RRBGroup& r2, int bound = 24) {
  auto imr_mod_ker = [&](const RRBGroup& r) {
    IotaResult io = iota(r);
    RRBSubgroup z = rrb_center(io.rrb);  // L-part = ker(phi|) inside R(H)
    QuotientGroup q = quotient_group(io.rrb.G, SubgroupHandle{io.rrb.G, z.L});
    return q.group;
  };
  if (!is_isomorphic(imr_mod_ker(r1), imr_mod_ker(r2), bound)) return false;

  auto displacement_group = [&](const RRBGroup& r) {
    std::vector<int> gens;
    for (int h1 = 0; h1 < r.H->n; ++h1)
      for (int h2 = 0; h2 < r.H->n; ++h2)
        gens.push_back(r.H->mul(r.phi_of(r.R[h1], h2), r.H->invert(h2)));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return make_subgroup_group(SubgroupHandle{r.H, subgroup_generated(r.H, gens).elements}, "disp").group;
  };
  if (!is_isomorphic(displacement_group(r1), displacement_group(r2), bound)) return false;

  auto h_mod_iota_center = [&](const RRBGroup& r) {
    IotaResult io = iota(r);
    RRBSubgroup z = rrb_center(io.rrb);
    QuotientGroup q = quotient_group(io.rrb.H, SubgroupHandle{io.rrb.H, z.K});
    return q.group;
  };
  return is_isomorphic(h_mod_iota_center(r1), h_mod_iota_center(r2), bound);
}

/// Weak-isoclinism witness transported to the iota pair (the restriction
/// construction of the proposition), re-verified from scratch.
inline IsoclinismWitness transport_wiso_to_iota(const RRBGroup& r1, const RRBGroup& r2,
                                                const IsoclinismWitness& w) {
  IotaResult i1 = iota(r1), i2 = iota(r2);
  OmegaTables p1 = omega_tables(r1), p2 = omega_tables(r2);
  OmegaTables o1 = omega_tables(i1.rrb), o2 = omega_tables(i2.rrb);

  // psi1-bar: induced on the (coarser) iota central quotients
  std::vector<int> psi1b(o1.qh(), -1);
  for (int h = 0; h < r1.H->n; ++h) {
    int src = o1.q.projection.psi(h);
    // image coset: map h through psi1 on the original quotient, lift, project
    int mid = w.psi1(p1.q.projection.psi(h));
    int img = o2.q.projection.psi(p2.q.h_rep[mid]);
    if (psi1b[src] < 0)
      psi1b[src] = img;
    else
      require(psi1b[src] == img, Err::TheoremViolation, "transported psi1 is not well-defined");
  }
  GroupHom psi1{o1.q.quotient.H, o2.q.quotient.H, psi1b};

  // eta1-bar on R(H1)/ker(phi|): send R1(h) to R2 of any psi1-compatible lift
  std::vector<int> eta1b(o1.q.quotient.G->n, -1);
  for (int h = 0; h < r1.H->n; ++h) {
    int src = o1.q.projection.eta(i1.rrb.R[h]);
    int mid = w.psi1(p1.q.projection.psi(h));
    int h2 = p2.q.h_rep[mid];
    int img = o2.q.projection.eta(i2.rrb.R[h2]);
    if (eta1b[src] < 0)
      eta1b[src] = img;
    else
      require(eta1b[src] == img, Err::TheoremViolation, "transported eta1 is not well-defined");
  }
  for (int v : eta1b) require(v >= 0, Err::TheoremViolation, "transported eta1 not total");
  GroupHom eta1{o1.q.quotient.G, o2.q.quotient.G, eta1b};

  // psi2 restricted to H^{phi|} (local index translation through the parents)
  std::vector<int> psi2r(o1.comm.h.group->n, -1);
  for (int x = 0; x < o1.comm.h.group->n; ++x) {
    int parent = o1.comm.h.to_parent[x];
    int in_full = p1.comm.h.from_parent[parent];
    require(in_full >= 0, Err::InternalError, "H^{phi|} escapes H^phi");
    int img_parent = p2.comm.h.to_parent[w.psi2(in_full)];
    int img = o2.comm.h.from_parent[img_parent];
    require(img >= 0, Err::TheoremViolation, "psi2 does not restrict to H^{phi|}");
    psi2r[x] = img;
  }
  GroupHom psi2{o1.comm.h.group, o2.comm.h.group, psi2r};

  // eta2 forced on R(H^{phi|})
  std::vector<int> eta2r(o1.comm.g.group->n, -1);
  for (int x = 0; x < o1.comm.h.group->n; ++x) {
    int src = o1.comm.iota.R[x];
    int dst = o2.comm.iota.R[psi2r[x]];
    if (eta2r[src] < 0)
      eta2r[src] = dst;
    else
      require(eta2r[src] == dst, Err::TheoremViolation, "transported eta2 is not well-defined");
  }
  GroupHom eta2{o1.comm.g.group, o2.comm.g.group, eta2r};

  IsoclinismWitness out{true, psi1, eta1, psi2, eta2};
  require(verify_isoclinism_witness(i1.rrb, i2.rrb, out), Err::TheoremViolation,
          "transported iota witness failed verification");
  return out;
}

/// Weak isoclinism of RRB groups transports to isoclinism of the induced
/// braces (the theorem's construction): the annihilator quotient map comes
/// from the transported psi1, the commutator map from the restricted psi2.
inline BraceIsoWitness transport_wiso_to_braces(const RRBGroup& r1, const RRBGroup& r2,
                                                const IsoclinismWitness& w) {
  IsoclinismWitness wi = transport_wiso_to_iota(r1, r2, w);
  IotaResult i1 = iota(r1), i2 = iota(r2);
  SkewBrace b1 = induced_brace(r1), b2 = induced_brace(r2);

  // Ann(H_R) coincides with the H-part of Z(I(r)) (asserted)
  RRBSubgroup z1 = rrb_center(i1.rrb), z2 = rrb_center(i2.rrb);
  require(brace_annihilator(b1) == z1.K && brace_annihilator(b2) == z2.K, Err::TheoremViolation,
          "brace annihilator differs from the iota center");

  BraceThetaTables t1 = brace_theta_tables(b1), t2 = brace_theta_tables(b2);
  // the brace quotient and the iota central quotient share coset structure;
  // translate wi.psi1 across representative labelings
  OmegaTables o1 = omega_tables(i1.rrb), o2 = omega_tables(i2.rrb);
  int qn = t1.q.quotient.n();
  std::vector<int> xi1(qn, -1);
  for (int h = 0; h < b1.n(); ++h) {
    int src = t1.q.coset_of[h];
    int mid = wi.psi1(o1.q.projection.psi(h));
    int img = t2.q.coset_of[o2.q.h_rep[mid]];
    if (xi1[src] < 0)
      xi1[src] = img;
    else
      require(xi1[src] == img, Err::TheoremViolation, "xi1 not well-defined on the brace quotient");
  }
  // brace commutator = H^{phi|}: translate wi.psi2 across labelings
  require(t1.comm.to_parent == o1.comm.h.to_parent && t2.comm.to_parent == o2.comm.h.to_parent,
          Err::TheoremViolation, "brace commutator differs from H^{phi|}");
  GroupHom xi2{t1.comm.group, t2.comm.group, wi.psi2.image};
  GroupHom xi1h{t1.q.quotient.dot, t2.q.quotient.dot, xi1};

  require(hom_law_holds(xi1h) && xi1h.is_bijective(), Err::TheoremViolation,
          "xi1 is not a dot isomorphism");
  for (int i = 0; i < qn; ++i)
    for (int j = 0; j < qn; ++j)
      require(xi1[t1.q.quotient.c(i, j)] == t2.q.quotient.c(xi1[i], xi1[j]), Err::TheoremViolation,
              "xi1 is not a circle isomorphism");
  require(check_brace_iso_witness(t1, t2, xi1, xi2.image), Err::TheoremViolation,
          "transported brace witness fails the theta squares");
  return BraceIsoWitness{xi1h, xi2};
}

}  // namespace rrb
