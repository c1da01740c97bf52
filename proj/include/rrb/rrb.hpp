#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rrb/group.hpp"

namespace rrb {

/// Relative Rota-Baxter group (H, G, phi, R): phi a homomorphism G -> Aut(H)
/// stored extensionally (one permutation of H per element of G), R: H -> G
/// satisfying R(h1) R(h2) = R(h1 phi_{R(h1)}(h2)). Immutable once validated.
struct RRBGroup {
  GroupPtr H;
  GroupPtr G;
  std::vector<std::vector<int>> phi;  // phi[g][h]
  std::vector<int> R;                 // R[h] in G
  std::string name;

  int phi_of(int g, int h) const { return phi[g][h]; }

  /// Descendent product h1 o h2 = h1 * phi_{R(h1)}(h2).
  int circ(int h1, int h2) const { return H->mul(h1, phi[R[h1]][h2]); }

  bool trivial_phi() const {
    for (int g = 0; g < G->n; ++g)
      for (int h = 0; h < H->n; ++h)
        if (phi[g][h] != h) return false;
    return true;
  }

  bool bijective() const {
    if (H->n != G->n) return false;
    std::vector<char> seen(G->n, 0);
    for (int v : R) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }
};

/// First violated axiom, or nothing when (H, G, phi, R) is a relative
/// Rota-Baxter group. Used both for validation and as the construction-side
/// oracle against the linear cocycle conditions.
inline std::optional<Error> check_rrb(const GroupPtr& H, const GroupPtr& G,
                                      const std::vector<std::vector<int>>& phi,
                                      const std::vector<int>& R) {
  if (static_cast<int>(phi.size()) != G->n)
    return Error(Err::ShapeMismatch, "phi has " + std::to_string(phi.size()) + " rows, |G| = " + std::to_string(G->n));
  for (int g = 0; g < G->n; ++g) {
    if (static_cast<int>(phi[g].size()) != H->n)
      return Error(Err::ShapeMismatch, "phi row " + std::to_string(g));
    std::vector<char> seen(H->n, 0);
    for (int h = 0; h < H->n; ++h) {
      int v = phi[g][h];
      if (v < 0 || v >= H->n || seen[v])
        return Error(Err::PhiNotAutomorphism, "phi[" + std::to_string(g) + "] is not a permutation");
      seen[v] = 1;
    }
    if (phi[g][0] != 0)
      return Error(Err::PhiNotAutomorphism, "phi[" + std::to_string(g) + "] moves the identity");
    for (int x = 0; x < H->n; ++x)
      for (int y = 0; y < H->n; ++y)
        if (phi[g][H->mul(x, y)] != H->mul(phi[g][x], phi[g][y]))
          return Error(Err::PhiNotAutomorphism, "phi[" + std::to_string(g) + "] at (" +
                                                    std::to_string(x) + "," + std::to_string(y) + ")");
  }
  for (int h = 0; h < H->n; ++h)
    if (phi[0][h] != h) return Error(Err::PhiNotAction, "phi[identity] is not the identity map");
  for (int g1 = 0; g1 < G->n; ++g1)
    for (int g2 = 0; g2 < G->n; ++g2) {
      int g12 = G->mul(g1, g2);
      for (int h = 0; h < H->n; ++h)
        if (phi[g12][h] != phi[g1][phi[g2][h]])
          return Error(Err::PhiNotAction, "phi[g1 g2] != phi[g1] phi[g2] at (g1=" + std::to_string(g1) +
                                              ", g2=" + std::to_string(g2) + ", h=" + std::to_string(h) + ")");
    }
  if (static_cast<int>(R.size()) != H->n)
    return Error(Err::ShapeMismatch, "R has length " + std::to_string(R.size()));
  for (int v : R)
    if (v < 0 || v >= G->n) return Error(Err::IndexOutOfRange, "R value " + std::to_string(v));
  for (int h1 = 0; h1 < H->n; ++h1)
    for (int h2 = 0; h2 < H->n; ++h2) {
      int lhs = G->mul(R[h1], R[h2]);
      int rhs = R[H->mul(h1, phi[R[h1]][h2])];
      if (lhs != rhs)
        return Error(Err::RBIdentityFails,
                     "(h1=" + std::to_string(h1) + ", h2=" + std::to_string(h2) + ")");
    }
  return std::nullopt;  // R(1)=1 is forced by the identity at (1,1)
}

inline RRBGroup verify_rrb(const GroupPtr& H, const GroupPtr& G,
                           const std::vector<std::vector<int>>& phi, const std::vector<int>& R,
                           const std::string& name = "") {
  if (auto err = check_rrb(H, G, phi, R)) throw *err;
  return RRBGroup{H, G, phi, R, name.empty() ? "(" + H->name + "," + G->name + ")" : name};
}

/// Trivial action (A, B, triv, T): valid exactly when T is a homomorphism.
inline RRBGroup trivial_rrb(const GroupPtr& A, const GroupPtr& B, const std::vector<int>& T,
                            const std::string& name = "") {
  std::vector<std::vector<int>> phi(B->n);
  std::vector<int> id(A->n);
  for (int h = 0; h < A->n; ++h) id[h] = h;
  for (int g = 0; g < B->n; ++g) phi[g] = id;
  return verify_rrb(A, B, phi, T, name);
}

/// Rota-Baxter group (G, G, conj, R).
inline RRBGroup conjugation_rrb(const GroupPtr& G, const std::vector<int>& R,
                                const std::string& name = "") {
  std::vector<std::vector<int>> phi(G->n, std::vector<int>(G->n));
  for (int g = 0; g < G->n; ++g)
    for (int x = 0; x < G->n; ++x) phi[g][x] = G->conj(g, x);
  return verify_rrb(G, G, phi, R, name);
}

/// The inverse map is a Rota-Baxter operator on every (G, G, conj).
inline RRBGroup inverse_rb(const GroupPtr& G) {
  std::vector<int> R(G->n);
  for (int x = 0; x < G->n; ++x) R[x] = G->invert(x);
  return conjugation_rrb(G, R, "(" + G->name + ",conj,inv)");
}

struct RRBSubgroup {
  std::vector<int> K;  // sorted subset of H indices
  std::vector<int> L;  // sorted subset of G indices

  bool k_contains(int x) const { return std::binary_search(K.begin(), K.end(), x); }
  bool l_contains(int x) const { return std::binary_search(L.begin(), L.end(), x); }
};

/// K and L must be subgroups with phi_l(K) <= K for l in L and R(K) <= L.
inline std::optional<std::string> check_rrb_subgroup(const RRBGroup& r, const RRBSubgroup& s) {
  if (!is_subgroup(SubgroupHandle{r.H, s.K})) return "K is not a subgroup of H";
  if (!is_subgroup(SubgroupHandle{r.G, s.L})) return "L is not a subgroup of G";
  for (int l : s.L)
    for (int k : s.K)
      if (!s.k_contains(r.phi_of(l, k)))
        return "phi_l(K) escapes K at (l=" + std::to_string(l) + ", k=" + std::to_string(k) + ")";
  for (int k : s.K)
    if (!s.l_contains(r.R[k])) return "R(K) escapes L at k=" + std::to_string(k);
  return std::nullopt;
}

inline RRBSubgroup whole_rrb_subgroup(const RRBGroup& r) {
  return RRBSubgroup{whole_subgroup(r.H).elements, whole_subgroup(r.G).elements};
}

/// Descendent group H^(o_R) on the same index set, plus R as a verified
/// homomorphism out of it.
inline std::pair<GroupPtr, GroupHom> descendent_group(const RRBGroup& r) {
  int n = r.H->n;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = r.circ(a, b);
  GroupPtr desc = build_group(t, r.H->name + "^circ");
  GroupHom rh{desc, r.G, r.R};
  require(hom_law_holds(rh), Err::InternalError, "R is not a hom out of the descendent group");
  return {desc, rh};
}

/// Z(H, G, phi, R) = (Z(H) & ker(phi R) & Fix(phi), ker(phi)).
inline RRBSubgroup rrb_center(const RRBGroup& r) {
  std::vector<int> zh;
  SubgroupHandle z = center_of(r.H);
  for (int x : z.elements) {
    bool fix = true;
    for (int g = 0; g < r.G->n && fix; ++g) fix = r.phi_of(g, x) == x;
    if (!fix) continue;
    bool ker_phir = true;  // phi_{R(x)} acts as the identity on (H, o_R) viewed through R
    for (int h = 0; h < r.H->n && ker_phir; ++h) ker_phir = r.phi_of(r.R[x], h) == h;
    if (ker_phir) zh.push_back(x);
  }
  std::vector<int> kerphi;
  for (int g = 0; g < r.G->n; ++g) {
    bool id = true;
    for (int h = 0; h < r.H->n && id; ++h) id = r.phi_of(g, h) == h;
    if (id) kerphi.push_back(g);
  }
  RRBSubgroup s{std::move(zh), std::move(kerphi)};
  if (auto why = check_rrb_subgroup(r, s)) fail(Err::InternalError, "center: " + *why);
  return s;
}

/// Commutator subgroup (H^phi, G): H^phi is generated by group commutators
/// together with all displacements phi_g(h) h^{-1}.
inline RRBSubgroup rrb_commutator(const RRBGroup& r) {
  std::vector<int> gens;
  for (int x = 0; x < r.H->n; ++x)
    for (int y = 0; y < r.H->n; ++y) gens.push_back(r.H->comm(x, y));
  for (int g = 0; g < r.G->n; ++g)
    for (int h = 0; h < r.H->n; ++h) gens.push_back(r.H->mul(r.phi_of(g, h), r.H->invert(h)));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  SubgroupHandle hphi = subgroup_generated(r.H, gens);
  RRBSubgroup s{hphi.elements, whole_subgroup(r.G).elements};
  if (auto why = check_rrb_subgroup(r, s)) fail(Err::InternalError, "commutator: " + *why);
  return s;
}

struct Decision {
  bool ok = false;
  std::string condition;  // violated condition when !ok
  std::string witness;
};

/// Ideal test: K normal in H, L normal in G, phi_g(K) <= K for all g, and
/// phi_l(h) h^{-1} in K for all h in H, l in L.
inline Decision is_ideal(const RRBGroup& r, const RRBSubgroup& s) {
  if (auto why = check_rrb_subgroup(r, s)) fail(Err::NotSubgroup, *why);
  SubgroupHandle k{r.H, s.K}, l{r.G, s.L};
  if (auto w = normality_witness(k))
    return {false, "I0", "K not normal: conj by " + std::to_string(w->first)};
  if (auto w = normality_witness(l))
    return {false, "I0", "L not normal: conj by " + std::to_string(w->first)};
  for (int g = 0; g < r.G->n; ++g)
    for (int x : s.K)
      if (!s.k_contains(r.phi_of(g, x)))
        return {false, "I1", "phi_" + std::to_string(g) + "(" + std::to_string(x) + ") outside K"};
  for (int ell : s.L)
    for (int h = 0; h < r.H->n; ++h)
      if (!s.k_contains(r.H->mul(r.phi_of(ell, h), r.H->invert(h))))
        return {false, "I2",
                "phi_" + std::to_string(ell) + "(" + std::to_string(h) + ") h^-1 outside K"};
  return {true, "", ""};
}

struct RRBHom {
  GroupHom psi;  // H1 -> H2
  GroupHom eta;  // G1 -> G2
};

/// Check the two compatibility equations eta R = S psi and
/// psi phi_g = phi'_{eta(g)} psi; throws CompatibilityFails with a witness.
inline RRBHom verify_rrb_hom(const RRBGroup& r1, const RRBGroup& r2, const GroupHom& psi,
                             const GroupHom& eta) {
  require(hom_law_holds(psi), Err::CompatibilityFails, "psi is not a group homomorphism");
  require(hom_law_holds(eta), Err::CompatibilityFails, "eta is not a group homomorphism");
  for (int h = 0; h < r1.H->n; ++h)
    require(eta(r1.R[h]) == r2.R[psi(h)], Err::CompatibilityFails,
            "eta R != S psi at h=" + std::to_string(h));
  for (int g = 0; g < r1.G->n; ++g)
    for (int h = 0; h < r1.H->n; ++h)
      require(psi(r1.phi_of(g, h)) == r2.phi_of(eta(g), psi(h)), Err::CompatibilityFails,
              "psi phi_g != phi'_{eta g} psi at (g=" + std::to_string(g) + ", h=" + std::to_string(h) + ")");
  return RRBHom{psi, eta};
}

inline bool is_rrb_hom(const RRBGroup& r1, const RRBGroup& r2, const GroupHom& psi,
                       const GroupHom& eta) {
  if (!hom_law_holds(psi) || !hom_law_holds(eta)) return false;
  for (int h = 0; h < r1.H->n; ++h)
    if (eta(r1.R[h]) != r2.R[psi(h)]) return false;
  for (int g = 0; g < r1.G->n; ++g)
    for (int h = 0; h < r1.H->n; ++h)
      if (psi(r1.phi_of(g, h)) != r2.phi_of(eta(g), psi(h))) return false;
  return true;
}

/// Kernel of an RRB homomorphism; always an ideal of the domain (asserted).
inline RRBSubgroup rrb_hom_kernel(const RRBGroup& r1, const RRBHom& f) {
  RRBSubgroup ker{hom_kernel(f.psi).elements, hom_kernel(f.eta).elements};
  Decision d = is_ideal(r1, ker);
  require(d.ok, Err::InternalError, "hom kernel is not an ideal: " + d.condition);
  return ker;
}

/// Image of an RRB homomorphism; an RRB subgroup of the codomain (asserted).
inline RRBSubgroup rrb_hom_image(const RRBGroup& r2, const RRBHom& f) {
  RRBSubgroup img{hom_image(f.psi).elements, hom_image(f.eta).elements};
  if (auto why = check_rrb_subgroup(r2, img)) fail(Err::InternalError, "hom image: " + *why);
  return img;
}

struct RRBQuotient {
  RRBGroup quotient;
  RRBHom projection;
  std::vector<int> h_rep;  // quotient H index -> minimal parent representative
  std::vector<int> g_rep;
};

/// Quotient by an ideal, with induced phi-bar and R-bar. Well-definedness on
/// coset representatives is asserted exhaustively.
inline RRBQuotient rrb_quotient(const RRBGroup& r, const RRBSubgroup& ideal) {
  Decision d = is_ideal(r, ideal);
  if (!d.ok) fail(Err::NotIdeal, d.condition + " " + d.witness);
  QuotientGroup qh = quotient_group(r.H, SubgroupHandle{r.H, ideal.K});
  QuotientGroup qg = quotient_group(r.G, SubgroupHandle{r.G, ideal.L});

  std::vector<std::vector<int>> phibar(qg.group->n, std::vector<int>(qh.group->n));
  for (int gq = 0; gq < qg.group->n; ++gq)
    for (int hq = 0; hq < qh.group->n; ++hq)
      phibar[gq][hq] = qh.projection(r.phi_of(qg.coset_rep[gq], qh.coset_rep[hq]));
  // well-defined over every representative choice
  for (int g = 0; g < r.G->n; ++g)
    for (int h = 0; h < r.H->n; ++h)
      require(phibar[qg.projection(g)][qh.projection(h)] == qh.projection(r.phi_of(g, h)),
              Err::InternalError, "phi-bar not well-defined");
  std::vector<int> rbar(qh.group->n);
  for (int hq = 0; hq < qh.group->n; ++hq) rbar[hq] = qg.projection(r.R[qh.coset_rep[hq]]);
  for (int h = 0; h < r.H->n; ++h)
    require(rbar[qh.projection(h)] == qg.projection(r.R[h]), Err::InternalError,
            "R-bar not well-defined");

  RRBQuotient out{verify_rrb(qh.group, qg.group, phibar, rbar, r.name + "/Z"),
                  RRBHom{qh.projection, qg.projection}, qh.coset_rep, qg.coset_rep};
  verify_rrb_hom(r, out.quotient, out.projection.psi, out.projection.eta);
  return out;
}

struct IotaResult {
  RRBGroup rrb;            // (H, R(H), phi|, R|)
  SubgroupGroup g_embed;   // R(H) as a standalone group
};

/// I(H, G, phi, R) = (H, R(H), phi|, R|).
inline IotaResult iota(const RRBGroup& r) {
  std::vector<int> img = r.R;
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  SubgroupHandle s = subgroup_generated(r.G, img);
  require(s.elements == img, Err::InternalError, "R(H) is not a subgroup");
  SubgroupGroup sg = make_subgroup_group(SubgroupHandle{r.G, img}, "R(" + r.H->name + ")");
  std::vector<std::vector<int>> phi(sg.group->n);
  for (int i = 0; i < sg.group->n; ++i) phi[i] = r.phi[sg.to_parent[i]];
  std::vector<int> rr(r.H->n);
  for (int h = 0; h < r.H->n; ++h) rr[h] = sg.from_parent[r.R[h]];
  IotaResult out{verify_rrb(r.H, sg.group, phi, rr, "I(" + r.name + ")"), std::move(sg)};
  return out;
}

/// All relative Rota-Baxter operators R: H -> G for a fixed action, by
/// backtracking with pruning on partially checked pairs. R(1)=1 is enforced.
inline std::vector<RRBGroup> enumerate_relative_rb_operators(const GroupPtr& H, const GroupPtr& G,
                                                             const std::vector<std::vector<int>>& phi,
                                                             int bound = 8) {
  require(H->n <= bound && G->n <= bound, Err::SearchBoundExceeded,
          "operator enumeration bound " + std::to_string(bound));
  // validate the action once (the constant operator R == 1 always satisfies
  // the defining identity, so any error here is about phi)
  std::vector<int> zero(H->n, 0);
  if (auto err = check_rrb(H, G, phi, zero)) throw *err;
  std::vector<RRBGroup> out;
  std::vector<int> R(H->n, -1);
  R[0] = 0;

  // check every identity instance whose three participating values are known
  auto full_partial_check = [&]() {
    for (int h1 = 0; h1 < H->n; ++h1) {
      if (R[h1] < 0) continue;
      for (int h2 = 0; h2 < H->n; ++h2) {
        if (R[h2] < 0) continue;
        int target = H->mul(h1, phi[R[h1]][h2]);
        if (R[target] < 0) continue;
        if (G->mul(R[h1], R[h2]) != R[target]) return false;
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, int h) -> void {
    if (h == H->n) {
      if (!check_rrb(H, G, phi, R)) out.push_back(RRBGroup{H, G, phi, R, "enumerated"});
      return;
    }
    for (int g = 0; g < G->n; ++g) {
      R[h] = g;
      if (full_partial_check()) self(self, h + 1);
      R[h] = -1;
    }
  };
  rec(rec, 1);
  std::sort(out.begin(), out.end(), [](const RRBGroup& a, const RRBGroup& b) { return a.R < b.R; });
  return out;
}

/// Componentwise direct product of two RRB groups.
inline RRBGroup rrb_direct_product(const RRBGroup& a, const RRBGroup& b) {
  GroupPtr H = direct_product(a.H, b.H);
  GroupPtr G = direct_product(a.G, b.G);
  auto henc = [&](int x, int y) { return x * b.H->n + y; };
  std::vector<std::vector<int>> phi(G->n, std::vector<int>(H->n));
  for (int g1 = 0; g1 < a.G->n; ++g1)
    for (int g2 = 0; g2 < b.G->n; ++g2)
      for (int h1 = 0; h1 < a.H->n; ++h1)
        for (int h2 = 0; h2 < b.H->n; ++h2)
          phi[g1 * b.G->n + g2][henc(h1, h2)] = henc(a.phi_of(g1, h1), b.phi_of(g2, h2));
  std::vector<int> R(H->n);
  for (int h1 = 0; h1 < a.H->n; ++h1)
    for (int h2 = 0; h2 < b.H->n; ++h2) R[henc(h1, h2)] = a.R[h1] * b.G->n + b.R[h2];
  return verify_rrb(H, G, phi, R, a.name + "x" + b.name);
}

}  // namespace rrb
