#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rrb/cohomology.hpp"

namespace rrb {

/// Schur multiplier computed with finite coefficient truncation: the complex
/// units are never represented. M is the image of H2(A, Z_N) -> H2(A, Z_NE)
/// under the coefficient embedding x -> E x, with N = |A||B| and E = N. The
/// truncation is exact: every multiplier class has an N-torsion representative
/// (exponent bound), and classes merged over the full coefficient group are
/// already merged over Z_NE (the connecting maps take values killed by N|A|
/// and N|B|).
struct SchurMultiplier {
  long long N = 1;
  long long E = 1;
  H2Classes h2N;
  H2Classes h2NE;
  FinAbPresentation image;          // raw space = coordinates of h2NE
  std::vector<Cocycle4> gens;       // Z_N-valued preimages of the image basis
  std::vector<AbElement> gens_ne;   // their embedded coordinates in h2NE

  std::vector<Int> factors() const { return image.nontrivial_factors(); }
  Int order() const { return image.order(); }
  Int exponent() const {
    auto f = factors();
    return f.empty() ? Int(1) : f.back();
  }

  /// Coordinates of a Z_NE-valued cocycle inside the multiplier; throws
  /// NotInSubgroup when the class is outside the stabilized image.
  AbElement coords_of_ne(const Cocycle4& c) const {
    AbElement e = h2NE.coords_of(c);
    return image.coords_of(e.coords);
  }

  /// A Z_NE-valued representative of a multiplier class.
  Cocycle4 rep_ne(const AbElement& e) const {
    std::vector<Int> ne_coords = image.lift(e);
    return h2NE.lift_class(h2NE.pres.reduce(std::move(ne_coords)));
  }
};

namespace detail {

/// Multiply every table value by a scalar and reinterpret over a larger
/// cyclic modulus (the coefficient embedding Z_q -> Z_{q'}).
inline Cocycle4 scale_cocycle(const RRBGroup& base, const Cocycle4& c, long long factor,
                              const TrivialRRBModule& target) {
  Cocycle4 out = zero_cocycle(base, target);
  require(c.kc() == 1 && c.lc() == 1 && target.K.comps() == 1 && target.L.comps() == 1,
          Err::ShapeMismatch, "scale_cocycle expects cyclic coefficients");
  long long qk = target.K.moduli[0], ql = target.L.moduli[0];
  for (std::size_t i = 0; i < c.tau1.size(); ++i) out.tau1[i] = c.tau1[i] * factor % qk;
  for (std::size_t i = 0; i < c.tau2.size(); ++i) out.tau2[i] = c.tau2[i] * factor % ql;
  for (std::size_t i = 0; i < c.rho.size(); ++i) out.rho[i] = c.rho[i] * factor % qk;
  for (std::size_t i = 0; i < c.chi.size(); ++i) out.chi[i] = c.chi[i] * factor % ql;
  return out;
}

}  // namespace detail

/// Multiplier of a finite RRB group. e_scale enlarges E for the
/// stabilization re-check (structure must not depend on it).
inline SchurMultiplier schur_multiplier(const RRBGroup& base, long long e_scale = 1,
                                        long long var_bound = 10000) {
  SchurMultiplier M;
  M.N = static_cast<long long>(base.H->n) * base.G->n;
  M.E = M.N * e_scale;
  TrivialRRBModule modN = cyclic_module(M.N);
  TrivialRRBModule modNE = cyclic_module(M.N * M.E);
  M.h2N = h2_rrb(base, modN, var_bound);
  M.h2NE = h2_rrb(base, modNE, var_bound);

  // embed the Z_N basis classes and span their image
  std::vector<AbElement> embedded;
  for (const Cocycle4& b : M.h2N.basis)
    embedded.push_back(M.h2NE.coords_of(detail::scale_cocycle(base, b, M.E, modNE)));
  int g = M.h2NE.pres.rank();
  IntMatrix cols(g, static_cast<int>(embedded.size()));
  for (std::size_t j = 0; j < embedded.size(); ++j)
    for (int i = 0; i < g; ++i) cols.at(i, static_cast<int>(j)) = embedded[j].coords[i];
  M.image = subquotient_structure(cols, IntMatrix(g, 0), M.h2NE.pres.factors);

  // Z_N-valued generator preimages: solve embed * x = lift(e_i) over the
  // h2NE coordinate moduli
  for (int slot : M.image.nontrivial_slots()) {
    AbElement unit = M.image.zero();
    unit.coords[slot] = 1;
    std::vector<Int> target = M.image.lift(unit);
    auto x = solve_mod(cols, target, M.h2NE.pres.factors);
    require(x.has_value(), Err::InternalError, "multiplier generator has no Z_N preimage");
    AbElement src = M.h2N.pres.zero();
    auto nslots = M.h2N.pres.nontrivial_slots();
    for (std::size_t j = 0; j < nslots.size(); ++j) src.coords[nslots[j]] = (*x)[j];
    src = M.h2N.pres.reduce(std::move(src.coords));
    Cocycle4 gen = M.h2N.lift_class(src);
    // the preimage really maps onto the requested image generator
    AbElement check = M.image.coords_of(M.h2NE.coords_of(detail::scale_cocycle(base, gen, M.E, modNE)).coords);
    require(check == unit, Err::InternalError, "multiplier generator preimage mismatch");
    M.gens.push_back(std::move(gen));
    M.gens_ne.push_back(M.h2NE.pres.reduce(std::move(target)));
  }
  return M;
}

/// Theorem-backed minimization: a representative of an order-n class whose
/// four tables take values in the unique order-n subgroup of Z_NE. A failed
/// solve would contradict the root-of-unity representative theorem and is
/// fatal.
inline Cocycle4 minimize_representative(const RRBGroup& base, const SchurMultiplier& M,
                                        const AbElement& cls) {
  Int ord = M.image.order_of(cls);
  long long n = ord.convert_to<long long>();
  long long NE = M.N * M.E;
  require(NE % n == 0, Err::InternalError, "class order does not divide the modulus");
  long long q = NE / n;  // order-n subgroup of Z_NE = q * Z_n

  Cocycle4 rep = M.rep_ne(cls);
  CocycleSpace space = M.h2NE.space;
  LinearSystem sys = space.assemble();
  std::vector<Int> raw = space.flatten(rep);
  std::vector<Int> rhs(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) rhs[i] = -raw[i];
  std::vector<Int> rmod(raw.size(), Int(q));
  auto theta = solve_mod(sys.coboundary, rhs, rmod);
  require(theta.has_value(), Err::TheoremViolation,
          "no coboundary shift lands in the order-" + std::to_string(n) + " subgroup");
  std::vector<Int> adj = matvec(sys.coboundary, *theta);
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] += adj[i];
  Cocycle4 out = space.unflatten(raw);
  for (auto* tab : {&out.tau1, &out.tau2, &out.rho, &out.chi})
    for (long long v : *tab)
      require(v % q == 0, Err::TheoremViolation, "minimized value escapes the order-n subgroup");
  require(M.coords_of_ne(out) == cls, Err::InternalError, "minimization left the class");
  return out;
}

/// Group-level Schur multiplier by the same truncation, used as the
/// tau1-component anchor: image of H2(G, Z_N) -> H2(G, Z_NE), N = E = |G|.
struct GroupMultiplier {
  long long N = 1, E = 1;
  GroupH2 h2N, h2NE;
  FinAbPresentation image;

  std::vector<Int> factors() const { return image.nontrivial_factors(); }
  Int order() const { return image.order(); }
};

inline GroupMultiplier group_multiplier(const GroupPtr& g, long long var_bound = 10000) {
  GroupMultiplier M;
  M.N = g->n;
  M.E = M.N;
  M.h2N = h2_group(g, AbGroupSpec::cyclic(M.N), var_bound);
  M.h2NE = h2_group(g, AbGroupSpec::cyclic(M.N * M.E), var_bound);
  int rank = M.h2NE.pres.rank();
  IntMatrix cols(rank, static_cast<int>(M.h2N.basis.size()));
  for (std::size_t j = 0; j < M.h2N.basis.size(); ++j) {
    std::vector<long long> t = M.h2N.basis[j];
    for (auto& v : t) v = v * M.E % (M.N * M.E);
    AbElement e = M.h2NE.coords_of(t);
    for (int i = 0; i < rank; ++i) cols.at(i, static_cast<int>(j)) = e.coords[i];
  }
  M.image = subquotient_structure(cols, IntMatrix(rank, 0), M.h2NE.pres.factors);
  return M;
}

// ---- covers -----------------------------------------------------------------

struct CoverResult {
  ExtensionData ext;
  bool centrality = false;
  bool k_in_commutator = false;
  bool tra_iso = false;

  bool all_ok() const { return centrality && k_in_commutator && tra_iso; }
};

/// Tabulated transgression Hom_RRB(K-module, C_Q) -> M for an extension by
/// the multiplier module; the cover predicate asks whether it is bijective.
inline bool transgression_is_iso(const ExtensionData& ext, const SchurMultiplier& M,
                                 int hom_bound = 64) {
  long long Q = ext.mod.K.exponent();
  long long NE = M.N * M.E;
  require(NE % Q == 0, Err::InternalError, "module exponent does not divide the truncation");
  ModuleAsRRB kmod = module_as_rrb(ext.mod);
  ModuleAsRRB cq = module_as_rrb(cyclic_module(Q));
  std::vector<RRBHom> homs = hom_rrb(kmod.rrb, cq.rrb, hom_bound);
  if (static_cast<long long>(homs.size()) != M.order()) return false;
  std::set<std::vector<Int>> images;
  TrivialRRBModule modNE = cyclic_module(NE);
  for (const RRBHom& g : homs) {
    Cocycle4 pushed = detail::push_cocycle(ext, cyclic_module(Q), g.psi, g.eta);
    Cocycle4 embedded = detail::scale_cocycle(ext.base, pushed, NE / Q, modNE);
    AbElement cls = M.coords_of_ne(embedded);  // escape = outside the multiplier
    images.insert(cls.coords);
  }
  return static_cast<long long>(images.size()) == M.order();
}

/// Cover verdicts for an arbitrary central extension of A by its multiplier
/// module: (a) the definitional condition i1(K) <= H^phi, (b) transgression
/// bijectivity. For bijective bases the two must agree.
inline CoverResult is_schur_cover(const ExtensionData& ext, const SchurMultiplier& M) {
  std::vector<Int> kf = abelian_invariants(ext.mod.K);
  std::vector<Int> lf = abelian_invariants(ext.mod.L);
  require(kf == M.factors() && lf == M.factors(), Err::ModuleMismatch,
          "module is not the multiplier " + M.image.factors_string());
  for (int i = 0; i < ext.mod.K.comps(); ++i) {
    std::vector<long long> unit(ext.mod.K.comps(), 0);
    unit[i] = 1;
    require(ext.mod.apply_S(unit) == ext.mod.L.reduce(unit), Err::ModuleMismatch,
            "module operator S is not the identity");
  }
  CoverResult res{ext, true, true, false};
  RRBSubgroup comm = rrb_commutator(ext.total);
  for (int k = 0; k < ext.Kgrp->n; ++k)
    res.k_in_commutator = res.k_in_commutator && comm.k_contains(ext.inj.psi(k));
  res.tra_iso = transgression_is_iso(ext, M);
  if (ext.base.bijective())
    require(res.k_in_commutator == res.tra_iso, Err::TheoremViolation,
            "K <= H' and transgression-iso disagree on a bijective base");
  return res;
}

/// Assemble a Schur cover from minimized representatives of a cyclic
/// decomposition of the multiplier. unit_scales picks an alternative
/// generator c_i -> u_i c_i per factor (u_i coprime to d_i); empty means 1.
inline CoverResult build_schur_cover(const RRBGroup& base, const SchurMultiplier& M,
                                     std::vector<long long> unit_scales = {}) {
  auto factors = M.factors();
  std::size_t k = factors.size();
  if (unit_scales.empty()) unit_scales.assign(k, 1);
  require(unit_scales.size() == k, Err::ShapeMismatch, "one unit per cyclic factor");

  std::vector<long long> dvec;
  for (const Int& d : factors) dvec.push_back(d.convert_to<long long>());
  long long NE = M.N * M.E;

  std::vector<Cocycle4> comps;
  auto slots = M.image.nontrivial_slots();
  for (std::size_t i = 0; i < k; ++i) {
    require(std::gcd(unit_scales[i], dvec[i]) == 1, Err::ShapeMismatch,
            "unit scale must be coprime to the factor order");
    AbElement cls = M.image.zero();
    cls.coords[slots[i]] = unit_scales[i] % dvec[i];
    Cocycle4 minimized = minimize_representative(base, M, cls);
    // rescale from the order-d_i subgroup of Z_NE down to Z_{d_i}
    long long q = NE / dvec[i];
    TrivialRRBModule mod_i = cyclic_module(dvec[i]);
    Cocycle4 small = zero_cocycle(base, mod_i);
    auto down = [&](const std::vector<long long>& src, std::vector<long long>& dst) {
      for (std::size_t t = 0; t < src.size(); ++t) {
        require(src[t] % q == 0, Err::InternalError, "minimized table not in the subgroup");
        dst[t] = src[t] / q % dvec[i];
      }
    };
    down(minimized.tau1, small.tau1);
    down(minimized.tau2, small.tau2);
    down(minimized.rho, small.rho);
    down(minimized.chi, small.chi);
    require(RRBCocycleChecker::create(base, mod_i).check(small), Err::InternalError,
            "rescaled representative is not a cocycle");
    comps.push_back(std::move(small));
  }

  std::vector<TrivialRRBModule> parts;
  for (long long d : dvec) parts.push_back(cyclic_module(d));
  TrivialRRBModule cover_mod =
      parts.empty() ? make_module(AbGroupSpec({1}), AbGroupSpec({1}), {{0}}) : product_module(parts);
  Cocycle4 cocycle;
  if (parts.empty()) {
    cocycle = zero_cocycle(base, cover_mod);
  } else {
    ProductCoeffIso iso{cover_mod, {}, parts, {}};
    cocycle = assemble_product_cocycle(base, iso, comps);
  }
  ExtensionData ext = extension_from_cocycle(base, cover_mod, cocycle);
  return is_schur_cover(ext, M);
}

// ---- character restrictions -------------------------------------------------

struct RestrictionDecision {
  bool trivial_on_sub = false;
  std::optional<RRBHom> witness;  // a character pair not vanishing on sub
};

/// Lemma SC1 and its converse: whether every homomorphism A -> C (through the
/// lcm-of-exponents truncation, which captures every complex character)
/// restricts trivially to the subgroup. For bijective A the verdict is
/// asserted equal to K <= A^beta.
inline RestrictionDecision restricts_trivially(const RRBGroup& base, const RRBSubgroup& sub,
                                               int hom_bound = 64) {
  if (auto why = check_rrb_subgroup(base, sub)) fail(Err::NotSubgroup, *why);
  // hypothesis: the restricted operator K -> L is surjective
  std::set<int> rk;
  for (int x : sub.K) rk.insert(base.R[x]);
  require(rk.size() == sub.L.size(), Err::HypothesisFails,
          "restricted operator K -> L is not surjective");

  long long Q = std::lcm(base.H->exponent(), base.G->exponent());
  ModuleAsRRB cq = module_as_rrb(cyclic_module(Q));
  RestrictionDecision dec;
  dec.trivial_on_sub = true;
  for (const RRBHom& f : hom_rrb(base, cq.rrb, hom_bound)) {
    bool vanishes = true;
    for (int x : sub.K) vanishes = vanishes && f.psi(x) == 0;
    for (int x : sub.L) vanishes = vanishes && f.eta(x) == 0;
    if (!vanishes) {
      dec.trivial_on_sub = false;
      dec.witness = f;
      break;
    }
  }
  if (base.bijective()) {
    RRBSubgroup comm = rrb_commutator(base);
    bool contained = true;
    for (int x : sub.K) contained = contained && comm.k_contains(x);
    require(dec.trivial_on_sub == contained, Err::TheoremViolation,
            "character-vanishing and K <= A^beta disagree on a bijective base");
  }
  return dec;
}

/// Stabilization check: recomputing with E doubled leaves the structure and
/// the generator orders unchanged.
inline bool multiplier_is_stable(const RRBGroup& base, const SchurMultiplier& M,
                                 long long var_bound = 10000) {
  SchurMultiplier M2 = schur_multiplier(base, 2, var_bound);
  if (M.factors() != M2.factors()) return false;
  long long NE2 = M2.N * M2.E;
  TrivialRRBModule modNE2 = cyclic_module(NE2);
  auto slots = M.image.nontrivial_slots();
  for (std::size_t i = 0; i < M.gens.size(); ++i) {
    Cocycle4 embedded = detail::scale_cocycle(base, M.gens[i], M2.E, modNE2);
    AbElement cls = M2.image.coords_of(M2.h2NE.coords_of(embedded).coords);
    if (M2.image.order_of(cls) != M.image.factors[slots[i]]) return false;
  }
  return true;
}

}  // namespace rrb
