#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "rrb/rrb.hpp"

namespace rrb {

/// Skew left brace: one carrier with two group structures (dot, circle)
/// sharing identity 0 and satisfying a o (b . c) = (a o b) . a^- . (a o c).
struct SkewBrace {
  GroupPtr dot;
  GroupPtr circle;

  int n() const { return dot->n; }
  int d(int a, int b) const { return dot->mul(a, b); }
  int c(int a, int b) const { return circle->mul(a, b); }
  int dinv(int a) const { return dot->invert(a); }
  int cinv(int a) const { return circle->invert(a); }

  /// lambda_a(b) = a^- . (a o b)
  int lambda(int a, int b) const { return d(dinv(a), c(a, b)); }

  bool is_trivial() const { return dot->table == circle->table; }
};

inline SkewBrace make_skew_brace(const GroupPtr& dot, const GroupPtr& circle) {
  require(dot->n == circle->n, Err::ShapeMismatch, "carrier size mismatch");
  for (int a = 0; a < dot->n; ++a)
    for (int b = 0; b < dot->n; ++b)
      for (int x = 0; x < dot->n; ++x)
        require(circle->mul(a, dot->mul(b, x)) ==
                    dot->mul(dot->mul(circle->mul(a, b), dot->invert(a)), circle->mul(a, x)),
                Err::ConsistencyError,
                "brace identity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                    std::to_string(x) + ")");
  return SkewBrace{dot, circle};
}

/// Brace induced by an RRB group: dot = H, circle = descendent product.
inline SkewBrace induced_brace(const RRBGroup& r) {
  auto [desc, rhom] = descendent_group(r);
  return make_skew_brace(r.H, desc);
}

/// Ann(H) = {a : b o a = a o b = b . a = a . b for all b}.
inline std::vector<int> brace_annihilator(const SkewBrace& b) {
  std::vector<int> ann;
  for (int a = 0; a < b.n(); ++a) {
    bool ok = true;
    for (int x = 0; x < b.n() && ok; ++x)
      ok = b.c(x, a) == b.c(a, x) && b.d(x, a) == b.d(a, x) && b.c(x, a) == b.d(x, a);
    if (ok) ann.push_back(a);
  }
  return ann;
}

/// Brace commutator: dot-subgroup generated by dot-commutators and all
/// a^- . (a o b) . b^-.
inline std::vector<int> brace_commutator(const SkewBrace& b) {
  std::vector<int> gens;
  for (int x = 0; x < b.n(); ++x)
    for (int y = 0; y < b.n(); ++y) {
      gens.push_back(b.dot->comm(x, y));
      gens.push_back(b.d(b.d(b.dinv(x), b.c(x, y)), b.dinv(y)));
    }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return subgroup_generated(b.dot, gens).elements;
}

// ---- Yang-Baxter --------------------------------------------------------

/// Set-theoretic solution r(x,y) = (sigma_x(y), tau_y(x)) on pairs, with the
/// component maps tabulated. Construction validates non-degeneracy and the
/// braid identity exhaustively; those oracles are the contract.
struct YBMap {
  int n = 0;
  std::vector<int> sigma;  // sigma[x*n + y] = sigma_x(y)
  std::vector<int> tau;    // tau[y*n + x] = tau_y(x)

  std::pair<int, int> r(int x, int y) const {
    return {sigma[x * n + y], tau[y * n + x]};
  }
};

inline std::optional<std::string> ybe_check(const YBMap& m) {
  int n = m.n;
  for (int x = 0; x < n; ++x) {
    std::vector<char> seen(n, 0);
    for (int y = 0; y < n; ++y) {
      int v = m.sigma[x * n + y];
      if (seen[v]) return "sigma_" + std::to_string(x) + " not bijective";
      seen[v] = 1;
    }
  }
  for (int y = 0; y < n; ++y) {
    std::vector<char> seen(n, 0);
    for (int x = 0; x < n; ++x) {
      int v = m.tau[y * n + x];
      if (seen[v]) return "tau_" + std::to_string(y) + " not bijective";
      seen[v] = 1;
    }
  }
  // r bijective on pairs follows from checking images are distinct
  {
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        auto [u, v] = m.r(x, y);
        std::size_t key = static_cast<std::size_t>(u) * n + v;
        if (seen[key]) return "r not bijective on pairs";
        seen[key] = 1;
      }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        // (r x id)(id x r)(r x id)(x,y,z)
        auto [a1, b1] = m.r(x, y);
        auto [b2, c2] = m.r(b1, z);
        auto [a3, b3] = m.r(a1, b2);
        // (id x r)(r x id)(id x r)(x,y,z)
        auto [p1, q1] = m.r(y, z);
        auto [u2, v2] = m.r(x, p1);
        auto [w3, t3] = m.r(v2, q1);
        if (!(a3 == u2 && b3 == w3 && c2 == t3))
          return "braid identity fails at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                 std::to_string(z) + ")";
      }
  return std::nullopt;
}

/// Solution induced by a skew brace: sigma_x(y) = x^- . (x o y),
/// tau_y(x) = sigma_x(y)^{o-} o x o y. Verified exhaustively.
inline YBMap ybe_map(const SkewBrace& b) {
  int n = b.n();
  YBMap m;
  m.n = n;
  m.sigma.resize(static_cast<std::size_t>(n) * n);
  m.tau.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int s = b.lambda(x, y);
      m.sigma[x * n + y] = s;
      m.tau[y * n + x] = b.c(b.c(b.cinv(s), x), y);
    }
  if (auto why = ybe_check(m)) {
    if (why->find("braid") != std::string::npos) fail(Err::BraidFails, *why);
    fail(Err::DegenerateComponent, *why);
  }
  return m;
}

// ---- brace quotients and isoclinism --------------------------------------

struct BraceQuotient {
  SkewBrace quotient;
  std::vector<int> coset_of;   // carrier -> quotient index
  std::vector<int> coset_rep;  // quotient index -> minimal representative
};

/// Quotient by a subgroup of the annihilator (dot- and circle-cosets agree
/// on annihilator subgroups; asserted).
inline BraceQuotient brace_quotient_by(const SkewBrace& b, const std::vector<int>& ann_sub) {
  SubgroupHandle nd{b.dot, ann_sub};
  require(is_subgroup(nd), Err::NotSubgroup, "annihilator subgroup (dot)");
  require(is_subgroup(SubgroupHandle{b.circle, ann_sub}), Err::NotSubgroup,
          "annihilator subgroup (circle)");
  QuotientGroup qd = quotient_group(b.dot, nd);
  QuotientGroup qc = quotient_group(b.circle, SubgroupHandle{b.circle, ann_sub});
  require(qd.projection.image == qc.projection.image, Err::InternalError,
          "dot and circle cosets disagree");
  BraceQuotient out{make_skew_brace(qd.group, qc.group), qd.projection.image, qd.coset_rep};
  return out;
}

inline BraceQuotient brace_quotient_by_annihilator(const SkewBrace& b) {
  return brace_quotient_by(b, brace_annihilator(b));
}

/// theta(a,b) = a . b . a^- . b^- and theta*(a,b) = a^- . (a o b) . b^- on the
/// annihilator quotient, valued in the brace commutator.
struct BraceThetaTables {
  BraceQuotient q;
  SubgroupGroup comm;        // brace commutator as a standalone dot-group
  std::vector<int> theta;    // (q x q) -> comm local index
  std::vector<int> theta_star;
};

inline BraceThetaTables brace_theta_tables(const SkewBrace& b) {
  BraceThetaTables t{brace_quotient_by_annihilator(b),
                     make_subgroup_group(SubgroupHandle{b.dot, brace_commutator(b)}, "B'"), {}, {}};
  int q = t.q.quotient.n();
  t.theta.assign(static_cast<std::size_t>(q) * q, -1);
  t.theta_star.assign(static_cast<std::size_t>(q) * q, -1);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      int a = t.q.coset_rep[i], c = t.q.coset_rep[j];
      int th = b.dot->comm(a, c);
      int ts = b.d(b.d(b.dinv(a), b.c(a, c)), b.dinv(c));
      t.theta[i * q + j] = t.comm.from_parent[th];
      t.theta_star[i * q + j] = t.comm.from_parent[ts];
      require(t.theta[i * q + j] >= 0 && t.theta_star[i * q + j] >= 0, Err::InternalError,
              "theta value escapes the brace commutator");
    }
  // well-definedness over all representative choices
  for (int a = 0; a < b.n(); ++a)
    for (int c = 0; c < b.n(); ++c) {
      int i = t.q.coset_of[a], j = t.q.coset_of[c];
      require(t.comm.to_parent[t.theta[i * q + j]] == b.dot->comm(a, c), Err::InternalError,
              "theta not constant on cosets");
      require(t.comm.to_parent[t.theta_star[i * q + j]] ==
                  b.d(b.d(b.dinv(a), b.c(a, c)), b.dinv(c)),
              Err::InternalError, "theta* not constant on cosets");
    }
  return t;
}

struct BraceIsoWitness {
  GroupHom xi1_dot;   // quotient dot groups (also a circle iso; checked)
  GroupHom xi2;       // commutator dot groups
};

/// Verify a candidate (xi1, xi2) against the two theta squares.
inline bool check_brace_iso_witness(const BraceThetaTables& t1, const BraceThetaTables& t2,
                                    const std::vector<int>& xi1, const std::vector<int>& xi2) {
  int q = t1.q.quotient.n();
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      if (xi2[t1.theta[i * q + j]] != t2.theta[xi1[i] * q + xi1[j]]) return false;
      if (xi2[t1.theta_star[i * q + j]] != t2.theta_star[xi1[i] * q + xi1[j]]) return false;
    }
  return true;
}

/// Search for a brace isoclinism witness: xi1 a brace isomorphism of the
/// annihilator quotients, xi2 a group isomorphism of the commutators, both
/// theta squares commuting.
inline std::optional<BraceIsoWitness> brace_isoclinic(const SkewBrace& b1, const SkewBrace& b2,
                                                      int bound = 16) {
  BraceThetaTables t1 = brace_theta_tables(b1);
  BraceThetaTables t2 = brace_theta_tables(b2);
  if (t1.q.quotient.n() != t2.q.quotient.n()) return std::nullopt;
  if (t1.comm.group->n != t2.comm.group->n) return std::nullopt;
  require(t1.q.quotient.n() <= bound && t1.comm.group->n <= bound, Err::SearchBoundExceeded,
          "brace isoclinism search bound");

  std::vector<GroupHom> xi2s = enumerate_isos(t1.comm.group, t2.comm.group);
  for (const GroupHom& xi1d : enumerate_isos(t1.q.quotient.dot, t2.q.quotient.dot)) {
    // must also be a circle isomorphism of the quotient braces
    bool circ_ok = true;
    int q = t1.q.quotient.n();
    for (int i = 0; i < q && circ_ok; ++i)
      for (int j = 0; j < q && circ_ok; ++j)
        circ_ok = xi1d.image[t1.q.quotient.c(i, j)] == t2.q.quotient.c(xi1d.image[i], xi1d.image[j]);
    if (!circ_ok) continue;
    for (const GroupHom& xi2 : xi2s)
      if (check_brace_iso_witness(t1, t2, xi1d.image, xi2.image))
        return BraceIsoWitness{xi1d, xi2};
  }
  return std::nullopt;
}

}  // namespace rrb
