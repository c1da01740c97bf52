#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rrb/abelian.hpp"
#include "rrb/error.hpp"

namespace rrb {

/// Finite group as a Cayley table on indices 0..n-1 with identity at 0.
/// Immutable after construction; shared freely.
struct FiniteGroup {
  int n = 0;
  std::vector<int> table;  // row-major: table[i*n + j] = i * j
  std::vector<int> inv;
  std::string name;

  int mul(int i, int j) const { return table[static_cast<std::size_t>(i) * n + j]; }
  int invert(int i) const { return inv[i]; }

  int mul3(int i, int j, int k) const { return mul(mul(i, j), k); }
  int conj(int g, int x) const { return mul3(g, x, inv[g]); }
  int comm(int x, int y) const { return mul(mul(x, y), mul(inv[x], inv[y])); }

  int order_of(int x) const {
    int o = 1, y = x;
    while (y != 0) {
      y = mul(y, x);
      ++o;
    }
    return o;
  }

  long long exponent() const {
    long long e = 1;
    for (int x = 0; x < n; ++x) e = std::lcm(e, static_cast<long long>(order_of(x)));
    return e;
  }

  bool is_abelian() const {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (mul(i, j) != mul(j, i)) return false;
    return true;
  }

  std::vector<int> element_order_multiset() const {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = order_of(i);
    std::sort(v.begin(), v.end());
    return v;
  }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

namespace detail {

inline std::uint64_t lcg_next(std::uint64_t& s) {
  s = s * 6364136223846793005ULL + 1442695040888963407ULL;
  return s >> 11;
}

}  // namespace detail

/// Validate a Cayley table and wrap it. Checks, in order: entry range,
/// identity row/column at index 0, two-sided inverses, associativity
/// (exhaustive up to order 100, >= 3*10^4 sampled triples above). Errors name
/// the first failing element or triple.
inline GroupPtr build_group(const std::vector<std::vector<int>>& tab, const std::string& name) {
  int n = static_cast<int>(tab.size());
  require(n >= 1, Err::ShapeMismatch, "empty table");
  auto g = std::make_shared<FiniteGroup>();
  g->n = n;
  g->name = name;
  g->table.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(tab[i].size()) == n, Err::ShapeMismatch,
            "row " + std::to_string(i) + " has length " + std::to_string(tab[i].size()));
    for (int j = 0; j < n; ++j) {
      require(tab[i][j] >= 0 && tab[i][j] < n, Err::IndexOutOfRange,
              "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      g->table[static_cast<std::size_t>(i) * n + j] = tab[i][j];
    }
  }
  for (int j = 0; j < n; ++j)
    require(g->mul(0, j) == j && g->mul(j, 0) == j, Err::NoIdentityAtZero,
            "index 0 does not act as identity on element " + std::to_string(j));
  g->inv.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (g->mul(i, j) == 0 && g->mul(j, i) == 0) {
        g->inv[i] = j;
        break;
      }
    require(g->inv[i] >= 0, Err::MissingInverse, "element " + std::to_string(i));
  }
  if (n <= 100) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          require(g->mul(g->mul(i, j), k) == g->mul(i, g->mul(j, k)), Err::NotAssociative,
                  "triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
  } else {
    std::uint64_t s = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n);
    for (int t = 0; t < 30000; ++t) {
      int i = static_cast<int>(detail::lcg_next(s) % n);
      int j = static_cast<int>(detail::lcg_next(s) % n);
      int k = static_cast<int>(detail::lcg_next(s) % n);
      require(g->mul(g->mul(i, j), k) == g->mul(i, g->mul(j, k)), Err::NotAssociative,
              "triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
    }
  }
  return g;
}

inline GroupPtr build_group_flat(int n, const std::vector<int>& flat, const std::string& name) {
  require(static_cast<int>(flat.size()) == n * n, Err::ShapeMismatch, "flat table size");
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tab[i][j] = flat[static_cast<std::size_t>(i) * n + j];
  return build_group(tab, name);
}

// ---- canonical builders ------------------------------------------------

inline GroupPtr trivial_group() { return build_group({{0}}, "1"); }

inline GroupPtr cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return build_group(t, "Z" + std::to_string(n));
}

inline GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  int n = a->n * b->n;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  auto enc = [&](int x, int y) { return x * b->n + y; };
  for (int x1 = 0; x1 < a->n; ++x1)
    for (int y1 = 0; y1 < b->n; ++y1)
      for (int x2 = 0; x2 < a->n; ++x2)
        for (int y2 = 0; y2 < b->n; ++y2)
          t[enc(x1, y1)][enc(x2, y2)] = enc(a->mul(x1, x2), b->mul(y1, y2));
  return build_group(t, a->name + "x" + b->name);
}

inline GroupPtr klein_four() {
  auto z2 = cyclic_group(2);
  auto g = direct_product(z2, z2);
  auto copy = std::make_shared<FiniteGroup>(*g);
  copy->name = "K4";
  return copy;
}

/// Group of a product-of-cyclics spec, elements in mixed-radix order.
inline GroupPtr abelian_group(const AbGroupSpec& spec) {
  long long n = spec.order();
  require(n <= 4096, Err::SearchBoundExceeded, "abelian carrier too large");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j)
      t[i][j] = static_cast<int>(spec.index_of(spec.add(spec.element(i), spec.element(j))));
  std::string name;
  for (long long m : spec.moduli) name += (name.empty() ? "Z" : "xZ") + std::to_string(m);
  return build_group(t, name.empty() ? "1" : name);
}

/// Dihedral group of order 2m: elements r^i s^e encoded as i + m*e.
inline GroupPtr dihedral_group(int m) {
  int n = 2 * m;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  auto enc = [&](int i, int e) { return ((i % m) + m) % m + m * e; };
  for (int i = 0; i < m; ++i)
    for (int e = 0; e < 2; ++e)
      for (int j = 0; j < m; ++j)
        for (int f = 0; f < 2; ++f) {
          // (r^i s^e)(r^j s^f) = r^{i + j*(-1)^e} s^{e+f},  s r = r^{-1} s
          int k = e ? (i - j) : (i + j);
          t[enc(i, e)][enc(j, f)] = enc(k, (e + f) % 2);
        }
  return build_group(t, "D" + std::to_string(m));
}

namespace detail {

inline std::vector<std::vector<int>> permutations_of(int k) {
  std::vector<int> base(k);
  for (int i = 0; i < k; ++i) base[i] = i;
  std::vector<std::vector<int>> out;
  do out.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  // identity permutation first, rest in lexicographic order
  return out;
}

}  // namespace detail

/// Symmetric group S_k (k <= 4), permutations acting on the left.
inline GroupPtr symmetric_group(int k) {
  require(k >= 1 && k <= 4, Err::SearchBoundExceeded, "symmetric_group supports k <= 4");
  auto perms = detail::permutations_of(k);
  int n = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> idx;
  for (int i = 0; i < n; ++i) idx[perms[i]] = i;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> comp(k);
      for (int x = 0; x < k; ++x) comp[x] = perms[i][perms[j][x]];
      t[i][j] = idx[comp];
    }
  return build_group(t, "S" + std::to_string(k));
}

/// Quaternion group of order 8: {1,-1,i,-i,j,-j,k,-k}.
inline GroupPtr quaternion_group() {
  // encode q = s * b with b in {1,i,j,k} (b index 0..3) and sign s: index = b + 4*(s<0)
  auto enc = [](int sign, int b) { return b + (sign < 0 ? 4 : 0); };
  int bt[4][4];     // basis product table
  int bsign[4][4];  // sign of basis product
  const int E = 0, I = 1, J = 2, K = 3;
  auto set = [&](int x, int y, int z, int s) {
    bt[x][y] = z;
    bsign[x][y] = s;
  };
  set(E, E, E, 1); set(E, I, I, 1); set(E, J, J, 1); set(E, K, K, 1);
  set(I, E, I, 1); set(I, I, E, -1); set(I, J, K, 1); set(I, K, J, -1);
  set(J, E, J, 1); set(J, I, K, -1); set(J, J, E, -1); set(J, K, I, 1);
  set(K, E, K, 1); set(K, I, J, 1); set(K, J, I, -1); set(K, K, E, -1);
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int b1 = 0; b1 < 4; ++b1)
    for (int s1 : {1, -1})
      for (int b2 = 0; b2 < 4; ++b2)
        for (int s2 : {1, -1})
          t[enc(s1, b1)][enc(s2, b2)] = enc(s1 * s2 * bsign[b1][b2], bt[b1][b2]);
  return build_group(t, "Q8");
}

// ---- subgroups ----------------------------------------------------------

/// Sorted element set of a subgroup, holding a reference to its parent.
struct SubgroupHandle {
  GroupPtr parent;
  std::vector<int> elements;  // sorted, contains 0

  bool contains(int x) const { return std::binary_search(elements.begin(), elements.end(), x); }
  int order() const { return static_cast<int>(elements.size()); }
  bool is_whole() const { return order() == parent->n; }
};

inline SubgroupHandle subgroup_generated(const GroupPtr& g, const std::vector<int>& gens) {
  for (int x : gens)
    require(x >= 0 && x < g->n, Err::IndexOutOfRange, "generator " + std::to_string(x));
  std::vector<char> in(g->n, 0);
  std::vector<int> work{0};
  in[0] = 1;
  for (int x : gens)
    if (!in[x]) {
      in[x] = 1;
      work.push_back(x);
    }
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t j = 0; j < work.size(); ++j) {
      int p = g->mul(work[i], work[j]);
      if (!in[p]) {
        in[p] = 1;
        work.push_back(p);
      }
    }
    int v = g->invert(work[i]);
    if (!in[v]) {
      in[v] = 1;
      work.push_back(v);
    }
  }
  std::sort(work.begin(), work.end());
  return SubgroupHandle{g, std::move(work)};
}

inline SubgroupHandle whole_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->n);
  for (int i = 0; i < g->n; ++i) all[i] = i;
  return SubgroupHandle{g, std::move(all)};
}

inline SubgroupHandle trivial_subgroup(const GroupPtr& g) { return SubgroupHandle{g, {0}}; }

inline bool is_subgroup(const SubgroupHandle& s) {
  if (s.elements.empty() || !s.contains(0)) return false;
  for (int x : s.elements) {
    if (!s.contains(s.parent->invert(x))) return false;
    for (int y : s.elements)
      if (!s.contains(s.parent->mul(x, y))) return false;
  }
  return true;
}

inline SubgroupHandle center_of(const GroupPtr& g) {
  std::vector<int> z;
  for (int x = 0; x < g->n; ++x) {
    bool central = true;
    for (int y = 0; y < g->n && central; ++y) central = g->mul(x, y) == g->mul(y, x);
    if (central) z.push_back(x);
  }
  return SubgroupHandle{g, std::move(z)};
}

inline SubgroupHandle commutator_subgroup(const GroupPtr& g) {
  std::vector<int> gens;
  for (int x = 0; x < g->n; ++x)
    for (int y = 0; y < g->n; ++y) gens.push_back(g->comm(x, y));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return subgroup_generated(g, gens);
}

/// Returns a conjugation witness (g, n) with g n g^-1 outside the subgroup,
/// or nothing when normal.
inline std::optional<std::pair<int, int>> normality_witness(const SubgroupHandle& s) {
  for (int g = 0; g < s.parent->n; ++g)
    for (int x : s.elements)
      if (!s.contains(s.parent->conj(g, x))) return std::make_pair(g, x);
  return std::nullopt;
}

inline bool is_normal(const SubgroupHandle& s) { return !normality_witness(s).has_value(); }

// ---- homomorphisms ------------------------------------------------------

struct GroupHom {
  GroupPtr dom;
  GroupPtr cod;
  std::vector<int> image;  // image[x] in cod

  int operator()(int x) const { return image[x]; }

  bool is_bijective() const {
    if (dom->n != cod->n) return false;
    std::vector<char> seen(cod->n, 0);
    for (int v : image) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }
};

inline bool hom_law_holds(const GroupHom& h) {
  if (h.image.size() != static_cast<std::size_t>(h.dom->n) || h.image[0] != 0) return false;
  for (int x = 0; x < h.dom->n; ++x)
    for (int y = 0; y < h.dom->n; ++y)
      if (h.image[h.dom->mul(x, y)] != h.cod->mul(h.image[x], h.image[y])) return false;
  return true;
}

inline GroupHom identity_hom(const GroupPtr& g) {
  std::vector<int> img(g->n);
  for (int i = 0; i < g->n; ++i) img[i] = i;
  return GroupHom{g, g, std::move(img)};
}

inline GroupHom compose(const GroupHom& second, const GroupHom& first) {
  require(first.cod->n == second.dom->n, Err::DimensionMismatch, "hom composition mismatch");
  std::vector<int> img(first.dom->n);
  for (int i = 0; i < first.dom->n; ++i) img[i] = second.image[first.image[i]];
  return GroupHom{first.dom, second.cod, std::move(img)};
}

inline SubgroupHandle hom_kernel(const GroupHom& h) {
  std::vector<int> k;
  for (int x = 0; x < h.dom->n; ++x)
    if (h.image[x] == 0) k.push_back(x);
  return SubgroupHandle{h.dom, std::move(k)};
}

inline SubgroupHandle hom_image(const GroupHom& h) {
  std::vector<int> v = h.image;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return SubgroupHandle{h.cod, std::move(v)};
}

/// Greedy generating set: repeatedly add the element that enlarges the
/// generated subgroup the most (ties broken by index). Keeps hom enumeration
/// backtracking shallow.
inline std::vector<int> greedy_generators(const GroupPtr& g) {
  std::vector<int> gens;
  SubgroupHandle cur = subgroup_generated(g, {});
  while (cur.order() < g->n) {
    int best = -1, best_size = cur.order();
    for (int x = 0; x < g->n; ++x) {
      if (cur.contains(x)) continue;
      std::vector<int> trial = gens;
      trial.push_back(x);
      int sz = subgroup_generated(g, trial).order();
      if (sz > best_size) {
        best_size = sz;
        best = x;
      }
    }
    gens.push_back(best);
    cur = subgroup_generated(g, gens);
  }
  return gens;
}

namespace detail {

/// Extend a partial map on generators to the subgroup they generate; returns
/// false on any conflict with the hom law.
inline bool close_partial_hom(const FiniteGroup& dom, const FiniteGroup& cod,
                              const std::vector<int>& gens, const std::vector<int>& gen_imgs,
                              std::vector<int>& image) {
  image.assign(dom.n, -1);
  image[0] = 0;
  std::vector<int> work{0};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    int x = gens[i];
    if (image[x] == -1) {
      image[x] = gen_imgs[i];
      work.push_back(x);
    } else if (image[x] != gen_imgs[i]) {
      return false;
    }
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    int x = work[i];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      int y = dom.mul(x, gens[j]);
      int fy = cod.mul(image[x], gen_imgs[j]);
      if (image[y] == -1) {
        image[y] = fy;
        work.push_back(y);
      } else if (image[y] != fy) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// All homomorphisms dom -> cod by backtracking on the images of a greedy
/// generating set. Deterministic output order (lexicographic on image
/// arrays). Throws SearchBoundExceeded when |dom| exceeds the bound.
inline std::vector<GroupHom> enumerate_homs(const GroupPtr& dom, const GroupPtr& cod,
                                            int bound = 24) {
  require(dom->n <= bound, Err::SearchBoundExceeded,
          "hom enumeration domain order " + std::to_string(dom->n) + " exceeds bound " +
              std::to_string(bound));
  std::vector<int> gens = greedy_generators(dom);
  std::vector<GroupHom> out;
  std::vector<int> gen_imgs(gens.size(), 0);
  std::vector<int> image;

  auto emit_if_hom = [&]() {
    if (!detail::close_partial_hom(*dom, *cod, gens, gen_imgs, image)) return;
    GroupHom h{dom, cod, image};
    if (hom_law_holds(h)) out.push_back(std::move(h));
  };

  if (gens.empty()) {
    emit_if_hom();  // trivial domain
    return out;
  }

  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    int o = dom->order_of(gens[i]);
    for (int y = 0; y < cod->n; ++y)
      if (o % cod->order_of(y) == 0) candidates[i].push_back(y);
  }

  std::vector<std::size_t> pick(gens.size(), 0);
  std::size_t level = 0;
  for (;;) {
    if (pick[level] == candidates[level].size()) {
      if (level == 0) break;
      pick[level] = 0;
      ++pick[--level];
      continue;
    }
    gen_imgs[level] = candidates[level][pick[level]];
    // prune: the partial assignment must extend consistently
    bool ok = detail::close_partial_hom(*dom, *cod,
                                        std::vector<int>(gens.begin(), gens.begin() + level + 1),
                                        std::vector<int>(gen_imgs.begin(), gen_imgs.begin() + level + 1),
                                        image);
    if (!ok) {
      ++pick[level];
      continue;
    }
    if (level + 1 == gens.size()) {
      emit_if_hom();
      ++pick[level];
    } else {
      ++level;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GroupHom& a, const GroupHom& b) { return a.image < b.image; });
  return out;
}

inline std::vector<GroupHom> automorphisms(const GroupPtr& g, int bound = 24) {
  std::vector<GroupHom> all = enumerate_homs(g, g, bound);
  std::vector<GroupHom> out;
  for (auto& h : all)
    if (h.is_bijective()) out.push_back(std::move(h));
  return out;
}

inline std::vector<GroupHom> enumerate_isos(const GroupPtr& a, const GroupPtr& b, int bound = 24) {
  std::vector<GroupHom> out;
  if (a->n != b->n) return out;
  if (a->element_order_multiset() != b->element_order_multiset()) return out;
  for (auto& h : enumerate_homs(a, b, bound))
    if (h.is_bijective()) out.push_back(std::move(h));
  return out;
}

inline bool is_isomorphic(const GroupPtr& a, const GroupPtr& b, int bound = 24) {
  return !enumerate_isos(a, b, bound).empty();
}

// ---- quotients and subgroup relabelings ---------------------------------

/// A subgroup repackaged as a standalone group, with index maps both ways.
struct SubgroupGroup {
  GroupPtr group;
  std::vector<int> to_parent;    // local index -> parent index
  std::vector<int> from_parent;  // parent index -> local index, -1 outside
};

inline SubgroupGroup make_subgroup_group(const SubgroupHandle& s, const std::string& name) {
  require(is_subgroup(s), Err::NotSubgroup, "element set is not a subgroup");
  int k = s.order();
  std::vector<int> from(s.parent->n, -1);
  for (int i = 0; i < k; ++i) from[s.elements[i]] = i;  // sorted, so identity stays at 0
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t[i][j] = from[s.parent->mul(s.elements[i], s.elements[j])];
  SubgroupGroup out;
  out.group = build_group(t, name);
  out.to_parent = s.elements;
  out.from_parent = std::move(from);
  return out;
}

struct QuotientGroup {
  GroupPtr group;
  GroupHom projection;            // parent -> quotient
  std::vector<int> coset_rep;     // quotient index -> minimal parent representative
};

/// Quotient by a normal subgroup. Coset representatives are the minimal
/// element indices; the identity coset (containing 0) lands at index 0.
inline QuotientGroup quotient_group(const GroupPtr& g, const SubgroupHandle& n) {
  require(is_subgroup(n), Err::NotSubgroup, "N is not a subgroup");
  if (auto w = normality_witness(n))
    fail(Err::NotNormal, "conjugation witness (g=" + std::to_string(w->first) +
                             ", n=" + std::to_string(w->second) + ")");
  std::vector<int> coset_of(g->n, -1);
  std::vector<int> reps;
  for (int x = 0; x < g->n; ++x) {
    if (coset_of[x] >= 0) continue;
    int idx = static_cast<int>(reps.size());
    reps.push_back(x);  // x is minimal in its coset: smaller elements already labelled
    for (int h : n.elements) coset_of[g->mul(x, h)] = idx;
  }
  int q = static_cast<int>(reps.size());
  std::vector<std::vector<int>> t(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) t[i][j] = coset_of[g->mul(reps[i], reps[j])];
  QuotientGroup out;
  out.group = build_group(t, g->name + "/" + std::to_string(n.order()));
  out.projection = GroupHom{g, out.group, coset_of};
  out.coset_rep = std::move(reps);
  require(hom_law_holds(out.projection), Err::InternalError, "quotient projection not a hom");
  return out;
}

}  // namespace rrb
