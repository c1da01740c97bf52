#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "rrb/intmat.hpp"

namespace rrb {

/// Finite abelian group given as a product of cyclic factors Z_{m1} x ... x
/// Z_{mk}. Elements are coefficient vectors, or mixed-radix indices when a
/// flat enumeration is needed.
struct AbGroupSpec {
  std::vector<long long> moduli;  // each >= 1

  AbGroupSpec() = default;
  explicit AbGroupSpec(std::vector<long long> m) : moduli(std::move(m)) {
    for (long long v : moduli) require(v >= 1, Err::ShapeMismatch, "cyclic factor must be >= 1");
  }
  static AbGroupSpec cyclic(long long n) { return AbGroupSpec({n}); }
  static AbGroupSpec trivial() { return AbGroupSpec({1}); }

  int comps() const { return static_cast<int>(moduli.size()); }

  long long order() const {
    long long o = 1;
    for (long long v : moduli) o *= v;
    return o;
  }

  long long exponent() const {
    long long e = 1;
    for (long long v : moduli) e = std::lcm(e, v);
    return e;
  }

  std::vector<long long> zero() const { return std::vector<long long>(moduli.size(), 0); }

  std::vector<long long> reduce(std::vector<long long> v) const {
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      v[i] %= moduli[i];
      if (v[i] < 0) v[i] += moduli[i];
    }
    return v;
  }

  std::vector<long long> add(const std::vector<long long>& x, const std::vector<long long>& y) const {
    std::vector<long long> v(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) v[i] = x[i] + y[i];
    return reduce(std::move(v));
  }

  std::vector<long long> neg(const std::vector<long long>& x) const {
    std::vector<long long> v(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) v[i] = -x[i];
    return reduce(std::move(v));
  }

  long long index_of(const std::vector<long long>& v) const {
    long long idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) idx = idx * moduli[i] + (v[i] % moduli[i]);
    return idx;
  }

  std::vector<long long> element(long long idx) const {
    std::vector<long long> v(moduli.size());
    for (std::size_t i = moduli.size(); i-- > 0;) {
      v[i] = idx % moduli[i];
      idx /= moduli[i];
    }
    return v;
  }

  bool operator==(const AbGroupSpec& o) const { return moduli == o.moduli; }
};

/// Element of a finitely presented finite abelian group: coordinates against
/// the invariant-factor decomposition, reduced mod the factors.
struct AbElement {
  std::vector<Int> coords;

  bool is_zero() const {
    for (const Int& c : coords)
      if (c != 0) return false;
    return true;
  }
  bool operator==(const AbElement& o) const { return coords == o.coords; }
  bool operator<(const AbElement& o) const { return coords < o.coords; }
};

/// Invariant-factor presentation of a finite abelian subquotient Z/B of a raw
/// coordinate space prod Z_{m_i}, with the change-of-basis data needed to map
/// raw vectors to coordinates and back.
struct FinAbPresentation {
  std::vector<Int> factors;     // d1 | d2 | ... | dg, all >= 1
  IntMatrix basis;              // W: lattice basis of Z (lower triangular)
  IntMatrix to_normal;          // U
  IntMatrix from_normal;        // U^{-1}
  std::vector<Int> var_moduli;  // raw per-variable cyclic moduli

  int rank() const { return static_cast<int>(factors.size()); }

  Int order() const {
    Int o = 1;
    for (const Int& d : factors) o *= d;
    return o;
  }

  Int exponent() const { return factors.empty() ? Int(1) : factors.back(); }

  /// Indices of factors > 1 (the ones that matter; d_i = 1 slots carry no
  /// information and are pruned from any display).
  std::vector<int> nontrivial_slots() const {
    std::vector<int> s;
    for (int i = 0; i < rank(); ++i)
      if (factors[i] > 1) s.push_back(i);
    return s;
  }

  std::vector<Int> nontrivial_factors() const {
    std::vector<Int> f;
    for (const Int& d : factors)
      if (d > 1) f.push_back(d);
    return f;
  }

  AbElement reduce(std::vector<Int> coords) const {
    require(coords.size() == factors.size(), Err::DimensionMismatch, "coords size");
    for (std::size_t i = 0; i < coords.size(); ++i) {
      coords[i] %= factors[i];
      if (coords[i] < 0) coords[i] += factors[i];
    }
    return AbElement{std::move(coords)};
  }

  AbElement zero() const { return AbElement{std::vector<Int>(factors.size(), 0)}; }

  AbElement add(const AbElement& x, const AbElement& y) const {
    std::vector<Int> c(factors.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords[i] + y.coords[i];
    return reduce(std::move(c));
  }

  AbElement scale(const AbElement& x, const Int& k) const {
    std::vector<Int> c(factors.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords[i] * k;
    return reduce(std::move(c));
  }

  /// Additive order of an element.
  Int order_of(const AbElement& e) const {
    Int n = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i] == 1) continue;
      Int o = factors[i] / gcd_int(e.coords[i], factors[i]);
      n = lcm_int(n, o);
    }
    return n;
  }

  /// Coordinates of a raw vector lying in Z; throws NotInSubgroup otherwise.
  AbElement coords_of(const std::vector<Int>& raw) const {
    auto y = forward_solve(basis, raw);
    if (!y) fail(Err::NotInSubgroup, "vector outside the cocycle lattice");
    return reduce(matvec(to_normal, *y));
  }

  /// A raw representative of a coordinate class, reduced mod the variable
  /// moduli. coords_of(lift(e)) == e.
  std::vector<Int> lift(const AbElement& e) const {
    std::vector<Int> y = matvec(from_normal, e.coords);
    std::vector<Int> x = matvec(basis, y);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] %= var_moduli[i];
      if (x[i] < 0) x[i] += var_moduli[i];
    }
    return x;
  }

  /// Every element, in mixed-radix order over the nontrivial factors. Only
  /// sensible when order() is small.
  std::vector<AbElement> all_elements() const {
    std::vector<AbElement> out;
    out.push_back(zero());
    for (int slot : nontrivial_slots()) {
      std::vector<AbElement> next;
      long long d = factors[slot].convert_to<long long>();
      for (const AbElement& e : out)
        for (long long v = 0; v < d; ++v) {
          AbElement x = e;
          x.coords[slot] = v;
          next.push_back(std::move(x));
        }
      out = std::move(next);
    }
    return out;
  }

  std::string factors_string() const {
    std::string s = "[";
    bool first = true;
    for (const Int& d : factors) {
      if (d == 1) continue;
      if (!first) s += ",";
      s += d.str();
      first = false;
    }
    s += "]";
    return s;
  }
};

/// Presentation of Z/B where Z is spanned by the columns of z_gens (plus the
/// per-variable moduli relations) and B by the columns of b_gens (plus the
/// same moduli). Realizes the quotient of a cocycle lattice by a coboundary
/// lattice in one Smith normal form pass.
inline FinAbPresentation subquotient_structure(const IntMatrix& z_gens, const IntMatrix& b_gens,
                                               const std::vector<Int>& moduli) {
  int c = static_cast<int>(moduli.size());
  for (const Int& m : moduli) require(m >= 1, Err::DimensionMismatch, "variable modulus must be >= 1");

  IntMatrix diag = IntMatrix::diagonal(moduli);
  IntMatrix w = lattice_basis(hcat(z_gens, diag));

  IntMatrix ball = hcat(b_gens, diag);
  IntMatrix rel(c, ball.cols);
  for (int j = 0; j < ball.cols; ++j) {
    auto y = forward_solve(w, ball.col(j));
    if (!y) fail(Err::NotInSubgroup, "coboundary generator outside the cocycle lattice");
    for (int i = 0; i < c; ++i) rel.at(i, j) = (*y)[i];
  }

  SnfResult s = smith_normal_form(rel);
  require(s.rank == c, Err::InternalError, "subquotient: relation lattice not full rank");

  FinAbPresentation pres;
  pres.factors.resize(c);
  for (int i = 0; i < c; ++i) pres.factors[i] = s.d.at(i, i);
  pres.basis = std::move(w);
  pres.to_normal = s.u;
  pres.from_normal = unimodular_inverse(s.u);
  pres.var_moduli = moduli;
  return pres;
}

/// Invariant-factor normal form of a product of cyclic groups.
inline std::vector<Int> abelian_invariants(const AbGroupSpec& spec) {
  std::vector<Int> moduli(spec.moduli.begin(), spec.moduli.end());
  int c = static_cast<int>(moduli.size());
  FinAbPresentation p = subquotient_structure(IntMatrix::identity(c), IntMatrix(c, 0), moduli);
  return p.nontrivial_factors();
}

}  // namespace rrb
