#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rrb/error.hpp"

namespace rrb {

using Int = boost::multiprecision::cpp_int;

/// Dense arbitrary-precision integer matrix, row-major. Exact arithmetic
/// throughout: cocycle constraint systems are small but their elimination
/// intermediates are not bounded by the input moduli.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<Int>& d) {
    IntMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  Int& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  std::vector<Int> col(int j) const {
    std::vector<Int> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }

  std::vector<Int> row(int i) const {
    std::vector<Int> v(cols);
    for (int j = 0; j < cols; ++j) v[j] = at(i, j);
    return v;
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
  }

  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
  }

  void add_row_multiple(int dst, int src, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < cols; ++c) at(dst, c) += q * at(src, c);
  }

  void add_col_multiple(int dst, int src, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < rows; ++r) at(r, dst) += q * at(r, src);
  }

  void negate_row(int i) {
    for (int c = 0; c < cols; ++c) at(i, c) = -at(i, c);
  }

  void negate_col(int j) {
    for (int r = 0; r < rows; ++r) at(r, j) = -at(r, j);
  }

  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline IntMatrix hcat(const IntMatrix& x, const IntMatrix& y) {
  require(x.rows == y.rows || x.cols == 0 || y.cols == 0, Err::DimensionMismatch,
          "hcat row mismatch");
  int rows = x.cols ? x.rows : y.rows;
  IntMatrix m(rows, x.cols + y.cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < x.cols; ++j) m.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) m.at(i, x.cols + j) = y.at(i, j);
  }
  return m;
}

inline IntMatrix matmul(const IntMatrix& x, const IntMatrix& y) {
  require(x.cols == y.rows, Err::DimensionMismatch, "matmul shape");
  IntMatrix m(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Int& xv = x.at(i, k);
      if (xv == 0) continue;
      for (int j = 0; j < y.cols; ++j) m.at(i, j) += xv * y.at(k, j);
    }
  return m;
}

inline std::vector<Int> matvec(const IntMatrix& m, const std::vector<Int>& v) {
  require(static_cast<int>(v.size()) == m.cols, Err::DimensionMismatch, "matvec shape");
  std::vector<Int> out(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    Int s = 0;
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) s += m.at(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

/// Nearest-integer quotient; the remainder a - q*b satisfies |rem| <= |b|/2.
inline Int round_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0) {
    Int twice = 2 * abs(r);
    if (twice > abs(b) || (twice == abs(b) && ((r < 0) == (b < 0)))) q += ((r < 0) == (b < 0)) ? 1 : -1;
  }
  return q;
}

inline Int gcd_int(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd_int(a, b) * b);
}

struct SnfResult {
  IntMatrix u;  // rows x rows, unimodular
  IntMatrix d;  // rows x cols, diagonal with divisibility chain
  IntMatrix v;  // cols x cols, unimodular
  int rank = 0;
};

/// Area threshold below which the full U*M*V == D postcondition is replayed
/// after every call. Large catalog systems skip the replay but always get the
/// cheap chain/diagonality check.
inline long long& snf_check_limit() {
  static long long limit = 20000;
  return limit;
}

namespace detail {

inline void snf_postcondition(const IntMatrix& m, const SnfResult& s) {
  require(s.d.rows == m.rows && s.d.cols == m.cols, Err::InternalError, "snf shape");
  for (int i = 0; i < s.d.rows; ++i)
    for (int j = 0; j < s.d.cols; ++j)
      if (i != j)
        require(s.d.at(i, j) == 0, Err::InternalError, "snf: D not diagonal");
  int mn = s.d.rows < s.d.cols ? s.d.rows : s.d.cols;
  for (int i = 0; i + 1 < mn; ++i) {
    const Int& a = s.d.at(i, i);
    const Int& b = s.d.at(i + 1, i + 1);
    require(a >= 0 && b >= 0, Err::InternalError, "snf: negative invariant factor");
    if (a == 0)
      require(b == 0, Err::InternalError, "snf: zero before nonzero");
    else
      require(b % a == 0, Err::InternalError, "snf: divisibility chain broken at " + std::to_string(i));
  }
  long long area = static_cast<long long>(m.rows) * m.cols;
  if (area > 0 && area <= snf_check_limit()) {
    IntMatrix umv = matmul(matmul(s.u, m), s.v);
    require(umv == s.d, Err::InternalError, "snf: U*M*V != D");
  }
}

}  // namespace detail

/// Smith normal form: U*M*V = D with U, V unimodular and D diagonal with
/// d1 | d2 | ... Pivoting on the smallest nonzero entry keeps the exact
/// intermediates small in practice.
inline SnfResult smith_normal_form(const IntMatrix& m) {
  SnfResult s;
  s.u = IntMatrix::identity(m.rows);
  s.v = IntMatrix::identity(m.cols);
  s.d = m;
  IntMatrix& d = s.d;
  int mn = m.rows < m.cols ? m.rows : m.cols;

  for (int t = 0; t < mn; ++t) {
    // locate smallest nonzero entry of the trailing submatrix
    int pi = -1, pj = -1;
    for (int i = t; i < d.rows; ++i)
      for (int j = t; j < d.cols; ++j) {
        if (d.at(i, j) == 0) continue;
        if (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    d.swap_rows(t, pi);
    s.u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    s.v.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = round_div(d.at(i, t), d.at(t, t));
        d.add_row_multiple(i, t, -q);
        s.u.add_row_multiple(i, t, -q);
        if (d.at(i, t) != 0) {
          d.swap_rows(t, i);
          s.u.swap_rows(t, i);
          clean = false;
          break;
        }
      }
      if (!clean) continue;
      for (int j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = round_div(d.at(t, j), d.at(t, t));
        d.add_col_multiple(j, t, -q);
        s.v.add_col_multiple(j, t, -q);
        if (d.at(t, j) != 0) {
          d.swap_cols(t, j);
          s.v.swap_cols(t, j);
          clean = false;
          break;
        }
      }
      if (!clean) continue;

      // pivot must divide the rest of the submatrix
      bool divides = true;
      for (int i = t + 1; i < d.rows && divides; ++i)
        for (int j = t + 1; j < d.cols; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            d.add_row_multiple(t, i, 1);
            s.u.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
    }
  }
  for (int i = 0; i < mn; ++i)
    if (d.at(i, i) != 0) s.rank = i + 1;
  detail::snf_postcondition(m, s);
  return s;
}

/// Basis, as matrix columns, of the lattice {x in Z^cols : M x == 0 mod modulus}.
/// The lattice has full rank (it contains modulus * Z^cols).
inline IntMatrix kernel_mod(const IntMatrix& m, const Int& modulus) {
  require(modulus >= 1, Err::DimensionMismatch, "kernel_mod: modulus must be positive");
  SnfResult s = smith_normal_form(m);
  IntMatrix basis(m.cols, m.cols);
  int mn = m.rows < m.cols ? m.rows : m.cols;
  for (int j = 0; j < m.cols; ++j) {
    Int scale = 1;
    if (j < mn && s.d.at(j, j) != 0) scale = modulus / gcd_int(s.d.at(j, j), modulus);
    for (int i = 0; i < m.cols; ++i) basis.at(i, j) = s.v.at(i, j) * scale;
  }
  return basis;
}

/// One solution x of M x == b componentwise mod row_moduli (modulus 0 means an
/// exact integer equation), or nullopt with no solution. Every returned
/// solution is re-verified by substitution.
inline std::optional<std::vector<Int>> solve_mod(const IntMatrix& m, const std::vector<Int>& b,
                                                 const std::vector<Int>& row_moduli) {
  require(static_cast<int>(b.size()) == m.rows, Err::DimensionMismatch, "solve_mod: rhs size");
  require(row_moduli.size() == b.size(), Err::DimensionMismatch, "solve_mod: moduli size");
  // homogenize the congruences: [M | diag(moduli)] (x, y) = b
  int extra = 0;
  for (const Int& md : row_moduli)
    if (md != 0) ++extra;
  IntMatrix aug(m.rows, m.cols + extra);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
  int k = 0;
  for (int i = 0; i < m.rows; ++i)
    if (row_moduli[i] != 0) aug.at(i, m.cols + k++) = row_moduli[i];

  SnfResult s = smith_normal_form(aug);
  std::vector<Int> ub = matvec(s.u, b);
  std::vector<Int> w(aug.cols, 0);
  int mn = aug.rows < aug.cols ? aug.rows : aug.cols;
  for (int i = 0; i < aug.rows; ++i) {
    if (i < mn && s.d.at(i, i) != 0) {
      if (ub[i] % s.d.at(i, i) != 0) return std::nullopt;
      w[i] = ub[i] / s.d.at(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> z = matvec(s.v, w);
  std::vector<Int> x(z.begin(), z.begin() + m.cols);

  std::vector<Int> mx = matvec(m, x);
  for (int i = 0; i < m.rows; ++i) {
    Int diff = mx[i] - b[i];
    if (row_moduli[i] == 0)
      require(diff == 0, Err::InternalError, "solve_mod: substitution failed");
    else
      require(diff % row_moduli[i] == 0, Err::InternalError, "solve_mod: substitution failed");
  }
  return x;
}

/// Square lower-triangular basis (positive diagonal) of the full-rank lattice
/// spanned by the columns of gens, via unimodular column operations.
inline IntMatrix lattice_basis(const IntMatrix& gens) {
  IntMatrix w = gens;
  int c = w.rows;
  for (int r = 0; r < c; ++r) {
    for (;;) {
      int best = -1;
      for (int j = r; j < w.cols; ++j) {
        if (w.at(r, j) == 0) continue;
        if (best < 0 || abs(w.at(r, j)) < abs(w.at(r, best))) best = j;
      }
      require(best >= 0, Err::InternalError, "lattice_basis: rank deficient at row " + std::to_string(r));
      w.swap_cols(r, best);
      bool clean = true;
      for (int j = r + 1; j < w.cols; ++j) {
        if (w.at(r, j) == 0) continue;
        Int q = round_div(w.at(r, j), w.at(r, r));
        w.add_col_multiple(j, r, -q);
        if (w.at(r, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (w.at(r, r) < 0) w.negate_col(r);
  }
  IntMatrix out(c, c);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) out.at(i, j) = w.at(i, j);
  return out;
}

/// Solve W y = b for lower-triangular W; nullopt when the solution is not
/// integral (b outside the lattice spanned by W).
inline std::optional<std::vector<Int>> forward_solve(const IntMatrix& w, const std::vector<Int>& b) {
  require(w.rows == w.cols && static_cast<int>(b.size()) == w.rows, Err::DimensionMismatch,
          "forward_solve shape");
  std::vector<Int> rem = b;
  std::vector<Int> y(w.rows);
  for (int i = 0; i < w.rows; ++i) {
    if (rem[i] % w.at(i, i) != 0) return std::nullopt;
    y[i] = rem[i] / w.at(i, i);
    if (y[i] != 0)
      for (int r = i; r < w.rows; ++r) rem[r] -= y[i] * w.at(r, i);
  }
  return y;
}

/// Exact inverse of a unimodular integer matrix (via its Smith normal form,
/// which must be the identity).
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
  require(u.rows == u.cols, Err::DimensionMismatch, "unimodular_inverse: square required");
  SnfResult s = smith_normal_form(u);
  for (int i = 0; i < u.rows; ++i)
    require(s.d.at(i, i) == 1, Err::InternalError, "unimodular_inverse: matrix not unimodular");
  return matmul(s.v, s.u);
}

}  // namespace rrb
