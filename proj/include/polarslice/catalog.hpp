#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarslice/rep.hpp"

namespace polarslice {

struct FamilySpec {
  std::string family_id;
  std::optional<int> n;
  std::optional<int> m;
};

struct family_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CatalogEntry {
  OrthogonalRep rep;
  std::optional<SliceBasis> slice;  // absent for the negative control
};

struct FamilyTemplate {
  std::string family_id;
  std::string description;
  std::string params;      // e.g. "n >= 2" or "1 <= n <= m"
  bool requires_m = false;
};

namespace detail {

inline ExactMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  ExactMatrix e(n, n);
  e(i, j) = 1;
  return e;
}

/// Basis of skew-symmetric k x k matrices: E_ij - E_ji for i < j, lex.
inline std::vector<ExactMatrix> skew_basis(std::size_t k) {
  std::vector<ExactMatrix> b;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      ExactMatrix a(k, k);
      a(i, j) = 1;
      a(j, i) = -1;
      b.push_back(std::move(a));
    }
  return b;
}

/// Basis of gl_k: matrix units E_ij, row-major.
inline std::vector<ExactMatrix> gl_basis(std::size_t k) {
  std::vector<ExactMatrix> b;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b.push_back(matrix_unit(k, i, j));
  return b;
}

/// Basis of sl_n: E_ij (i<j, lex), then H_k = E_kk - E_{k+1,k+1}, then
/// E_ij (i>j, lex). For n = 2 this is the familiar (e, h, f).
inline std::vector<ExactMatrix> sl_basis(std::size_t n) {
  std::vector<ExactMatrix> b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) b.push_back(matrix_unit(n, i, j));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    ExactMatrix h(n, n);
    h(k, k) = 1;
    h(k + 1, k + 1) = -1;
    b.push_back(std::move(h));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) b.push_back(matrix_unit(n, i, j));
  return b;
}

/// Coordinates of a traceless matrix in the sl_basis ordering. The diagonal
/// part (d_1,...,d_n), sum 0, has H-coordinates c_k = d_1 + ... + d_k.
inline RationalVector sl_coords(const ExactMatrix& m) {
  std::size_t n = m.rows();
  RationalVector c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c.push_back(m(i, j));
  Rational partial(0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    partial += m(k, k);
    c.push_back(partial);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) c.push_back(m(i, j));
  return c;
}

inline ExactMatrix bracket(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix ab = a * b;
  ExactMatrix ba = b * a;
  ExactMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = ab(i, j) - ba(i, j);
  return r;
}

inline Rational trace_of_product(const ExactMatrix& a, const ExactMatrix& b) {
  Rational t(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

/// Basis of sp(n) inside gl_{2n}, for the symplectic form with matrix
/// J = [[0, I], [-I, 0]]: block matrices [[X, Y], [Z, -X^T]] with Y, Z
/// symmetric. Ordering: X-part (matrix units, row-major), Y-part (i <= j),
/// Z-part (i <= j).
inline std::vector<ExactMatrix> sp_basis(std::size_t n) {
  std::vector<ExactMatrix> b;
  std::size_t d = 2 * n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ExactMatrix a(d, d);
      a(i, j) = 1;
      a(n + j, n + i) = -1;
      b.push_back(std::move(a));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      ExactMatrix a(d, d);
      a(i, n + j) = 1;
      a(j, n + i) = 1;
      b.push_back(std::move(a));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      ExactMatrix a(d, d);
      a(n + i, j) = 1;
      a(n + j, i) = 1;
      b.push_back(std::move(a));
    }
  return b;
}

/// Entry of the symplectic form matrix J (size 2n).
inline Rational symplectic_entry(std::size_t n, std::size_t a, std::size_t b) {
  if (b == a + n) return 1;
  if (a == b + n) return -1;
  return 0;
}

inline RationalVector unit_vector(std::size_t dim, std::size_t i) {
  RationalVector v(dim, Rational(0));
  v[i] = 1;
  return v;
}

// -------- family builders --------

inline int require_n(const FamilySpec& s, int min) {
  if (!s.n) throw family_error(s.family_id + ": parameter n required");
  if (*s.n < min)
    throw family_error(s.family_id + ": n must be >= " + std::to_string(min));
  return *s.n;
}

inline std::pair<int, int> require_nm(const FamilySpec& s, int min_n) {
  int n = require_n(s, min_n);
  if (!s.m) throw family_error(s.family_id + ": parameter m required");
  if (*s.m < n) throw family_error(s.family_id + ": requires n <= m");
  return {n, *s.m};
}

inline CatalogEntry build_adjoint_sln(const FamilySpec& spec) {
  std::size_t n = static_cast<std::size_t>(require_n(spec, 2));
  auto basis = sl_basis(n);
  std::size_t dim = basis.size();
  OrthogonalRep rep;
  rep.name = "adjoint-sln(n=" + std::to_string(n) + ")";
  rep.dim = dim;
  // Killing form of sl_n: B(x, y) = 2n Tr(xy).
  rep.gram = ExactMatrix(dim, dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = 0; l < dim; ++l)
      rep.gram(k, l) = Rational(2 * n) * trace_of_product(basis[k], basis[l]);
  for (std::size_t k = 0; k < dim; ++k) {
    ExactMatrix ad(dim, dim);
    for (std::size_t l = 0; l < dim; ++l) {
      RationalVector col = sl_coords(bracket(basis[k], basis[l]));
      for (std::size_t i = 0; i < dim; ++i) ad(i, l) = col[i];
    }
    rep.generators.push_back(std::move(ad));
  }
  rep.metadata = {{"family", "adjoint-sln"}, {"n", n}};
  // Slice: the diagonal Cartan subalgebra, i.e. the H_k coordinates.
  std::size_t h_offset = n * (n - 1) / 2;
  SliceBasis slice;
  for (std::size_t k = 0; k + 1 < n; ++k)
    slice.vectors.push_back(unit_vector(dim, h_offset + k));
  return {std::move(rep), std::move(slice)};
}

inline CatalogEntry build_so_standard(const FamilySpec& spec) {
  std::size_t n = static_cast<std::size_t>(require_n(spec, 2));
  OrthogonalRep rep;
  rep.name = "so-standard(n=" + std::to_string(n) + ")";
  rep.dim = n;
  rep.gram = ExactMatrix::identity(n);
  rep.generators = skew_basis(n);
  rep.metadata = {{"family", "so-standard"}, {"n", n}};
  SliceBasis slice;
  slice.vectors.push_back(unit_vector(n, 0));
  return {std::move(rep), std::move(slice)};
}

/// Basis ordering for symmetric traceless matrices: diagonal part
/// D_k = E_kk - E_{k+1,k+1} first, then E_ij + E_ji for i < j, lex.
inline CatalogEntry build_so_sym_traceless(const FamilySpec& spec) {
  std::size_t n = static_cast<std::size_t>(require_n(spec, 2));
  std::vector<ExactMatrix> basis;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    ExactMatrix d(n, n);
    d(k, k) = 1;
    d(k + 1, k + 1) = -1;
    basis.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ExactMatrix s(n, n);
      s(i, j) = 1;
      s(j, i) = 1;
      basis.push_back(std::move(s));
    }
  std::size_t dim = basis.size();
  auto coords = [&](const ExactMatrix& m) {
    RationalVector c;
    Rational partial(0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      partial += m(k, k);
      c.push_back(partial);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) c.push_back(m(i, j));
    return c;
  };
  OrthogonalRep rep;
  rep.name = "so-sym-traceless(n=" + std::to_string(n) + ")";
  rep.dim = dim;
  rep.gram = ExactMatrix(dim, dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = 0; l < dim; ++l)
      rep.gram(k, l) = trace_of_product(basis[k], basis[l]);
  for (const ExactMatrix& a : skew_basis(n)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t l = 0; l < dim; ++l) {
      RationalVector col = coords(bracket(a, basis[l]));
      for (std::size_t i = 0; i < dim; ++i) gen(i, l) = col[i];
    }
    rep.generators.push_back(std::move(gen));
  }
  rep.metadata = {{"family", "so-sym-traceless"}, {"n", n}};
  SliceBasis slice;
  for (std::size_t k = 0; k + 1 < n; ++k) slice.vectors.push_back(unit_vector(dim, k));
  return {std::move(rep), std::move(slice)};
}

inline CatalogEntry build_onom_matrix(const FamilySpec& spec) {
  auto [ni, mi] = require_nm(spec, 1);
  std::size_t n = ni, m = mi;
  std::size_t dim = n * m;  // row-major matrix units
  auto idx = [m](std::size_t i, std::size_t j) { return i * m + j; };
  OrthogonalRep rep;
  rep.name = "onom-matrix(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
  rep.dim = dim;
  rep.gram = ExactMatrix::identity(dim);
  // Left action M -> aM for skew a, then right action M -> -Mb for skew b.
  for (const ExactMatrix& a : skew_basis(n)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t r = 0; r < n; ++r)
          if (a(r, i) != 0) gen(idx(r, j), idx(i, j)) = a(r, i);
    rep.generators.push_back(std::move(gen));
  }
  for (const ExactMatrix& b : skew_basis(m)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t c = 0; c < m; ++c)
          if (b(j, c) != 0) gen(idx(i, c), idx(i, j)) = -b(j, c);
    rep.generators.push_back(std::move(gen));
  }
  rep.metadata = {{"family", "onom-matrix"}, {"n", n}, {"m", m}};
  SliceBasis slice;
  for (std::size_t i = 0; i < n; ++i) slice.vectors.push_back(unit_vector(dim, idx(i, i)));
  return {std::move(rep), std::move(slice)};
}

inline CatalogEntry build_sp_lambda2(const FamilySpec& spec) {
  std::size_t n = static_cast<std::size_t>(require_n(spec, 1));
  std::size_t d = 2 * n;
  // Wedge basis e_i ^ e_j, i < j, lex.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> pos(d, std::vector<std::size_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      pos[i][j] = pairs.size();
      pairs.emplace_back(i, j);
    }
  std::size_t dim = pairs.size();
  OrthogonalRep rep;
  rep.name = "sp-lambda2(n=" + std::to_string(n) + ")";
  rep.dim = dim;
  rep.gram = ExactMatrix(dim, dim);
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = 0; q < dim; ++q) {
      auto [i, j] = pairs[p];
      auto [k, l] = pairs[q];
      rep.gram(p, q) = symplectic_entry(n, i, k) * symplectic_entry(n, j, l) -
                       symplectic_entry(n, i, l) * symplectic_entry(n, j, k);
    }
  // Induced derivation: A.(e_i ^ e_j) = (A e_i) ^ e_j + e_i ^ (A e_j).
  for (const ExactMatrix& a : sp_basis(n)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t p = 0; p < dim; ++p) {
      auto [i, j] = pairs[p];
      for (std::size_t r = 0; r < d; ++r) {
        if (a(r, i) != 0 && r != j) {
          if (r < j) gen(pos[r][j], p) += a(r, i);
          else gen(pos[j][r], p) -= a(r, i);
        }
        if (a(r, j) != 0 && r != i) {
          if (i < r) gen(pos[i][r], p) += a(r, j);
          else gen(pos[r][i], p) -= a(r, j);
        }
      }
    }
    rep.generators.push_back(std::move(gen));
  }
  rep.metadata = {{"family", "sp-lambda2"}, {"n", n}};
  SliceBasis slice;
  for (std::size_t i = 0; i < n; ++i) slice.vectors.push_back(unit_vector(dim, pos[i][n + i]));
  return {std::move(rep), std::move(slice)};
}

inline CatalogEntry build_spn_spm_tensor(const FamilySpec& spec) {
  auto [ni, mi] = require_nm(spec, 1);
  std::size_t n = ni, m = mi;
  std::size_t rows = 2 * n, cols = 2 * m;
  std::size_t dim = rows * cols;
  auto idx = [cols](std::size_t i, std::size_t j) { return i * cols + j; };
  OrthogonalRep rep;
  rep.name = "spn-spm-tensor(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
  rep.dim = dim;
  // <E_ab | E_cd> = (J_n)_{ca} (J_m)_{bd}.
  rep.gram = ExactMatrix(dim, dim);
  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t b = 0; b < cols; ++b)
      for (std::size_t c = 0; c < rows; ++c)
        for (std::size_t dd = 0; dd < cols; ++dd)
          rep.gram(idx(a, b), idx(c, dd)) =
              symplectic_entry(n, c, a) * symplectic_entry(m, b, dd);
  for (const ExactMatrix& a : sp_basis(n)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t r = 0; r < rows; ++r)
          if (a(r, i) != 0) gen(idx(r, j), idx(i, j)) = a(r, i);
    rep.generators.push_back(std::move(gen));
  }
  for (const ExactMatrix& b : sp_basis(m)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t c = 0; c < cols; ++c)
          if (b(j, c) != 0) gen(idx(i, c), idx(i, j)) = -b(j, c);
    rep.generators.push_back(std::move(gen));
  }
  rep.metadata = {{"family", "spn-spm-tensor"}, {"n", n}, {"m", m}};
  // Slice: for each i, the matrix with 1 at (i, i) and 1 at (n+i, m+i).
  SliceBasis slice;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector v(dim, Rational(0));
    v[idx(i, i)] = 1;
    v[idx(n + i, m + i)] = 1;
    slice.vectors.push_back(std::move(v));
  }
  return {std::move(rep), std::move(slice)};
}

inline CatalogEntry build_sln_std_dual(const FamilySpec& spec) {
  std::size_t n = static_cast<std::size_t>(require_n(spec, 2));
  std::size_t dim = 2 * n;
  OrthogonalRep rep;
  rep.name = "sln-std-dual(n=" + std::to_string(n) + ")";
  rep.dim = dim;
  rep.gram = ExactMatrix(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    rep.gram(i, n + i) = 1;
    rep.gram(n + i, i) = 1;
  }
  // a.(v, w) = (a v, -a^T w).
  for (const ExactMatrix& a : sl_basis(n)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        gen(i, j) = a(i, j);
        gen(n + i, n + j) = -a(j, i);
      }
    rep.generators.push_back(std::move(gen));
  }
  rep.metadata = {{"family", "sln-std-dual"}, {"n", n}};
  SliceBasis slice;
  RationalVector v(dim, Rational(0));
  v[0] = 1;
  v[n] = 1;
  slice.vectors.push_back(std::move(v));
  return {std::move(rep), std::move(slice)};
}

/// Shared machinery for the pair families (A, B) |-> (aA + Ab', -a'B - Bb)
/// on symmetric or skew matrix pairs under gl_n.
inline CatalogEntry build_gln_pairs(const FamilySpec& spec, bool symmetric) {
  std::size_t n = static_cast<std::size_t>(require_n(spec, symmetric ? 1 : 2));
  std::vector<ExactMatrix> basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = symmetric ? i : i + 1; j < n; ++j) {
      ExactMatrix s(n, n);
      s(i, j) += 1;
      if (symmetric) s(j, i) += (i == j) ? 0 : 1;
      else s(j, i) -= 1;
      basis.push_back(std::move(s));
      pairs.emplace_back(i, j);
    }
  std::size_t p = basis.size();
  std::size_t dim = 2 * p;
  auto coords = [&](const ExactMatrix& m) {
    RationalVector c(p);
    for (std::size_t k = 0; k < p; ++k) c[k] = m(pairs[k].first, pairs[k].second);
    return c;
  };
  OrthogonalRep rep;
  rep.name = std::string(symmetric ? "gln-sym-pairs" : "gln-skew-pairs") +
             "(n=" + std::to_string(n) + ")";
  rep.dim = dim;
  // <(A,B)|(C,D)> = Tr(AD + BC): off-diagonal blocks T with
  // T_kl = Tr(basis_k basis_l).
  rep.gram = ExactMatrix(dim, dim);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = 0; l < p; ++l) {
      Rational t = trace_of_product(basis[k], basis[l]);
      rep.gram(k, p + l) = t;
      rep.gram(p + k, l) = t;
    }
  // a.(A, B) = (aA + Aa^T, -a^T B - Ba) for each matrix unit a of gl_n.
  for (const ExactMatrix& a : gl_basis(n)) {
    ExactMatrix gen(dim, dim);
    ExactMatrix at = a.transpose();
    for (std::size_t l = 0; l < p; ++l) {
      RationalVector top = coords(a * basis[l] + basis[l] * at);
      ExactMatrix minus_bot = at * basis[l] + basis[l] * a;
      RationalVector bot = coords(minus_bot);
      for (std::size_t i = 0; i < p; ++i) {
        gen(i, l) = top[i];
        gen(p + i, p + l) = -bot[i];
      }
    }
    rep.generators.push_back(std::move(gen));
  }
  rep.metadata = {{"family", symmetric ? "gln-sym-pairs" : "gln-skew-pairs"}, {"n", n}};
  SliceBasis slice;
  auto pair_vector = [&](const ExactMatrix& m) {
    RationalVector c = coords(m);
    RationalVector v(dim, Rational(0));
    for (std::size_t k = 0; k < p; ++k) {
      v[k] = c[k];
      v[p + k] = c[k];
    }
    return v;
  };
  if (symmetric) {
    for (std::size_t k = 0; k < n; ++k) slice.vectors.push_back(pair_vector(matrix_unit(n, k, k)));
  } else if (n % 2 == 0) {
    std::size_t h = n / 2;
    for (std::size_t k = 0; k < h; ++k) {
      ExactMatrix kk(n, n);
      kk(k, h + k) = 1;
      kk(h + k, k) = -1;
      slice.vectors.push_back(pair_vector(kk));
    }
  } else {
    std::size_t h = (n - 1) / 2;
    for (std::size_t k = 0; k < h; ++k) {
      ExactMatrix kk(n, n);
      kk(k, h + 1 + k) = 1;
      kk(h + 1 + k, k) = -1;
      slice.vectors.push_back(pair_vector(kk));
    }
  }
  return {std::move(rep), std::move(slice)};
}

inline CatalogEntry build_spn_std_dual(const FamilySpec& spec) {
  std::size_t n = static_cast<std::size_t>(require_n(spec, 1));
  std::size_t d = 2 * n;
  std::size_t dim = 2 * d;
  OrthogonalRep rep;
  rep.name = "spn-std-dual(n=" + std::to_string(n) + ")";
  rep.dim = dim;
  // <(v,w)|(x,y)> = v^T J y + x^T J w, block matrix [[0, J], [J^T, 0]].
  rep.gram = ExactMatrix(dim, dim);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Rational e = symplectic_entry(n, a, b);
      rep.gram(a, d + b) = e;
      rep.gram(d + b, a) = e;
    }
  // The dual of the standard representation is identified with the standard
  // one via the symplectic form; the algebra acts diagonally.
  for (const ExactMatrix& a : sp_basis(n)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        gen(i, j) = a(i, j);
        gen(d + i, d + j) = a(i, j);
      }
    rep.generators.push_back(std::move(gen));
  }
  rep.metadata = {{"family", "spn-std-dual"}, {"n", n}};
  // Slice: the line through (v, w) with v_i = 1, w_i = i. Then w_i != 0 and
  // v_i w_j - v_j w_i = j - i != 0 for i != j.
  SliceBasis slice;
  RationalVector v(dim, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = 1;
    v[d + i] = Rational(static_cast<long>(i + 1));
  }
  slice.vectors.push_back(std::move(v));
  return {std::move(rep), std::move(slice)};
}

inline CatalogEntry build_gln_glm_tensor_pairs(const FamilySpec& spec) {
  auto [ni, mi] = require_nm(spec, 1);
  std::size_t n = ni, m = mi;
  std::size_t p = n * m;
  std::size_t dim = 2 * p;
  auto idx = [m](std::size_t i, std::size_t j) { return i * m + j; };
  OrthogonalRep rep;
  rep.name = "gln-glm-tensor-pairs(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
  rep.dim = dim;
  // <(A,B)|(C,D)> = Tr(A^T D + C^T B): identity off-diagonal blocks.
  rep.gram = ExactMatrix(dim, dim);
  for (std::size_t k = 0; k < p; ++k) {
    rep.gram(k, p + k) = 1;
    rep.gram(p + k, k) = 1;
  }
  // (a, 0).(A, B) = (aA, -a^T B)
  for (const ExactMatrix& a : gl_basis(n)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t r = 0; r < n; ++r) {
          if (a(r, i) != 0) gen(idx(r, j), idx(i, j)) += a(r, i);
          if (a(i, r) != 0) gen(p + idx(r, j), p + idx(i, j)) -= a(i, r);
        }
    rep.generators.push_back(std::move(gen));
  }
  // (0, b).(A, B) = (Ab^T, -Bb)
  for (const ExactMatrix& b : gl_basis(m)) {
    ExactMatrix gen(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t c = 0; c < m; ++c) {
          if (b(c, j) != 0) gen(idx(i, c), idx(i, j)) += b(c, j);
          if (b(j, c) != 0) gen(p + idx(i, c), p + idx(i, j)) -= b(j, c);
        }
    rep.generators.push_back(std::move(gen));
  }
  rep.metadata = {{"family", "gln-glm-tensor-pairs"}, {"n", n}, {"m", m}};
  SliceBasis slice;
  for (std::size_t k = 0; k < n; ++k) {
    RationalVector v(dim, Rational(0));
    v[idx(k, k)] = 1;
    v[p + idx(k, k)] = 1;
    slice.vectors.push_back(std::move(v));
  }
  return {std::move(rep), std::move(slice)};
}

inline CatalogEntry build_sl2_quartics(const FamilySpec&) {
  // Basis x^4, x^3 y, x^2 y^2, x y^3, y^4. The form is fixed by
  // <x^4 | y^4> = 12 together with invariance.
  OrthogonalRep rep;
  rep.name = "sl2-quartics";
  rep.dim = 5;
  rep.gram = ExactMatrix(5, 5);
  rep.gram(0, 4) = 12;
  rep.gram(4, 0) = 12;
  rep.gram(1, 3) = -3;
  rep.gram(3, 1) = -3;
  rep.gram(2, 2) = 2;
  // Derivations h = x d/dx - y d/dy, e = x d/dy, f = y d/dx on x^{4-k} y^k.
  ExactMatrix h(5, 5), e(5, 5), f(5, 5);
  for (std::size_t k = 0; k <= 4; ++k) {
    h(k, k) = Rational(4 - 2 * static_cast<long>(k));
    if (k >= 1) e(k - 1, k) = Rational(static_cast<long>(k));
    if (k <= 3) f(k + 1, k) = Rational(4 - static_cast<long>(k));
  }
  rep.generators = {h, e, f};
  rep.metadata = {{"family", "sl2-quartics"}};
  SliceBasis slice;
  slice.vectors.push_back({1, 0, 0, 0, 1});  // x^4 + y^4
  slice.vectors.push_back({0, 0, 1, 0, 0});  // x^2 y^2
  return {std::move(rep), std::move(slice)};
}

inline CatalogEntry build_so2_double_standard(const FamilySpec&) {
  // Negative control: the rotation algebra acting diagonally on two copies
  // of the plane. No slice exists; the tester must say so.
  OrthogonalRep rep;
  rep.name = "so2-double-standard";
  rep.dim = 4;
  rep.gram = ExactMatrix::identity(4);
  ExactMatrix g(4, 4);
  g(0, 1) = -1;
  g(1, 0) = 1;
  g(2, 3) = -1;
  g(3, 2) = 1;
  rep.generators = {g};
  rep.metadata = {{"family", "so2-double-standard"}};
  return {std::move(rep), std::nullopt};
}

}  // namespace detail

/// Builds a validated representation together with its claimed slice basis
/// (absent only for the negative control).
inline CatalogEntry catalog_build(const FamilySpec& spec) {
  CatalogEntry entry = [&] {
    const std::string& id = spec.family_id;
    if (id == "adjoint-sln") return detail::build_adjoint_sln(spec);
    if (id == "so-standard") return detail::build_so_standard(spec);
    if (id == "so-sym-traceless") return detail::build_so_sym_traceless(spec);
    if (id == "onom-matrix") return detail::build_onom_matrix(spec);
    if (id == "sp-lambda2") return detail::build_sp_lambda2(spec);
    if (id == "spn-spm-tensor") return detail::build_spn_spm_tensor(spec);
    if (id == "sln-std-dual") return detail::build_sln_std_dual(spec);
    if (id == "gln-sym-pairs") return detail::build_gln_pairs(spec, true);
    if (id == "gln-skew-pairs") return detail::build_gln_pairs(spec, false);
    if (id == "spn-std-dual") return detail::build_spn_std_dual(spec);
    if (id == "gln-glm-tensor-pairs") return detail::build_gln_glm_tensor_pairs(spec);
    if (id == "sl2-quartics") return detail::build_sl2_quartics(spec);
    if (id == "so2-double-standard") return detail::build_so2_double_standard(spec);
    throw family_error("unknown family '" + id + "'");
  }();
  ValidationReport vr = validate(entry.rep);
  if (!vr.ok) throw validation_error(vr);
  return entry;
}

/// The 13 family templates with parameter ranges.
inline std::vector<FamilyTemplate> catalog_list() {
  return {
      {"adjoint-sln", "traceless n x n matrices under bracket, Killing form", "n >= 2", false},
      {"so-standard", "rotation algebra on n-space with the standard form", "n >= 2", false},
      {"so-sym-traceless", "symmetric traceless n x n matrices under commutator with skew matrices", "n >= 2", false},
      {"onom-matrix", "n x m matrices under left/right skew actions, trace form", "1 <= n <= m", true},
      {"sp-lambda2", "second alternating power of the standard symplectic 2n-space", "n >= 1", false},
      {"spn-spm-tensor", "2n x 2m matrices under left/right symplectic actions", "1 <= n <= m", true},
      {"sln-std-dual", "standard plus dual column vectors under traceless matrices", "n >= 2", false},
      {"gln-sym-pairs", "pairs of symmetric matrices under the general linear algebra", "n >= 1", false},
      {"gln-skew-pairs", "pairs of skew matrices under the general linear algebra", "n >= 2", false},
      {"spn-std-dual", "two copies of the standard symplectic 2n-space, symplectic pairing", "n >= 1", false},
      {"gln-glm-tensor-pairs", "pairs of n x m matrices under two general linear algebras", "1 <= n <= m", true},
      {"sl2-quartics", "binary quartic forms under the three standard derivations", "none", false},
      {"so2-double-standard", "negative control: plane rotations acting diagonally on two planes", "none", false},
  };
}

}  // namespace polarslice
