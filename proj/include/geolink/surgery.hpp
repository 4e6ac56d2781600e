#pragma once

// Rational linking after surgery on the three-component Hopf link, and the
// first homology of the unit tangent bundle of a triangle orbisurface.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "geolink/error.hpp"
#include "geolink/rational.hpp"
#include "geolink/template_model.hpp"
#include "geolink/words.hpp"

namespace geolink {

struct QForm {
  SurfaceSpec surface;
  std::array<std::array<Rational, 3>, 3> entries;

  Rational operator()(const HopfVector& x, const HopfVector& y) const {
    const std::array<long long, 3> u{x.l1, x.l2, x.l3};
    const std::array<long long, 3> v{y.l1, y.l2, y.l3};
    Rational sum;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (u[i] == 0 || v[j] == 0) continue;
        sum += entries[i][j] * Rational(BigInt(u[i]) * v[j]);
      }
    }
    return sum;
  }
};

inline QForm q_form(const SurfaceSpec& s) {
  const long long p = s.p(), q = s.q(), r = s.r();
  const long long d = s.euler_denominator();
  if (d == 0) throw Error(ErrorKind::invalid_surface, "degenerate surgery form");
  const long long m[3][3] = {
      {q * r - q - r, r, q},
      {r, p * r - p - r, p},
      {q, p, p * q - p - q},
  };
  QForm out{s, {}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.entries[i][j] = Rational(BigInt(m[i][j]), BigInt(d));
  }
  return out;
}

/// Template linking plus the surgery term, for any two distinct template
/// orbits, admissible or not.
inline Rational template_surgered_linking(const SurfaceSpec& s, const CyclicWord& w1,
                                          const CyclicWord& w2, const TemplateModel& m) {
  return Rational(s3_linking(w1, w2, m)) +
         q_form(s)(hopf_linking_vector(w1), hopf_linking_vector(w2));
}

inline Rational template_surgered_self_linking(const SurfaceSpec& s, const CyclicWord& w,
                                               const TemplateModel& m) {
  const HopfVector v = hopf_linking_vector(w);
  return Rational(s3_self_linking(w, m)) + q_form(s)(v, v);
}

/// Linking in the unit tangent bundle of two distinct orbit codes. Only
/// identical canonical codes are refused.
inline Rational surgered_linking(const SurfaceSpec& s, const CyclicWord& w1, const CyclicWord& w2,
                                 const TemplateModel& m) {
  require_admissible(w1, s);
  require_admissible(w2, s);
  if (same_orbit_code(w1, w2)) {
    throw Error(ErrorKind::same_orbit, "'" + w1.str() + "' and '" + w2.str() +
                                           "' are the same code; use surgered_self_linking");
  }
  return template_surgered_linking(s, w1, w2, m);
}

/// Linking of an orbit with its stable push-off.
inline Rational surgered_self_linking(const SurfaceSpec& s, const CyclicWord& w,
                                      const TemplateModel& m) {
  require_admissible(w, s);
  return template_surgered_self_linking(s, w, m);
}

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Star-shaped plumbing presentation: arms p, q, r around a central vertex.
/// Its determinant is pqr - pq - qr - pr. With -1 at the centre the
/// determinant would be -(pqr + pq + qr + pr) instead.
inline IntMatrix presentation_matrix(const SurfaceSpec& s) {
  return {
      {s.p(), 0, 0, 1},
      {0, s.q(), 0, 1},
      {0, 0, s.r(), 1},
      {1, 1, 1, 1},
  };
}

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix out(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

inline IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  const std::size_t n = x.size(), k = y.size(), m = y.empty() ? 0 : y[0].size();
  IntMatrix out(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      if (x[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += x[i][t] * y[t][j];
    }
  }
  return out;
}

/// U * M * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

inline SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t rows = M.size();
  const std::size_t cols = rows == 0 ? 0 : M[0].size();
  SmithForm f{identity_matrix(rows), M, identity_matrix(cols)};
  IntMatrix& A = f.D;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(A[i], A[j]);
    std::swap(f.U[i], f.U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : f.V) std::swap(row[i], row[j]);
  };
  // row_i -= k * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t c = 0; c < cols; ++c) A[i][c] -= k * A[j][c];
    for (std::size_t c = 0; c < rows; ++c) f.U[i][c] -= k * f.U[j][c];
  };
  // col_i -= k * col_j
  auto add_col = [&](std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t r = 0; r < rows; ++r) A[r][i] -= k * A[r][j];
    for (std::size_t r = 0; r < cols; ++r) f.V[r][i] -= k * f.V[r][j];
  };

  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // pivot: least absolute nonzero entry of the remaining block
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (A[i][j] != 0 && (pr == rows || abs(A[i][j]) < abs(A[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) return f;
      swap_rows(t, pr);
      swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (A[i][t] == 0) continue;
        add_row(i, t, A[i][t] / A[t][t]);
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (A[t][j] == 0) continue;
        add_col(j, t, A[t][j] / A[t][t]);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold a row holding a non-multiple into row t
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (A[i][j] % A[t][t] != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row == rows) break;
      add_row(t, bad_row, BigInt(-1));
    }
    if (A[t][t] < 0) {
      for (std::size_t c = 0; c < cols; ++c) A[t][c] = -A[t][c];
      for (std::size_t c = 0; c < rows; ++c) f.U[t][c] = -f.U[t][c];
    }
  }
  return f;
}

/// Z^free_rank x Z/f_1 x ... x Z/f_k with f_i >= 2 and f_i | f_{i+1}.
struct AbelianGroup {
  std::vector<BigInt> factors;
  int free_rank = 0;

  bool is_trivial() const { return factors.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }

  BigInt order() const {
    if (!is_finite()) throw Error(ErrorKind::out_of_range, "infinite group has no order");
    BigInt out = 1;
    for (const auto& f : factors) out *= f;
    return out;
  }

  std::string str() const {
    if (is_trivial()) return "trivial";
    std::string out;
    auto append = [&](const std::string& part) {
      if (!out.empty()) out += " + ";
      out += part;
    };
    for (const auto& f : factors) append("Z/" + f.str());
    if (free_rank == 1) append("Z");
    if (free_rank > 1) append("Z^" + std::to_string(free_rank));
    return out;
  }
};

/// Z^rows / M Z^cols.
inline AbelianGroup cokernel(const IntMatrix& M) {
  const std::size_t rows = M.size();
  const std::size_t cols = M.empty() ? 0 : M[0].size();
  const SmithForm f = smith_normal_form(M);
  AbelianGroup g;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) {
    const BigInt& d = f.D[i][i];
    if (d == 0) continue;
    ++nonzero;
    if (d != 1) g.factors.push_back(d);
  }
  g.free_rank = static_cast<int>(rows - nonzero);
  return g;
}

inline AbelianGroup homology(const SurfaceSpec& s) { return cokernel(presentation_matrix(s)); }

}  // namespace geolink
