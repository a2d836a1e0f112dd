#pragma once

#include <map>
#include <string>

#include "ppk/linalg.hpp"

namespace ppk {

/// Structure constants of one bilinear product: e_i · e_j = Σ_k c[i][j][k] e_k.
template <class S>
using MultTable = Tensor3<S>;

/// z = x · y under a table.
template <class S>
Vec<S> table_mul(const MultTable<S>& c, const Vec<S>& x, const Vec<S>& y) {
  const std::size_t n = c.dim(2);
  if (x.size() != c.dim(0) || y.size() != c.dim(1)) throw Error("table_mul shape mismatch");
  Vec<S> z(n, S{});
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j].is_zero()) continue;
      S xy = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!c(i, j, k).is_zero()) z[k] += xy * c(i, j, k);
    }
  }
  return z;
}

/// x · y = Σ_k c[i][j][k] e_k for basis arguments.
template <class S>
Vec<S> table_mul_basis(const MultTable<S>& c, std::size_t i, std::size_t j) {
  Vec<S> z(c.dim(2), S{});
  for (std::size_t k = 0; k < c.dim(2); ++k) z[k] = c(i, j, k);
  return z;
}

template <class S>
MultTable<S> symmetrized(const MultTable<S>& c) {
  const std::size_t n = c.dim(0);
  MultTable<S> r(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) r(i, j, k) = c(i, j, k) + c(j, i, k);
  return r;
}

template <class S>
MultTable<S> antisymmetrized(const MultTable<S>& c) {
  const std::size_t n = c.dim(0);
  MultTable<S> r(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) r(i, j, k) = c(i, j, k) - c(j, i, k);
  return r;
}

/// Recognized table names: zinbiel (∗), prelie (∘), dendriform_succ (≻),
/// dendriform_prec (≺), commassoc (⋆), lie ([ , ]).
template <class S>
struct Algebra {
  std::size_t dim = 0;
  FieldDescriptor field;
  std::map<std::string, MultTable<S>> tables;

  Algebra() = default;
  Algebra(std::size_t n, FieldDescriptor f) : dim(n), field(f) {}

  bool has_table(const std::string& name) const { return tables.count(name) != 0; }

  const MultTable<S>& table(const std::string& name) const {
    auto it = tables.find(name);
    if (it == tables.end()) throw Error("algebra is missing required table '" + name + "'");
    return it->second;
  }

  MultTable<S>& add_table(const std::string& name) {
    return tables[name] = MultTable<S>(dim, dim, dim);
  }

  void set_table(const std::string& name, MultTable<S> t) {
    if (t.dim(0) != dim || t.dim(1) != dim || t.dim(2) != dim)
      throw Error("table '" + name + "' has the wrong shape");
    tables[name] = std::move(t);
  }

  Vec<S> mul(const std::string& name, const Vec<S>& x, const Vec<S>& y) const {
    return table_mul(table(name), x, y);
  }
};

/// x⋆y = x∗y + y∗x and [x,y] = x∘y − y∘x on the same space. When the input
/// is a pre-Poisson algebra the result is its sub-adjacent Poisson algebra.
template <class S>
Algebra<S> sub_adjacent(const Algebra<S>& a) {
  Algebra<S> r(a.dim, a.field);
  r.set_table("commassoc", symmetrized(a.table("zinbiel")));
  r.set_table("lie", antisymmetrized(a.table("prelie")));
  return r;
}

/// A Zinbiel product is a dendriform pair with x≻y = x∗y and x≺y = y∗x.
template <class S>
Algebra<S> zinbiel_to_dendriform(const Algebra<S>& a) {
  const auto& c = a.table("zinbiel");
  const std::size_t n = a.dim;
  Algebra<S> r(n, a.field);
  MultTable<S> succ(n, n, n), prec(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        succ(i, j, k) = c(i, j, k);
        prec(i, j, k) = c(j, i, k);
      }
  r.set_table("dendriform_succ", std::move(succ));
  r.set_table("dendriform_prec", std::move(prec));
  return r;
}

/// Change of basis: table of the same product expressed in the basis given
/// by the columns of P (invertible).
template <class S>
MultTable<S> transform_table(const MultTable<S>& c, const Matrix<S>& p) {
  const std::size_t n = c.dim(0);
  if (p.rows() != n || p.cols() != n) throw Error("change of basis shape mismatch");
  MultTable<S> r(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<S> pi(n, S{}), pj(n, S{});
      for (std::size_t k = 0; k < n; ++k) { pi[k] = p(k, i); pj[k] = p(k, j); }
      Vec<S> prod = table_mul(c, pi, pj);
      auto coeffs = solve_linear(p, prod);
      if (!coeffs) throw Error("change of basis matrix is singular");
      for (std::size_t k = 0; k < n; ++k) r(i, j, k) = (*coeffs)[k];
    }
  return r;
}

}  // namespace ppk
