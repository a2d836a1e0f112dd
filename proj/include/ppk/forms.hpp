#pragma once

#include "ppk/algebra.hpp"
#include "ppk/check.hpp"

namespace ppk {

/// Bilinear form ω(x, y) = xᵀ W y. For Connes-cocycle and symplectic use it
/// must be antisymmetric and nondegenerate; validate() enforces both.
template <class S>
struct BilinearForm {
  Matrix<S> w;

  std::size_t dim() const { return w.rows(); }

  S operator()(const Vec<S>& x, const Vec<S>& y) const {
    S acc{};
    for (std::size_t i = 0; i < w.rows(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < w.cols(); ++j)
        if (!w(i, j).is_zero()) acc += x[i] * w(i, j) * y[j];
    }
    return acc;
  }

  bool antisymmetric() const { return w.transposed() == -w; }
  bool nondegenerate() const { return !determinant(w).is_zero(); }

  void validate() const {
    if (w.rows() != w.cols()) throw Error("bilinear form matrix must be square");
    if (!antisymmetric()) throw Error("bilinear form is not antisymmetric");
    if (!nondegenerate()) throw Error("bilinear form is degenerate");
  }
};

/// ω(x·y, z) + ω(y·z, x) + ω(z·x, y) = 0 on all basis triples. With a
/// commutative associative table this is the Connes cocycle condition; with
/// a Lie bracket it is the 2-cocycle (symplectic) condition.
template <class S>
CheckReport<S> check_cyclic_cocycle(const MultTable<S>& prod, const BilinearForm<S>& omega,
                                    const std::string& id) {
  omega.validate();
  const std::size_t n = prod.dim(0);
  if (omega.dim() != n) throw Error("form and table dimensions disagree");
  CheckReport<S> report;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec<S> x = basis_vec<S>(n, i), y = basis_vec<S>(n, j), z = basis_vec<S>(n, k);
        S val = omega(table_mul(prod, x, y), z) + omega(table_mul(prod, y, z), x) +
                omega(table_mul(prod, z, x), y);
        if (!val.is_zero()) report.record(id, at_tuple({i, j, k}), {val});
      }
  return report;
}

template <class S>
CheckReport<S> check_connes_cocycle(const MultTable<S>& star, const BilinearForm<S>& omega) {
  return check_cyclic_cocycle(star, omega, "connes.cyclic");
}

template <class S>
CheckReport<S> check_symplectic(const MultTable<S>& lie, const BilinearForm<S>& omega) {
  return check_cyclic_cocycle(lie, omega, "symplectic.cyclic");
}

/// The compatible Zinbiel and pre-Lie structures carried by a Poisson
/// algebra with a form that is a Connes cocycle for ⋆ and symplectic for
/// [ , ]: solve ω(x∗y, z) = ω(y, x⋆z) and ω(x∘y, z) = −ω(y, [x, z]) exactly.
template <class S>
std::pair<MultTable<S>, MultTable<S>> compatible_from_form(const MultTable<S>& star,
                                                           const MultTable<S>& lie,
                                                           const BilinearForm<S>& omega) {
  omega.validate();
  {
    auto c1 = check_connes_cocycle(star, omega);
    if (!c1.passed) throw Error("form is not a Connes cocycle for the given product");
    auto c2 = check_symplectic(lie, omega);
    if (!c2.passed) throw Error("form is not symplectic for the given bracket");
  }
  const std::size_t n = star.dim(0);
  MultTable<S> ast(n, n, n), circ(n, n, n);
  // Unknown row u = c[i][j][.], system uᵀ W = rhs, i.e. Wᵀ u = rhs.
  Matrix<S> wt = omega.w.transposed();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<S> rhs_ast(n, S{}), rhs_circ(n, S{});
      for (std::size_t k = 0; k < n; ++k) {
        Vec<S> xi = basis_vec<S>(n, i), yj = basis_vec<S>(n, j), zk = basis_vec<S>(n, k);
        rhs_ast[k] = omega(yj, table_mul(star, xi, zk));
        rhs_circ[k] = -omega(yj, table_mul(lie, xi, zk));
      }
      auto u1 = solve_linear(wt, rhs_ast);
      auto u2 = solve_linear(wt, rhs_circ);
      if (!u1 || !u2) throw Error("degenerate form in compatible_from_form");
      for (std::size_t k = 0; k < n; ++k) {
        ast(i, j, k) = (*u1)[k];
        circ(i, j, k) = (*u2)[k];
      }
    }
  return {std::move(ast), std::move(circ)};
}

/// ω(x∗y, z) = ω(y, x⋆z) with ⋆ the symmetrization of ∗, on basis triples.
template <class S>
CheckReport<S> check_quadratic_zinbiel(const MultTable<S>& ast, const BilinearForm<S>& omega) {
  const std::size_t n = ast.dim(0);
  MultTable<S> star = symmetrized(ast);
  CheckReport<S> report;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec<S> x = basis_vec<S>(n, i), y = basis_vec<S>(n, j), z = basis_vec<S>(n, k);
        S val = omega(table_mul(ast, x, y), z) - omega(y, table_mul(star, x, z));
        if (!val.is_zero()) report.record("quadratic.zinbiel", at_tuple({i, j, k}), {val});
      }
  return report;
}

/// ω(x∘y, z) = −ω(y, [x, z]) with [ , ] the antisymmetrization of ∘.
template <class S>
CheckReport<S> check_quadratic_prelie(const MultTable<S>& circ, const BilinearForm<S>& omega) {
  const std::size_t n = circ.dim(0);
  MultTable<S> lie = antisymmetrized(circ);
  CheckReport<S> report;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec<S> x = basis_vec<S>(n, i), y = basis_vec<S>(n, j), z = basis_vec<S>(n, k);
        S val = omega(table_mul(circ, x, y), z) + omega(y, table_mul(lie, x, z));
        if (!val.is_zero()) report.record("quadratic.prelie", at_tuple({i, j, k}), {val});
      }
  return report;
}

}  // namespace ppk
