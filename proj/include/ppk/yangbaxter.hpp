#pragma once

#include <cstdint>
#include <vector>

#include "ppk/algebra.hpp"
#include "ppk/bialgebras.hpp"
#include "ppk/parallel.hpp"
#include "ppk/generators.hpp"
#include "ppk/representations.hpp"

namespace ppk {

/// r = Σ r[i][j] e_i⊗e_j as a coefficient matrix.
template <class S>
using RMatrix = Matrix<S>;

template <class S>
bool is_symmetric(const RMatrix<S>& r) {
  return r == r.transposed();
}

namespace detail {

// One leg placement r_I · r_J: the two factors occupy the slots (first_a,
// first_b) and (second_a, second_b) of A⊗A⊗A; they share exactly one slot,
// which receives table(first's entry, second's entry).
struct Placement {
  int first_a, first_b, second_a, second_b;

  int shared() const {
    for (int s : {first_a, first_b})
      if (s == second_a || s == second_b) return s;
    throw Error("placement without a shared slot");
  }
};

template <class S>
Tensor3<S> slot_product(const MultTable<S>& table, const RMatrix<S>& r, Placement pl) {
  const std::size_t n = r.rows();
  Tensor3<S> out(n, n, n);
  const int shared = pl.shared();
  for (std::size_t p1 = 0; p1 < n; ++p1)
    for (std::size_t q1 = 0; q1 < n; ++q1) {
      if (r(p1, q1).is_zero()) continue;
      for (std::size_t p2 = 0; p2 < n; ++p2)
        for (std::size_t q2 = 0; q2 < n; ++q2) {
          if (r(p2, q2).is_zero()) continue;
          S coef = r(p1, q1) * r(p2, q2);
          std::size_t first_at_shared = pl.first_a == shared ? p1 : q1;
          std::size_t second_at_shared = pl.second_a == shared ? p2 : q2;
          std::size_t idx[3] = {0, 0, 0};
          if (pl.first_a != shared) idx[pl.first_a] = p1;
          if (pl.first_b != shared) idx[pl.first_b] = q1;
          if (pl.second_a != shared) idx[pl.second_a] = p2;
          if (pl.second_b != shared) idx[pl.second_b] = q2;
          for (std::size_t k = 0; k < n; ++k) {
            const S& c = table(first_at_shared, second_at_shared, k);
            if (c.is_zero()) continue;
            idx[shared] = k;
            out(idx[0], idx[1], idx[2]) += coef * c;
          }
        }
    }
  return out;
}

}  // namespace detail

enum class DVariant { D, D1, D2 };

/// The Zinbiel tensor obstruction:
///   D(r)  = r₂₃∗r₁₂ + r₂₃∗r₁₃ − r₁₂⋆r₁₃
///   D₁(r) = r₁₃∗r₁₂ + r₁₃∗r₂₃ − r₂₃⋆r₁₂
///   D₂(r) = r₁₂∗r₂₃ + r₁₂∗r₁₃ − r₁₃⋆r₂₃
template <class S>
Tensor3<S> d_obstruction(const Algebra<S>& alg, const RMatrix<S>& r, DVariant variant = DVariant::D) {
  if (r.rows() != alg.dim || r.cols() != alg.dim) throw Error("r has the wrong shape");
  using detail::Placement;
  const MultTable<S>& ast = alg.table("zinbiel");
  MultTable<S> star = symmetrized(ast);
  auto sp = [&](const MultTable<S>& t, Placement pl) { return detail::slot_product(t, r, pl); };
  const Placement p12_23{0, 1, 1, 2}, p13_23{0, 2, 1, 2}, p12_13{0, 1, 0, 2}, p13_12{0, 2, 0, 1},
      p23_12{1, 2, 0, 1}, p23_13{1, 2, 0, 2};
  switch (variant) {
    case DVariant::D:
      return sp(ast, p23_12) + sp(ast, p23_13) - sp(star, p12_13);
    case DVariant::D1:
      return sp(ast, p13_12) + sp(ast, p13_23) - sp(star, p23_12);
    case DVariant::D2:
      return sp(ast, p12_23) + sp(ast, p12_13) - sp(star, p13_23);
  }
  throw Error("unknown D variant");
}

/// The pre-Lie tensor obstruction S(r) = −r₁₂∘r₁₃ + r₁₂∘r₂₃ + [r₁₃, r₂₃].
template <class S>
Tensor3<S> s_obstruction(const Algebra<S>& alg, const RMatrix<S>& r) {
  if (r.rows() != alg.dim || r.cols() != alg.dim) throw Error("r has the wrong shape");
  using detail::Placement;
  const MultTable<S>& circ = alg.table("prelie");
  MultTable<S> lie = antisymmetrized(circ);
  const Placement p12_13{0, 1, 0, 2}, p12_23{0, 1, 1, 2}, p13_23{0, 2, 1, 2};
  return -detail::slot_product(circ, r, p12_13) + detail::slot_product(circ, r, p12_23) +
         detail::slot_product(lie, r, p13_23);
}

struct PpybeVerdict {
  bool symmetric = false;
  bool d_zero = false;
  bool s_zero = false;
  bool ppybe = false;
};

/// D(r) = 0 and S(r) = 0; symmetry is reported alongside because the
/// coboundary construction needs it.
template <class S>
PpybeVerdict check_ppybe(const Algebra<S>& alg, const RMatrix<S>& r) {
  if (!check_identities(alg, IdentitySystem::PREPOISSON).passed)
    throw Error("the Yang-Baxter checks need a pre-Poisson algebra");
  PpybeVerdict v;
  v.symmetric = is_symmetric(r);
  v.d_zero = d_obstruction(alg, r, DVariant::D).is_zero();
  v.s_zero = s_obstruction(alg, r).is_zero();
  v.ppybe = v.d_zero && v.s_zero;
  return v;
}

/// Δ(x) = (I⊗L⋆(x) − L∗(x)⊗I) r and δ(x) = (I⊗ad(x) + L∘(x)⊗I) r.
template <class S>
std::pair<Comultiplication<S>, Comultiplication<S>> coboundary_comultiplications(
    const Algebra<S>& alg, const RMatrix<S>& r) {
  if (r.rows() != alg.dim || r.cols() != alg.dim) throw Error("r has the wrong shape");
  const std::size_t n = alg.dim;
  EndoFamily<S> Lz = left_mult_family(alg.table("zinbiel"));
  EndoFamily<S> Rz = right_mult_family(alg.table("zinbiel"));
  EndoFamily<S> Lp = left_mult_family(alg.table("prelie"));
  EndoFamily<S> Rp = right_mult_family(alg.table("prelie"));
  Comultiplication<S> dz(n, n, n), dl(n, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<S> dm = apply_leg(Lz.at(i) + Rz.at(i), r, 1) - apply_leg(Lz.at(i), r, 0);
    Matrix<S> lm = apply_leg(Lp.at(i) - Rp.at(i), r, 1) + apply_leg(Lp.at(i), r, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        dz(i, j, k) = dm(j, k);
        dl(i, j, k) = lm(j, k);
      }
  }
  return {std::move(dz), std::move(dl)};
}

template <class S>
BialgebraData<S> coboundary_bialgebra(const Algebra<S>& alg, const RMatrix<S>& r) {
  auto [dz, dl] = coboundary_comultiplications(alg, r);
  return BialgebraData<S>{alg, std::move(dz), std::move(dl)};
}

/// The four obstruction expressions whose vanishing is equivalent, term by
/// term, to the coboundary comultiplications satisfying the coalgebra and
/// bialgebra compatibilities. The first two live in A⊗A⊗A and take one
/// basis index; the last two live in A⊗A and take a pair.
template <class S>
Tensor3<S> ca1_obstruction(const Algebra<S>& alg, const RMatrix<S>& r, std::size_t x) {
  const std::size_t n = alg.dim;
  EndoFamily<S> Lz = left_mult_family(alg.table("zinbiel"));
  EndoFamily<S> Rz = right_mult_family(alg.table("zinbiel"));
  EndoFamily<S> Lp = left_mult_family(alg.table("prelie"));
  EndoFamily<S> Rp = right_mult_family(alg.table("prelie"));
  EndoFamily<S> Ls = Lz + Rz;
  EndoFamily<S> ad = Lp - Rp;
  Matrix<S> rts = r - r.transposed();  // r − τ(r)

  Tensor3<S> sr = s_obstruction(alg, r);
  Tensor3<S> d2r = d_obstruction(alg, r, DVariant::D2);
  Tensor3<S> acc = apply_leg(Lz.at(x), sr, 1) - apply_leg(Ls.at(x), sr, 2) +
                   apply_leg(Lp.at(x), d2r, 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (r(p, q).is_zero()) continue;
      // the rank-one term a_j = r[p][q]·e_p, b_j = e_q of r
      Tensor3<S> base(n, n, n);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) base(u, v, q) = r(p, q) * rts(u, v);
      Vec<S> ep = basis_vec<S>(n, p);
      Vec<S> xa = table_mul_basis(alg.table("zinbiel"), x, p);  // x ∗ a_j
      Matrix<S> t3 = Lp.eval(ep);
      acc = acc + apply_leg(Ls.at(x), apply_leg(t3, base, 1), 2) +
            apply_leg(Ls.at(x), apply_leg(ad.eval(ep), base, 0), 2);
      acc = acc - apply_leg(ad.eval(xa), base, 0) -
            apply_leg(Rp.eval(ep) * Ls.at(x), base, 0);
      acc = acc - apply_leg(Lp.eval(xa), base, 1) -
            apply_leg(Lz.at(x), apply_leg(Rp.eval(ep), base, 0), 1);
    }
  return acc;
}

template <class S>
Tensor3<S> ca2_obstruction(const Algebra<S>& alg, const RMatrix<S>& r, std::size_t x) {
  const std::size_t n = alg.dim;
  EndoFamily<S> Lz = left_mult_family(alg.table("zinbiel"));
  EndoFamily<S> Rz = right_mult_family(alg.table("zinbiel"));
  EndoFamily<S> Lp = left_mult_family(alg.table("prelie"));
  EndoFamily<S> Rp = right_mult_family(alg.table("prelie"));
  EndoFamily<S> Ls = Lz + Rz;
  EndoFamily<S> ad = Lp - Rp;
  Matrix<S> rts = r - r.transposed();

  Tensor3<S> sr = s_obstruction(alg, r);
  Tensor3<S> d2r = d_obstruction(alg, r, DVariant::D2);
  Tensor3<S> acc =
      apply_leg(ad.at(x), d2r, 2) + apply_leg(Lz.at(x), sr, 0) + apply_leg(Lz.at(x), sr, 1);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (r(p, q).is_zero()) continue;
      Tensor3<S> base(n, n, n);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) base(u, v, q) = r(p, q) * rts(u, v);
      Vec<S> ep = basis_vec<S>(n, p);
      Vec<S> xca = table_mul_basis(alg.table("prelie"), x, p);  // x ∘ a_j
      acc = acc + apply_leg(ad.at(x), apply_leg(Lz.eval(ep), base, 1), 2) -
            apply_leg(ad.at(x), apply_leg(Ls.eval(ep), base, 0), 2);
      acc = acc + apply_leg(Rp.eval(ep) * Ls.at(x), base, 0) - apply_leg(Ls.eval(xca), base, 0);
      acc = acc + apply_leg(Lz.eval(xca), base, 1) -
            apply_leg(Lz.at(x), apply_leg(Rp.eval(ep), base, 0), 1);
    }
  return acc;
}

template <class S>
Matrix<S> ca4_obstruction(const Algebra<S>& alg, const RMatrix<S>& r, std::size_t x,
                          std::size_t y) {
  EndoFamily<S> Lz = left_mult_family(alg.table("zinbiel"));
  EndoFamily<S> Lp = left_mult_family(alg.table("prelie"));
  Matrix<S> rts = r - r.transposed();
  Vec<S> xy_ast = table_mul_basis(alg.table("zinbiel"), x, y);
  Matrix<S> acc = apply_leg(Lp.eval(xy_ast), rts, 1) - apply_leg(Lz.at(x) * Lp.at(y), rts, 1) +
                  apply_leg(Lp.eval(xy_ast), rts, 0) - apply_leg(Lp.at(x) * Lz.at(y), rts, 0) +
                  apply_leg(Lz.at(y), apply_leg(Lp.at(x), rts, 0), 1) -
                  apply_leg(Lz.at(x), apply_leg(Lp.at(y), rts, 0), 1);
  return acc;
}

template <class S>
Matrix<S> ca3_obstruction(const Algebra<S>& alg, const RMatrix<S>& r, std::size_t x,
                          std::size_t y) {
  EndoFamily<S> Lz = left_mult_family(alg.table("zinbiel"));
  EndoFamily<S> Lp = left_mult_family(alg.table("prelie"));
  Matrix<S> rts = r - r.transposed();
  Vec<S> xy_circ = table_mul_basis(alg.table("prelie"), x, y);
  Matrix<S> first = apply_leg(Lz.at(y), apply_leg(Lp.at(x), rts, 0), 1) -
                    apply_leg(Lp.at(x), apply_leg(Lz.at(y), rts, 0), 1);
  Matrix<S> inner =
      apply_leg(Lp.at(x) * Lz.at(y), rts, 1) - apply_leg(Lz.eval(xy_circ), rts, 1);
  return first + inner + tensor_flip(inner);
}

enum class SearchConstraint { ppybe, d_only, s_only };

struct SearchOptions {
  bool symmetric_only = true;
  SearchConstraint constraint = SearchConstraint::ppybe;
  bool exhaustive = true;
  std::uint64_t seed = 0;       // randomized mode
  std::size_t samples = 10000;  // randomized mode
};

/// Scan for solutions over F_p. Exhaustive mode walks the full (or the
/// symmetric) coefficient space in lexicographic order and refuses to run
/// past 10^7 points; randomized mode draws seeded samples. Every hit is
/// re-verified through check_ppybe before it is returned.
inline std::vector<RMatrix<Fp>> search_solutions(const Algebra<Fp>& alg,
                                                 const SearchOptions& opts = {}) {
  if (alg.field.kind != FieldKind::prime) throw Error("solution search needs a prime field");
  if (!check_identities(alg, IdentitySystem::PREPOISSON).passed)
    throw Error("solution search needs a pre-Poisson algebra");
  const std::size_t n = alg.dim;
  const std::uint32_t p = alg.field.modulus;
  const std::size_t free_slots = opts.symmetric_only ? n * (n + 1) / 2 : n * n;

  auto matches = [&](const RMatrix<Fp>& r) {
    if (opts.symmetric_only && !is_symmetric(r)) return false;
    switch (opts.constraint) {
      case SearchConstraint::ppybe:
        return d_obstruction(alg, r).is_zero() && s_obstruction(alg, r).is_zero();
      case SearchConstraint::d_only:
        return d_obstruction(alg, r).is_zero();
      case SearchConstraint::s_only:
        return s_obstruction(alg, r).is_zero();
    }
    return false;
  };

  std::vector<RMatrix<Fp>> found;
  auto push_verified = [&](const RMatrix<Fp>& r) {
    if (opts.constraint == SearchConstraint::ppybe) {
      PpybeVerdict v = check_ppybe(alg, r);
      if (!v.ppybe) throw Error("internal: search hit fails re-verification");
    }
    found.push_back(r);
  };

  if (opts.exhaustive) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < free_slots; ++i) {
      total *= p;
      if (total > 10'000'000) throw Error("search space exceeds the 10^7 bound");
    }
    // parallel over the leading slot, merged in lexicographic chunk order
    std::vector<std::vector<RMatrix<Fp>>> per_chunk(p);
    parallel_chunks(p, [&](std::size_t lead) {
      std::vector<std::uint32_t> slots(free_slots, 0);
      slots[0] = static_cast<std::uint32_t>(lead);
      while (true) {
        RMatrix<Fp> r(n, n);
        std::size_t s = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = opts.symmetric_only ? i : 0; j < n; ++j) {
            r(i, j) = Fp::make(slots[s++], p);
            if (opts.symmetric_only) r(j, i) = r(i, j);
          }
        if (matches(r)) per_chunk[lead].push_back(std::move(r));
        std::size_t pos = free_slots;
        while (pos > 1) {
          if (++slots[pos - 1] < p) break;
          slots[--pos] = 0;
        }
        if (pos <= 1) break;
      }
    });
    for (auto& chunk : per_chunk)
      for (auto& r : chunk) push_verified(r);
  } else {
    SplitMix64 rng(opts.seed);
    for (std::size_t t = 0; t < opts.samples; ++t) {
      RMatrix<Fp> r(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = opts.symmetric_only ? i : 0; j < n; ++j) {
          r(i, j) = Fp::make(static_cast<long>(rng.below(p)), p);
          if (opts.symmetric_only) r(j, i) = r(i, j);
        }
      if (matches(r)) push_verified(r);
    }
  }
  return found;
}

}  // namespace ppk
