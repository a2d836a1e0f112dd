#pragma once

#include "ppk/algebra.hpp"
#include "ppk/check.hpp"
#include "ppk/forms.hpp"
#include "ppk/identities.hpp"
#include "ppk/products.hpp"
#include "ppk/representations.hpp"

namespace ppk {

/// Comultiplications are stored as n×n×n coefficient arrays with the first
/// index the input basis vector: Δ(e_i) = Σ d[i][j][k] e_j⊗e_k.
template <class S>
using Comultiplication = Tensor3<S>;

/// An algebra together with its Zinbiel and pre-Lie comultiplications.
template <class S>
struct BialgebraData {
  Algebra<S> alg;
  Comultiplication<S> delta_zinbiel;  // Δ
  Comultiplication<S> delta_prelie;   // δ

  void validate_shapes() const {
    for (const Comultiplication<S>* d : {&delta_zinbiel, &delta_prelie})
      if (d->dim(0) != alg.dim || d->dim(1) != alg.dim || d->dim(2) != alg.dim)
        throw Error("comultiplication has the wrong shape");
  }
};

/// The dual product on A*: c[j][k][i] = d[i][j][k] under the dual pairing.
template <class S>
MultTable<S> dualize_comultiplication(const Comultiplication<S>& d) {
  const std::size_t n = d.dim(0);
  MultTable<S> c(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c(j, k, i) = d(i, j, k);
  return c;
}

/// The algebra on A* carried by the two dualized comultiplications.
template <class S>
Algebra<S> dual_algebra(const BialgebraData<S>& data) {
  Algebra<S> a(data.alg.dim, data.alg.field);
  a.set_table("zinbiel", dualize_comultiplication(data.delta_zinbiel));
  a.set_table("prelie", dualize_comultiplication(data.delta_prelie));
  return a;
}

namespace detail {

// Δ(v) for an arbitrary element v.
template <class S>
Matrix<S> comult_at(const Comultiplication<S>& d, const Vec<S>& v) {
  const std::size_t n = d.dim(1);
  Matrix<S> m(n, d.dim(2));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < d.dim(2); ++k)
        if (!d(i, j, k).is_zero()) m(j, k) += v[i] * d(i, j, k);
  }
  return m;
}

// (dmap ⊗ I) t for t ∈ A⊗A: expand the first leg through the
// comultiplication.
template <class S>
Tensor3<S> expand_leg0(const Comultiplication<S>& dmap, const Matrix<S>& t) {
  const std::size_t n = t.rows();
  Tensor3<S> out(n, n, t.cols());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < t.cols(); ++k) {
      if (t(j, k).is_zero()) continue;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          if (!dmap(j, p, q).is_zero()) out(p, q, k) += t(j, k) * dmap(j, p, q);
    }
  return out;
}

// (I ⊗ dmap) t for t ∈ A⊗A: expand the second leg.
template <class S>
Tensor3<S> expand_leg1(const Comultiplication<S>& dmap, const Matrix<S>& t) {
  const std::size_t n = t.cols();
  Tensor3<S> out(t.rows(), n, n);
  for (std::size_t j = 0; j < t.rows(); ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (t(j, k).is_zero()) continue;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          if (!dmap(k, p, q).is_zero()) out(j, p, q) += t(j, k) * dmap(k, p, q);
    }
  return out;
}

// τ∘Δ as a comultiplication table.
template <class S>
Comultiplication<S> flipped_comult(const Comultiplication<S>& d) {
  Comultiplication<S> out(d.dim(0), d.dim(2), d.dim(1));
  for (std::size_t i = 0; i < d.dim(0); ++i)
    for (std::size_t j = 0; j < d.dim(1); ++j)
      for (std::size_t k = 0; k < d.dim(2); ++k) out(i, k, j) = d(i, j, k);
  return out;
}

template <class S>
void record_tensor(CheckReport<S>& report, const char* id, std::vector<int> at,
                   const Tensor3<S>& t) {
  if (t.is_zero()) return;
  Vec<S> flat;
  for (std::size_t i = 0; i < t.dim(0); ++i)
    for (std::size_t j = 0; j < t.dim(1); ++j)
      for (std::size_t k = 0; k < t.dim(2); ++k) flat.push_back(t(i, j, k));
  report.record(id, std::move(at), std::move(flat));
}

template <class S>
void record_matrix(CheckReport<S>& report, const char* id, std::vector<int> at,
                   const Matrix<S>& m) {
  if (m.is_zero()) return;
  Vec<S> flat;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  report.record(id, std::move(at), std::move(flat));
}

}  // namespace detail

enum class CoalgebraKind { zinbiel, prelie, prepoisson };

/// Co-identity checks, evaluated exactly per basis input. The pre-Poisson
/// kind needs both comultiplications and adds the two mixed conditions.
template <class S>
CheckReport<S> check_coalgebra(CoalgebraKind kind, const Comultiplication<S>& Delta,
                               const Comultiplication<S>* delta = nullptr) {
  using namespace detail;
  CheckReport<S> report;
  const std::size_t n = Delta.dim(0);
  if (kind == CoalgebraKind::prepoisson && delta == nullptr)
    throw Error("the pre-Poisson coalgebra check needs both comultiplications");

  if (kind == CoalgebraKind::zinbiel || kind == CoalgebraKind::prepoisson) {
    // (Δ⊗I)Δ + (τ⊗I)(Δ⊗I)Δ = (I⊗Δ)Δ
    for (std::size_t i = 0; i < n; ++i) {
      Matrix<S> m = comult_at(Delta, basis_vec<S>(n, i));
      Tensor3<S> lhs = expand_leg0(Delta, m);
      Tensor3<S> res = lhs + swap_legs(lhs, 0, 1) - expand_leg1(Delta, m);
      record_tensor(report, "coalg.zin.1", {static_cast<int>(i) + 1}, res);
    }
  }
  if (kind == CoalgebraKind::prelie || kind == CoalgebraKind::prepoisson) {
    // (δ⊗I)δ − (I⊗δ)δ is symmetric in the first two legs
    const Comultiplication<S>& dl = kind == CoalgebraKind::prelie ? Delta : *delta;
    for (std::size_t i = 0; i < n; ++i) {
      Matrix<S> m = comult_at(dl, basis_vec<S>(n, i));
      Tensor3<S> assoc = expand_leg0(dl, m) - expand_leg1(dl, m);
      Tensor3<S> res = assoc - swap_legs(assoc, 0, 1);
      record_tensor(report, "coalg.pre.1", {static_cast<int>(i) + 1}, res);
    }
  }
  if (kind == CoalgebraKind::prepoisson) {
    const Comultiplication<S>& dz = Delta;
    const Comultiplication<S>& dl = *delta;
    Comultiplication<S> dz_flip = flipped_comult(dz);
    Comultiplication<S> dl_flip = flipped_comult(dl);
    Comultiplication<S> dl_minus = dl - dl_flip;  // δ − τδ
    Comultiplication<S> dz_plus = dz + dz_flip;   // Δ + τΔ
    for (std::size_t i = 0; i < n; ++i) {
      Vec<S> x = basis_vec<S>(n, i);
      Matrix<S> mz = comult_at(dz, x);
      Matrix<S> ml = comult_at(dl, x);
      // ((δ−τδ)⊗I)Δ = (I⊗Δ)δ − (τ⊗I)(I⊗δ)Δ
      Tensor3<S> res1 = expand_leg0(dl_minus, mz) - expand_leg1(dz, ml) +
                        swap_legs(expand_leg1(dl, mz), 0, 1);
      record_tensor(report, "coalg.mix.1", {static_cast<int>(i) + 1}, res1);
      // ((Δ+τΔ)⊗I)δ = (I⊗δ)Δ + (τ⊗I)(I⊗δ)Δ
      Tensor3<S> leg1 = expand_leg1(dl, mz);
      Tensor3<S> res2 = expand_leg0(dz_plus, ml) - leg1 - swap_legs(leg1, 0, 1);
      record_tensor(report, "coalg.mix.2", {static_cast<int>(i) + 1}, res2);
    }
  }
  return report;
}

enum class BialgebraKind { zinbiel, prelie, prepoisson };

inline std::string to_string(BialgebraKind k) {
  switch (k) {
    case BialgebraKind::zinbiel: return "zinbiel";
    case BialgebraKind::prelie: return "prelie";
    case BialgebraKind::prepoisson: return "prepoisson";
  }
  throw Error("unknown bialgebra kind");
}

/// The bialgebra compatibility conditions between the products and the
/// comultiplications, by group: algebra axioms, co-identities, Zinbiel and
/// pre-Lie compatibilities, and the four mixed conditions.
template <class S>
CheckReport<S> check_bialgebra(BialgebraKind kind, const BialgebraData<S>& data) {
  using namespace detail;
  data.validate_shapes();
  const std::size_t n = data.alg.dim;
  CheckReport<S> report;

  auto prefix_merge = [&report](CheckReport<S> sub, const std::string& prefix) {
    for (auto& w : sub.witnesses) w.id = prefix + w.id;
    report.merge(sub);
  };

  const bool zin = kind == BialgebraKind::zinbiel || kind == BialgebraKind::prepoisson;
  const bool pre = kind == BialgebraKind::prelie || kind == BialgebraKind::prepoisson;
  const bool mixed = kind == BialgebraKind::prepoisson;

  // algebra and coalgebra groups
  if (kind == BialgebraKind::zinbiel)
    prefix_merge(check_identities(data.alg, IdentitySystem::ZINBIEL), "bialg.alg.");
  else if (kind == BialgebraKind::prelie)
    prefix_merge(check_identities(data.alg, IdentitySystem::PRELIE), "bialg.alg.");
  else
    prefix_merge(check_identities(data.alg, IdentitySystem::PREPOISSON), "bialg.alg.");
  if (kind == BialgebraKind::zinbiel)
    prefix_merge(check_coalgebra(CoalgebraKind::zinbiel, data.delta_zinbiel), "bialg.");
  else if (kind == BialgebraKind::prelie)
    prefix_merge(check_coalgebra(CoalgebraKind::prelie, data.delta_prelie), "bialg.");
  else
    prefix_merge(
        check_coalgebra(CoalgebraKind::prepoisson, data.delta_zinbiel, &data.delta_prelie),
        "bialg.");

  EndoFamily<S> Lz, Rz, Lp, Rp, Ls, ad;
  if (zin || mixed) {
    Lz = left_mult_family(data.alg.table("zinbiel"));
    Rz = right_mult_family(data.alg.table("zinbiel"));
    Ls = Lz + Rz;  // left multiplication by the symmetrized product
  }
  if (pre || mixed) {
    Lp = left_mult_family(data.alg.table("prelie"));
    Rp = right_mult_family(data.alg.table("prelie"));
    ad = Lp - Rp;
  }

  const auto& dz = data.delta_zinbiel;
  const auto& dl = data.delta_prelie;
  auto Dz = [&](const Vec<S>& v) { return comult_at(dz, v); };
  auto Dl = [&](const Vec<S>& v) { return comult_at(dl, v); };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<S> x = basis_vec<S>(n, i), y = basis_vec<S>(n, j);
      std::vector<int> at = at_tuple({i, j});
      if (zin) {
        // Δ(x∗y) + τΔ(x∗y) = (I⊗L∗(x))Δ(y) + τ(L∗(x)⊗I)Δ(y)
        //                  = (I⊗R∗(y))Δ(x) + (L∗(x)⊗I)Δ(y) + τ(I⊗L∗(x))Δ(y)
        Matrix<S> dxy = Dz(data.alg.mul("zinbiel", x, y));
        Matrix<S> e1 = dxy + tensor_flip(dxy);
        Matrix<S> e2 = apply_leg(Lz.at(i), Dz(y), 1) + tensor_flip(apply_leg(Lz.at(i), Dz(y), 0));
        Matrix<S> e3 = apply_leg(Rz.at(j), Dz(x), 1) + apply_leg(Lz.at(i), Dz(y), 0) +
                       tensor_flip(apply_leg(Lz.at(i), Dz(y), 1));
        record_matrix(report, "bialg.zin.1a", at, e1 - e2);
        record_matrix(report, "bialg.zin.1b", at, e2 - e3);
        // Δ(x∗y + y∗x) = (L∗(x)⊗I)Δ(y) + (I⊗L⋆(y))Δ(x)
        Matrix<S> lhs2 =
            Dz(data.alg.mul("zinbiel", x, y)) + Dz(data.alg.mul("zinbiel", y, x));
        Matrix<S> rhs2 = apply_leg(Lz.at(i), Dz(y), 0) + apply_leg(Ls.at(j), Dz(x), 1);
        record_matrix(report, "bialg.zin.2", at, lhs2 - rhs2);
      }
      if (pre) {
        // δ(x∘y − y∘x) = (L∘(x)⊗I)δ(y) + (I⊗ad(x))δ(y) − (L∘(y)⊗I)δ(x) − (I⊗ad(y))δ(x)
        Matrix<S> lhs1 =
            Dl(data.alg.mul("prelie", x, y)) - Dl(data.alg.mul("prelie", y, x));
        Matrix<S> rhs1 = apply_leg(Lp.at(i), Dl(y), 0) + apply_leg(ad.at(i), Dl(y), 1) -
                         apply_leg(Lp.at(j), Dl(x), 0) - apply_leg(ad.at(j), Dl(x), 1);
        record_matrix(report, "bialg.pre.1", at, lhs1 - rhs1);
        // (I−τ)δ(x∘y) = (I−τ)[(I⊗R∘(y))δ(x) + (L∘(x)⊗I)δ(y) + (I⊗L∘(x))δ(y)]
        Matrix<S> inner = Dl(data.alg.mul("prelie", x, y)) - apply_leg(Rp.at(j), Dl(x), 1) -
                          apply_leg(Lp.at(i), Dl(y), 0) - apply_leg(Lp.at(i), Dl(y), 1);
        record_matrix(report, "bialg.pre.2", at, inner - tensor_flip(inner));
      }
      if (mixed) {
        Vec<S> xy_star =
            data.alg.mul("zinbiel", x, y) + data.alg.mul("zinbiel", y, x);
        Vec<S> xy_lie = data.alg.mul("prelie", x, y) - data.alg.mul("prelie", y, x);
        // δ(x⋆y) = −(L∘(x)⊗I)Δ(y) − (L∘(y)⊗I)Δ(x) + (I⊗L⋆(x))δ(y) + (I⊗L⋆(y))δ(x)
        // (the sign of the right-hand side is pinned by the matched-pair
        // equivalence; the coboundary pair satisfies this identically)
        Matrix<S> m1 = Dl(xy_star) + apply_leg(Lp.at(i), Dz(y), 0) +
                       apply_leg(Lp.at(j), Dz(x), 0) - apply_leg(Ls.at(i), Dl(y), 1) -
                       apply_leg(Ls.at(j), Dl(x), 1);
        record_matrix(report, "bialg.mix.1", at, m1);
        // Δ([x,y]) = (L∘(x)⊗I)Δ(y) − (I⊗L⋆(y))δ(x) + (L∗(y)⊗I)δ(x) + (I⊗ad(x))Δ(y)
        Matrix<S> m2 = Dz(xy_lie) - apply_leg(Lp.at(i), Dz(y), 0) +
                       apply_leg(Ls.at(j), Dl(x), 1) - apply_leg(Lz.at(j), Dl(x), 0) -
                       apply_leg(ad.at(i), Dz(y), 1);
        record_matrix(report, "bialg.mix.2", at, m2);
        // δ(x∗y) − τδ(x∗y) = (I⊗L∗(x))δ(y) − τ(L∗(x)⊗I)δ(y) − (L∘(x)⊗I)Δ(y)
        //                   − τ(I⊗L∘(x))Δ(y) + (I⊗R∗(y))δ(x) + τ(I⊗R∘(y))Δ(x)
        Matrix<S> dxy = Dl(data.alg.mul("zinbiel", x, y));
        Matrix<S> m3 = dxy - tensor_flip(dxy) - apply_leg(Lz.at(i), Dl(y), 1) +
                       tensor_flip(apply_leg(Lz.at(i), Dl(y), 0)) +
                       apply_leg(Lp.at(i), Dz(y), 0) +
                       tensor_flip(apply_leg(Lp.at(i), Dz(y), 1)) -
                       apply_leg(Rz.at(j), Dl(x), 1) -
                       tensor_flip(apply_leg(Rp.at(j), Dz(x), 1));
        record_matrix(report, "bialg.mix.3", at, m3);
        // Δ(x∘y) + τΔ(x∘y) = (L∘(x)⊗I)Δ(y) + τ(L∘(x)⊗I)Δ(y) + (I⊗L∘(x))Δ(y)
        //                   + τ(I⊗L∘(x))Δ(y) − (I⊗R∗(y))δ(x) − τ(I⊗R∗(y))δ(x)
        Matrix<S> dcirc = Dz(data.alg.mul("prelie", x, y));
        Matrix<S> t1 = apply_leg(Lp.at(i), Dz(y), 0);
        Matrix<S> t2 = apply_leg(Lp.at(i), Dz(y), 1);
        Matrix<S> t3 = apply_leg(Rz.at(j), Dl(x), 1);
        Matrix<S> m4 = dcirc + tensor_flip(dcirc) - t1 - tensor_flip(t1) - t2 -
                       tensor_flip(t2) + t3 + tensor_flip(t3);
        record_matrix(report, "bialg.mix.4", at, m4);
      }
    }
  return report;
}

/// The matched pair of the double: A and A* acting on each other through
/// the dualized regular-representation families.
template <class S>
MatchedPairData<S> double_matched_pair(const BialgebraData<S>& data) {
  data.validate_shapes();
  MatchedPairData<S> mp;
  mp.a1 = data.alg;
  mp.a2 = dual_algebra(data);
  auto star = [](const EndoFamily<S>& f) { return dualize_endo_family(f); };
  {
    EndoFamily<S> Lz = left_mult_family(data.alg.table("zinbiel"));
    EndoFamily<S> Rz = right_mult_family(data.alg.table("zinbiel"));
    EndoFamily<S> Lp = left_mult_family(data.alg.table("prelie"));
    EndoFamily<S> Rp = right_mult_family(data.alg.table("prelie"));
    mp.l1 = -star(Lz) - star(Rz);
    mp.r1 = star(Rz);
    mp.rho1 = star(Lp) - star(Rp);
    mp.mu1 = -star(Rp);
  }
  {
    EndoFamily<S> Lz = left_mult_family(mp.a2.table("zinbiel"));
    EndoFamily<S> Rz = right_mult_family(mp.a2.table("zinbiel"));
    EndoFamily<S> Lp = left_mult_family(mp.a2.table("prelie"));
    EndoFamily<S> Rp = right_mult_family(mp.a2.table("prelie"));
    mp.l2 = -star(Lz) - star(Rz);
    mp.r2 = star(Rz);
    mp.rho2 = star(Lp) - star(Rp);
    mp.mu2 = -star(Rp);
  }
  return mp;
}

/// The standard form on A ⊕ A*: ω(x + a, y + b) = <x, b> − <a, y>.
template <class S>
BilinearForm<S> double_form(std::size_t n) {
  BilinearForm<S> omega;
  omega.w = Matrix<S>(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    omega.w(i, n + i) = S::from_int(1);
    omega.w(n + i, i) = S::from_int(-1);
  }
  return omega;
}

/// Assemble A ⋈ A* from the dualized regular representations, attach the
/// standard form, and confirm the quadratic pre-Poisson structure plus the
/// subalgebra embeddings. Requires a passing bialgebra.
template <class S>
std::pair<Algebra<S>, BilinearForm<S>> double_construction(const BialgebraData<S>& data) {
  if (!check_bialgebra(BialgebraKind::prepoisson, data).passed)
    throw Error("double construction requires a passing pre-Poisson bialgebra");
  MatchedPairData<S> mp = double_matched_pair(data);
  Algebra<S> dbl = build_bicrossed(mp, MatchedPairKind::prepoisson);
  BilinearForm<S> omega = double_form<S>(data.alg.dim);
  omega.validate();
  if (!check_identities(dbl, IdentitySystem::PREPOISSON).passed)
    throw Error("internal: double of a passing bialgebra fails the axiom system");
  if (!check_quadratic_zinbiel(dbl.table("zinbiel"), omega).passed ||
      !check_quadratic_prelie(dbl.table("prelie"), omega).passed)
    throw Error("internal: double of a passing bialgebra is not quadratic");
  const std::size_t n = data.alg.dim;
  for (const char* tn : {"zinbiel", "prelie"}) {
    const auto& t = dbl.table(tn);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k)
          if (!t(n + i, n + j, k).is_zero())
            throw Error("internal: dual block of the double is not closed");
        for (std::size_t k = 0; k < n; ++k)
          if (!t(i, j, n + k).is_zero())
            throw Error("internal: primal block of the double is not closed");
      }
  }
  return {std::move(dbl), std::move(omega)};
}

/// The four equivalent descriptions of the same structure, each evaluated
/// through its own route with no shared verdict.
struct FourWayVerdict {
  bool quadratic_double = false;
  bool poisson_matched_pair = false;
  bool prepoisson_matched_pair = false;
  bool bialgebra = false;
  bool agree = false;
};

template <class S>
FourWayVerdict check_equivalent_characterizations(const BialgebraData<S>& data) {
  data.validate_shapes();
  FourWayVerdict v;
  const std::size_t n = data.alg.dim;

  // (1) the double carries a quadratic pre-Poisson structure
  {
    MatchedPairData<S> mp = double_matched_pair(data);
    Algebra<S> dbl = build_bicrossed(mp, MatchedPairKind::prepoisson);
    BilinearForm<S> omega = double_form<S>(n);
    v.quadratic_double = check_identities(dbl, IdentitySystem::PREPOISSON).passed &&
                         check_quadratic_zinbiel(dbl.table("zinbiel"), omega).passed &&
                         check_quadratic_prelie(dbl.table("prelie"), omega).passed;
  }

  // (2) the Poisson matched pair through the dualized left multiplications
  {
    MatchedPairData<S> mp;
    mp.a1 = sub_adjacent(data.alg);
    mp.a2 = sub_adjacent(dual_algebra(data));
    mp.mu1 = -dualize_endo_family(left_mult_family(data.alg.table("zinbiel")));
    mp.rho1 = dualize_endo_family(left_mult_family(data.alg.table("prelie")));
    Algebra<S> dual = dual_algebra(data);
    mp.mu2 = -dualize_endo_family(left_mult_family(dual.table("zinbiel")));
    mp.rho2 = dualize_endo_family(left_mult_family(dual.table("prelie")));
    mp.l1 = mp.r1 = EndoFamily<S>(n, n);
    mp.l2 = mp.r2 = EndoFamily<S>(n, n);
    v.poisson_matched_pair = check_identities(mp.a1, IdentitySystem::POISSON).passed &&
                             check_identities(mp.a2, IdentitySystem::POISSON).passed &&
                             check_identities(build_bicrossed(mp, MatchedPairKind::poisson),
                                              IdentitySystem::POISSON)
                                 .passed;
  }

  // (3) the pre-Poisson matched pair through the dualized regular maps
  {
    MatchedPairData<S> mp = double_matched_pair(data);
    v.prepoisson_matched_pair =
        check_identities(mp.a1, IdentitySystem::PREPOISSON).passed &&
        check_identities(mp.a2, IdentitySystem::PREPOISSON).passed &&
        check_identities(build_bicrossed(mp, MatchedPairKind::prepoisson),
                         IdentitySystem::PREPOISSON)
            .passed;
  }

  // (4) the bialgebra conditions
  v.bialgebra = check_bialgebra(BialgebraKind::prepoisson, data).passed;

  v.agree = v.quadratic_double == v.poisson_matched_pair &&
            v.poisson_matched_pair == v.prepoisson_matched_pair &&
            v.prepoisson_matched_pair == v.bialgebra;
  return v;
}

}  // namespace ppk
