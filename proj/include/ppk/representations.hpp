#pragma once

#include <map>
#include <string>
#include <vector>

#include "ppk/algebra.hpp"
#include "ppk/check.hpp"
#include "ppk/endo.hpp"
#include "ppk/identities.hpp"

namespace ppk {

enum class RepKind { zinbiel, prelie, poisson, prepoisson };

inline std::string to_string(RepKind k) {
  switch (k) {
    case RepKind::zinbiel: return "zinbiel";
    case RepKind::prelie: return "prelie";
    case RepKind::poisson: return "poisson";
    case RepKind::prepoisson: return "prepoisson";
  }
  throw Error("unknown representation kind");
}

inline RepKind rep_kind_from_string(const std::string& s) {
  for (auto k : {RepKind::zinbiel, RepKind::prelie, RepKind::poisson, RepKind::prepoisson})
    if (to_string(k) == s) return k;
  throw Error("unknown representation kind '" + s + "'");
}

/// Map names by kind: zinbiel (l, r), pre-Lie (rho, mu), Poisson (f, g),
/// pre-Poisson (l, r, rho, mu).
template <class S>
struct Representation {
  RepKind kind = RepKind::zinbiel;
  Algebra<S> base;
  std::size_t rep_dim = 0;
  std::map<std::string, EndoFamily<S>> maps;

  const EndoFamily<S>& map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw Error("representation is missing map '" + name + "'");
    return it->second;
  }

  void validate_shapes() const {
    for (const auto& [name, fam] : maps) {
      if (fam.base_dim != base.dim || fam.rep_dim != rep_dim)
        throw Error("map '" + name + "' has the wrong shape");
      for (const auto& m : fam.mats)
        if (m.rows() != rep_dim || m.cols() != rep_dim)
          throw Error("map '" + name + "' has a non-square matrix");
    }
  }
};

namespace detail {

// One operator-valued condition: a signed sum of compositions of map values
// must vanish. A factor's argument is either a plain variable or a product
// of two variables under a named table of the base algebra.
struct OpArg {
  int var = -1;
  std::string table;
  int u = -1, v = -1;
};
struct OpFactor {
  std::string map;
  OpArg arg;
};
struct OpTerm {
  int coeff;
  std::vector<OpFactor> factors;
};
struct OpIdentity {
  std::string id;
  std::vector<OpTerm> terms;  // all conditions here are over variable pairs
  bool derived = false;
};

inline OpArg v(int i) { return {i, "", -1, -1}; }
inline OpArg tb(const char* t, int u, int w) { return {-1, t, u, w}; }
inline OpFactor fac(const char* map, OpArg a) { return {map, std::move(a)}; }

inline const std::vector<OpIdentity>& zinbiel_rep_conditions() {
  static const std::vector<OpIdentity> c = {
      {"rep.zin.1",
       {{1, {fac("l", v(0)), fac("l", v(1))}},
        {-1, {fac("l", tb("zinbiel", 0, 1))}},
        {-1, {fac("l", tb("zinbiel", 1, 0))}}}},
      {"rep.zin.2", {{1, {fac("l", v(0)), fac("l", v(1))}}, {-1, {fac("l", v(1)), fac("l", v(0))}}}},
      {"rep.zin.3", {{1, {fac("l", v(0)), fac("r", v(1))}}, {-1, {fac("r", tb("zinbiel", 0, 1))}}}},
      {"rep.zin.4",
       {{1, {fac("r", tb("zinbiel", 0, 1))}},
        {-1, {fac("r", v(1)), fac("r", v(0))}},
        {-1, {fac("r", v(1)), fac("l", v(0))}}}},
  };
  return c;
}

inline const std::vector<OpIdentity>& prelie_rep_conditions() {
  static const std::vector<OpIdentity> c = {
      {"rep.pre.1",
       {{1, {fac("rho", v(0)), fac("rho", v(1))}},
        {-1, {fac("rho", tb("prelie", 0, 1))}},
        {-1, {fac("rho", v(1)), fac("rho", v(0))}},
        {1, {fac("rho", tb("prelie", 1, 0))}}}},
      {"rep.pre.2",
       {{1, {fac("rho", v(0)), fac("mu", v(1))}},
        {-1, {fac("mu", v(1)), fac("rho", v(0))}},
        {-1, {fac("mu", tb("prelie", 0, 1))}},
        {1, {fac("mu", v(1)), fac("mu", v(0))}}}},
  };
  return c;
}

inline const std::vector<OpIdentity>& poisson_rep_conditions() {
  static const std::vector<OpIdentity> c = {
      {"rep.poisson.1",
       {{1, {fac("f", tb("commassoc", 0, 1))}}, {-1, {fac("f", v(0)), fac("f", v(1))}}}},
      {"rep.poisson.2",
       {{1, {fac("g", tb("lie", 0, 1))}},
        {-1, {fac("g", v(0)), fac("g", v(1))}},
        {1, {fac("g", v(1)), fac("g", v(0))}}}},
      {"rep.poisson.3",
       {{1, {fac("g", tb("commassoc", 0, 1))}},
        {-1, {fac("f", v(1)), fac("g", v(0))}},
        {-1, {fac("f", v(0)), fac("g", v(1))}}}},
      {"rep.poisson.4",
       {{1, {fac("f", tb("lie", 0, 1))}},
        {-1, {fac("g", v(0)), fac("f", v(1))}},
        {1, {fac("f", v(1)), fac("g", v(0))}}}},
  };
  return c;
}

inline const std::vector<OpIdentity>& prepoisson_mixed_conditions() {
  static const std::vector<OpIdentity> c = {
      {"rep.pp.1",
       {{1, {fac("l", tb("prelie", 0, 1))}},
        {-1, {fac("l", tb("prelie", 1, 0))}},
        {-1, {fac("rho", v(0)), fac("l", v(1))}},
        {1, {fac("l", v(1)), fac("rho", v(0))}}}},
      {"rep.pp.2",
       {{1, {fac("rho", tb("zinbiel", 0, 1))}},
        {1, {fac("rho", tb("zinbiel", 1, 0))}},
        {-1, {fac("l", v(0)), fac("rho", v(1))}},
        {-1, {fac("l", v(1)), fac("rho", v(0))}}}},
      {"rep.pp.3",
       {{1, {fac("r", v(0)), fac("rho", v(1))}},
        {-1, {fac("r", v(0)), fac("mu", v(1))}},
        {-1, {fac("l", v(1)), fac("mu", v(0))}},
        {1, {fac("mu", tb("zinbiel", 1, 0))}}}},
      {"rep.pp.4",
       {{1, {fac("mu", v(0)), fac("l", v(1))}},
        {1, {fac("mu", v(0)), fac("r", v(1))}},
        {-1, {fac("r", tb("prelie", 1, 0))}},
        {-1, {fac("l", v(1)), fac("mu", v(0))}}}},
      {"rep.pp.5",
       {{1, {fac("r", v(0)), fac("rho", v(1))}},
        {-1, {fac("r", v(0)), fac("mu", v(1))}},
        {-1, {fac("rho", v(1)), fac("r", v(0))}},
        {1, {fac("r", tb("prelie", 1, 0))}}}},
      // consequences of the primary conditions, cross-checked separately
      {"rep.pp.d1",
       {{1, {fac("rho", tb("zinbiel", 0, 1))}},
        {1, {fac("rho", tb("zinbiel", 1, 0))}},
        {-1, {fac("rho", v(1)), fac("l", v(0))}},
        {-1, {fac("rho", v(0)), fac("l", v(1))}}},
       true},
      {"rep.pp.d2",
       {{1, {fac("r", tb("prelie", 1, 0))}},
        {-1, {fac("mu", tb("zinbiel", 1, 0))}},
        {-1, {fac("rho", v(1)), fac("r", v(0))}},
        {1, {fac("l", v(1)), fac("mu", v(0))}}},
       true},
  };
  return c;
}

template <class S>
Matrix<S> op_term_matrix(const Representation<S>& rep, const OpTerm& term,
                         const std::vector<Vec<S>>& vars) {
  Matrix<S> acc = Matrix<S>::identity(rep.rep_dim);
  for (const auto& f : term.factors) {
    Vec<S> arg = f.arg.var >= 0
                     ? vars[f.arg.var]
                     : rep.base.mul(f.arg.table, vars[f.arg.u], vars[f.arg.v]);
    acc = acc * rep.map(f.map).eval(arg);
  }
  return acc;
}

template <class S>
void run_op_conditions(const Representation<S>& rep, const std::vector<OpIdentity>& conds,
                       CheckReport<S>& report) {
  const std::size_t n = rep.base.dim;
  for (const auto& cond : conds) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Vec<S>> vars = {basis_vec<S>(n, i), basis_vec<S>(n, j)};
        Matrix<S> acc(rep.rep_dim, rep.rep_dim);
        for (const auto& term : cond.terms) {
          Matrix<S> m = op_term_matrix(rep, term, vars);
          acc = term.coeff == 1 ? acc + m : term.coeff == -1 ? acc - m : acc + scaled(term.coeff, m);
        }
        if (!acc.is_zero()) {
          Vec<S> flat;
          for (std::size_t r = 0; r < acc.rows(); ++r)
            for (std::size_t cidx = 0; cidx < acc.cols(); ++cidx) flat.push_back(acc(r, cidx));
          if (cond.derived)
            report.record_derived(cond.id, at_tuple({i, j}), std::move(flat));
          else
            report.record(cond.id, at_tuple({i, j}), std::move(flat));
        }
      }
  }
}

}  // namespace detail

/// Check all representation conditions of the kind, exactly, on every pair
/// of base basis vectors. Derived redundancies are reported separately.
template <class S>
CheckReport<S> check_representation(const Representation<S>& rep) {
  rep.validate_shapes();
  CheckReport<S> report;
  switch (rep.kind) {
    case RepKind::zinbiel:
      detail::run_op_conditions(rep, detail::zinbiel_rep_conditions(), report);
      break;
    case RepKind::prelie:
      detail::run_op_conditions(rep, detail::prelie_rep_conditions(), report);
      break;
    case RepKind::poisson:
      detail::run_op_conditions(rep, detail::poisson_rep_conditions(), report);
      break;
    case RepKind::prepoisson:
      detail::run_op_conditions(rep, detail::zinbiel_rep_conditions(), report);
      detail::run_op_conditions(rep, detail::prelie_rep_conditions(), report);
      detail::run_op_conditions(rep, detail::prepoisson_mixed_conditions(), report);
      break;
  }
  return report;
}

/// The induced representation on V* realized through negated transposes:
/// (l, r) -> (−l*−r*, r*), (rho, mu) -> (rho*−mu*, −mu*), (f, g) -> (−f*, g*).
template <class S>
Representation<S> dual_representation(const Representation<S>& rep) {
  Representation<S> d;
  d.kind = rep.kind;
  d.base = rep.base;
  d.rep_dim = rep.rep_dim;
  auto star = [&](const std::string& name) { return dualize_endo_family(rep.map(name)); };
  switch (rep.kind) {
    case RepKind::zinbiel:
      d.maps["l"] = -star("l") - star("r");
      d.maps["r"] = star("r");
      break;
    case RepKind::prelie:
      d.maps["rho"] = star("rho") - star("mu");
      d.maps["mu"] = -star("mu");
      break;
    case RepKind::poisson:
      d.maps["f"] = -star("f");
      d.maps["g"] = star("g");
      break;
    case RepKind::prepoisson:
      d.maps["l"] = -star("l") - star("r");
      d.maps["r"] = star("r");
      d.maps["rho"] = star("rho") - star("mu");
      d.maps["mu"] = -star("mu");
      break;
  }
  return d;
}

/// Left/right multiplication family of a table: L(e_i) e_j = e_i · e_j,
/// R(e_i) e_j = e_j · e_i.
template <class S>
EndoFamily<S> left_mult_family(const MultTable<S>& c) {
  const std::size_t n = c.dim(0);
  EndoFamily<S> f(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) f.mats[i](k, j) = c(i, j, k);
  return f;
}

template <class S>
EndoFamily<S> right_mult_family(const MultTable<S>& c) {
  const std::size_t n = c.dim(0);
  EndoFamily<S> f(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) f.mats[i](k, j) = c(j, i, k);
  return f;
}

/// Regular representation on the algebra itself: zinbiel (L∗, R∗), pre-Lie
/// (L∘, R∘), Poisson (L⋆, ad), pre-Poisson all four multiplication families.
template <class S>
Representation<S> regular_representation(const Algebra<S>& alg,
                                         RepKind kind = RepKind::prepoisson) {
  Representation<S> rep;
  rep.kind = kind;
  rep.base = alg;
  rep.rep_dim = alg.dim;
  switch (kind) {
    case RepKind::zinbiel:
      rep.maps["l"] = left_mult_family(alg.table("zinbiel"));
      rep.maps["r"] = right_mult_family(alg.table("zinbiel"));
      break;
    case RepKind::prelie:
      rep.maps["rho"] = left_mult_family(alg.table("prelie"));
      rep.maps["mu"] = right_mult_family(alg.table("prelie"));
      break;
    case RepKind::poisson:
      rep.maps["f"] = left_mult_family(alg.table("commassoc"));
      rep.maps["g"] = left_mult_family(alg.table("lie"));
      break;
    case RepKind::prepoisson:
      rep.maps["l"] = left_mult_family(alg.table("zinbiel"));
      rep.maps["r"] = right_mult_family(alg.table("zinbiel"));
      rep.maps["rho"] = left_mult_family(alg.table("prelie"));
      rep.maps["mu"] = right_mult_family(alg.table("prelie"));
      break;
  }
  return rep;
}

/// The two Poisson representations (l+r, rho−mu) and (l, rho) over the
/// sub-adjacent Poisson algebra of the base.
template <class S>
std::pair<Representation<S>, Representation<S>> induced_poisson_reps(
    const Representation<S>& rep) {
  if (rep.kind != RepKind::prepoisson)
    throw Error("induced Poisson representations need a pre-Poisson representation");
  Algebra<S> poisson_base = sub_adjacent(rep.base);
  Representation<S> first, second;
  first.kind = second.kind = RepKind::poisson;
  first.base = second.base = poisson_base;
  first.rep_dim = second.rep_dim = rep.rep_dim;
  first.maps["f"] = rep.map("l") + rep.map("r");
  first.maps["g"] = rep.map("rho") - rep.map("mu");
  second.maps["f"] = rep.map("l");
  second.maps["g"] = rep.map("rho");
  return {std::move(first), std::move(second)};
}

}  // namespace ppk
