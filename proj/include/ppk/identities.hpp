#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ppk/algebra.hpp"
#include "ppk/check.hpp"

namespace ppk {

/// Product tree over formal variables. A leaf is a variable; an inner node
/// multiplies its children under a named table.
struct TermExpr {
  int var = -1;
  std::string table;
  std::shared_ptr<const TermExpr> lhs, rhs;
};
using TermPtr = std::shared_ptr<const TermExpr>;

inline TermPtr term_var(int i) {
  auto t = std::make_shared<TermExpr>();
  t->var = i;
  return t;
}

inline TermPtr term_mul(std::string table, TermPtr a, TermPtr b) {
  auto t = std::make_shared<TermExpr>();
  t->table = std::move(table);
  t->lhs = std::move(a);
  t->rhs = std::move(b);
  return t;
}

struct SignedTerm {
  int coeff;
  TermPtr term;
};

/// One multilinear identity, stored as a signed sum of product trees that
/// must vanish for every choice of the variables.
struct Identity {
  std::string id;
  int arity = 0;
  std::vector<SignedTerm> terms;
};

enum class IdentitySystem {
  ZINBIEL,
  DENDRIFORM,
  PRELIE,
  COMM_ASSOC,
  LIE,
  LEIBNIZ_RULE,
  PREPOISSON_COMPAT,
  PREPOISSON,
  POISSON,
};

inline std::string to_string(IdentitySystem s) {
  switch (s) {
    case IdentitySystem::ZINBIEL: return "zinbiel";
    case IdentitySystem::DENDRIFORM: return "dendriform";
    case IdentitySystem::PRELIE: return "prelie";
    case IdentitySystem::COMM_ASSOC: return "commassoc";
    case IdentitySystem::LIE: return "lie";
    case IdentitySystem::LEIBNIZ_RULE: return "leibniz";
    case IdentitySystem::PREPOISSON_COMPAT: return "prepoisson-compat";
    case IdentitySystem::PREPOISSON: return "prepoisson";
    case IdentitySystem::POISSON: return "poisson";
  }
  throw Error("unknown identity system");
}

inline IdentitySystem identity_system_from_string(const std::string& s) {
  for (auto sys : {IdentitySystem::ZINBIEL, IdentitySystem::DENDRIFORM, IdentitySystem::PRELIE,
                   IdentitySystem::COMM_ASSOC, IdentitySystem::LIE, IdentitySystem::LEIBNIZ_RULE,
                   IdentitySystem::PREPOISSON_COMPAT, IdentitySystem::PREPOISSON,
                   IdentitySystem::POISSON})
    if (to_string(sys) == s) return sys;
  throw Error("unknown identity system '" + s + "'");
}

/// The identity registry. Composite systems expand to the union of their
/// component lists.
inline const std::vector<Identity>& identities_for(IdentitySystem sys) {
  auto x = term_var(0), y = term_var(1), z = term_var(2);
  auto m = [](const char* t, TermPtr a, TermPtr b) { return term_mul(t, std::move(a), std::move(b)); };

  static const std::vector<Identity> zinbiel = {
      {"zinbiel", 3,
       {{1, m("zinbiel", x, m("zinbiel", y, z))},
        {-1, m("zinbiel", m("zinbiel", y, x), z)},
        {-1, m("zinbiel", m("zinbiel", x, y), z)}}},
  };
  static const std::vector<Identity> dendriform = {
      {"dendriform.1", 3,
       {{1, m("dendriform_prec", m("dendriform_prec", x, y), z)},
        {-1, m("dendriform_prec", x, m("dendriform_prec", y, z))},
        {-1, m("dendriform_prec", x, m("dendriform_succ", y, z))}}},
      {"dendriform.2", 3,
       {{1, m("dendriform_succ", x, m("dendriform_prec", y, z))},
        {-1, m("dendriform_prec", m("dendriform_succ", x, y), z)}}},
      {"dendriform.3", 3,
       {{1, m("dendriform_succ", x, m("dendriform_succ", y, z))},
        {-1, m("dendriform_succ", m("dendriform_prec", x, y), z)},
        {-1, m("dendriform_succ", m("dendriform_succ", x, y), z)}}},
  };
  static const std::vector<Identity> prelie = {
      {"prelie", 3,
       {{1, m("prelie", x, m("prelie", y, z))},
        {-1, m("prelie", m("prelie", x, y), z)},
        {-1, m("prelie", y, m("prelie", x, z))},
        {1, m("prelie", m("prelie", y, x), z)}}},
  };
  static const std::vector<Identity> commassoc = {
      {"commassoc.comm", 2, {{1, m("commassoc", x, y)}, {-1, m("commassoc", y, x)}}},
      {"commassoc.assoc", 3,
       {{1, m("commassoc", m("commassoc", x, y), z)},
        {-1, m("commassoc", x, m("commassoc", y, z))}}},
  };
  static const std::vector<Identity> lie = {
      {"lie.alternating", 1, {{1, m("lie", x, x)}}},
      {"lie.antisym", 2, {{1, m("lie", x, y)}, {1, m("lie", y, x)}}},
      {"lie.jacobi", 3,
       {{1, m("lie", m("lie", x, y), z)},
        {1, m("lie", m("lie", y, z), x)},
        {1, m("lie", m("lie", z, x), y)}}},
  };
  static const std::vector<Identity> leibniz = {
      {"poisson.leibniz", 3,
       {{1, m("lie", z, m("commassoc", x, y))},
        {-1, m("commassoc", m("lie", z, x), y)},
        {-1, m("commassoc", x, m("lie", z, y))}}},
  };
  static const std::vector<Identity> compat = {
      {"prepoisson.compat1", 3,
       {{1, m("zinbiel", m("prelie", x, y), z)},
        {-1, m("zinbiel", m("prelie", y, x), z)},
        {-1, m("prelie", x, m("zinbiel", y, z))},
        {1, m("zinbiel", y, m("prelie", x, z))}}},
      {"prepoisson.compat2", 3,
       {{1, m("prelie", m("zinbiel", x, y), z)},
        {1, m("prelie", m("zinbiel", y, x), z)},
        {-1, m("zinbiel", x, m("prelie", y, z))},
        {-1, m("zinbiel", y, m("prelie", x, z))}}},
  };

  auto concat = [](std::initializer_list<const std::vector<Identity>*> parts) {
    std::vector<Identity> all;
    for (auto* p : parts) all.insert(all.end(), p->begin(), p->end());
    return all;
  };
  static const std::vector<Identity> prepoisson = concat({&zinbiel, &prelie, &compat});
  static const std::vector<Identity> poisson = concat({&commassoc, &lie, &leibniz});

  switch (sys) {
    case IdentitySystem::ZINBIEL: return zinbiel;
    case IdentitySystem::DENDRIFORM: return dendriform;
    case IdentitySystem::PRELIE: return prelie;
    case IdentitySystem::COMM_ASSOC: return commassoc;
    case IdentitySystem::LIE: return lie;
    case IdentitySystem::LEIBNIZ_RULE: return leibniz;
    case IdentitySystem::PREPOISSON_COMPAT: return compat;
    case IdentitySystem::PREPOISSON: return prepoisson;
    case IdentitySystem::POISSON: return poisson;
  }
  throw Error("unknown identity system");
}

template <class S>
Vec<S> eval_term(const Algebra<S>& alg, const TermExpr& t, const std::vector<Vec<S>>& vars) {
  if (t.var >= 0) return vars[t.var];
  return alg.mul(t.table, eval_term(alg, *t.lhs, vars), eval_term(alg, *t.rhs, vars));
}

/// Residual of one identity at concrete argument vectors.
template <class S>
Vec<S> identity_residual(const Algebra<S>& alg, const Identity& ident,
                         const std::vector<Vec<S>>& vars) {
  Vec<S> acc(alg.dim, S{});
  for (const auto& st : ident.terms) {
    Vec<S> v = eval_term(alg, *st.term, vars);
    if (st.coeff == 1)
      acc = acc + v;
    else if (st.coeff == -1)
      acc = acc - v;
    else
      acc = acc + scaled(st.coeff, v);
  }
  return acc;
}

/// Evaluate every identity of the system on all basis tuples. By
/// multilinearity a pass here is equivalent to the identity holding on the
/// whole space; witness tuples are reported 1-based in lexicographic order.
template <class S>
CheckReport<S> check_identities(const Algebra<S>& alg, IdentitySystem sys) {
  const auto& idents = identities_for(sys);
  CheckReport<S> report;
  const std::size_t n = alg.dim;
  std::vector<Vec<S>> basis;
  basis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) basis.push_back(basis_vec<S>(n, i));

  // surface missing tables before any evaluation
  auto require_tables = [&](const TermExpr& t, auto&& self) -> void {
    if (t.var >= 0) return;
    (void)alg.table(t.table);
    self(*t.lhs, self);
    self(*t.rhs, self);
  };
  for (const auto& ident : idents)
    for (const auto& st : ident.terms) require_tables(*st.term, require_tables);

  for (const auto& ident : idents) {
    std::vector<std::size_t> idx(ident.arity, 0);
    while (true) {
      std::vector<Vec<S>> vars;
      for (int v = 0; v < ident.arity; ++v) vars.push_back(basis[idx[v]]);
      Vec<S> res = identity_residual(alg, ident, vars);
      if (!is_zero(res)) {
        std::vector<int> at;
        for (auto i : idx) at.push_back(static_cast<int>(i) + 1);
        report.record(ident.id, std::move(at), std::move(res));
      }
      int pos = ident.arity - 1;
      while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return report;
}

}  // namespace ppk
