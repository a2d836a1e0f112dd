#pragma once

// Shared helpers for the test suites: the two-parameter dim-2 pre-Poisson example
// algebras, small valid-instance pools over F_3, and brute-force oracles
// kept independent of the library's evaluation paths.

#include <vector>

#include "ppk/algebra.hpp"
#include "ppk/generators.hpp"
#include "ppk/identities.hpp"

namespace ppk::testing {

/// The two-parameter-family dim-2 algebra: e1*e1 = a e2 with all other
/// Zinbiel products zero; e1∘e1 = b e1 + c e2, e1∘e2 = e2∘e1 = b e2,
/// e2∘e2 = 0.
template <class S>
Algebra<S> family_dim2(const S& a, const S& b, const S& c, FieldDescriptor field) {
  Algebra<S> alg(2, field);
  auto& ast = alg.add_table("zinbiel");
  ast(0, 0, 1) = a;
  auto& circ = alg.add_table("prelie");
  circ(0, 0, 0) = b;
  circ(0, 0, 1) = c;
  circ(0, 1, 1) = b;
  circ(1, 0, 1) = b;
  return alg;
}

inline Algebra<Rational> family_dim2_q(long a, long b, long c) {
  return family_dim2<Rational>(Rational(a), Rational(b), Rational(c),
                               FieldDescriptor::rationals());
}

inline Algebra<Fp> family_dim2_f(long a, long b, long c, std::uint32_t p) {
  auto f = FieldDescriptor::fp(p);
  return family_dim2<Fp>(Fp::make(a, p), Fp::make(b, p), Fp::make(c, p), f);
}

template <class S>
Algebra<S> zero_algebra(std::size_t dim, FieldDescriptor field,
                        std::vector<std::string> tables = {"zinbiel", "prelie"}) {
  Algebra<S> alg(dim, field);
  for (const auto& t : tables) alg.add_table(t);
  return alg;
}

/// All dim-2 tables over F_p passing one identity system; exhaustive over
/// the p^8 structure-constant space. Usable for p = 2, 3.
inline std::vector<MultTable<Fp>> all_valid_tables_dim2(std::uint32_t p, const char* table_name,
                                                        IdentitySystem sys) {
  std::vector<MultTable<Fp>> out;
  const long total = [&] {
    long t = 1;
    for (int i = 0; i < 8; ++i) t *= p;
    return t;
  }();
  for (long code = 0; code < total; ++code) {
    long c = code;
    MultTable<Fp> t(2, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) {
          t(i, j, k) = Fp::make(c % p, p);
          c /= p;
        }
    Algebra<Fp> alg(2, FieldDescriptor::fp(p));
    alg.set_table(table_name, t);
    if (check_identities(alg, sys).passed) out.push_back(std::move(t));
  }
  return out;
}

/// Deterministic pool of valid dim-2 pre-Poisson algebras over F_p: pairs of
/// valid Zinbiel and pre-Lie tables filtered by the two mixed conditions.
inline std::vector<Algebra<Fp>> prepoisson_pool_dim2(std::uint32_t p, std::size_t want,
                                                     std::uint64_t seed) {
  static std::vector<MultTable<Fp>> zin3 = all_valid_tables_dim2(3, "zinbiel", IdentitySystem::ZINBIEL);
  static std::vector<MultTable<Fp>> pre3 = all_valid_tables_dim2(3, "prelie", IdentitySystem::PRELIE);
  std::vector<MultTable<Fp>>&zin = zin3, &pre = pre3;
  std::vector<MultTable<Fp>> zin_local, pre_local;
  if (p != 3) {
    zin_local = all_valid_tables_dim2(p, "zinbiel", IdentitySystem::ZINBIEL);
    pre_local = all_valid_tables_dim2(p, "prelie", IdentitySystem::PRELIE);
    zin = zin_local;
    pre = pre_local;
  }
  SplitMix64 rng(seed);
  std::vector<Algebra<Fp>> out;
  while (out.size() < want) {
    Algebra<Fp> alg(2, FieldDescriptor::fp(p));
    alg.set_table("zinbiel", zin[rng.below(zin.size())]);
    alg.set_table("prelie", pre[rng.below(pre.size())]);
    if (check_identities(alg, IdentitySystem::PREPOISSON_COMPAT).passed)
      out.push_back(std::move(alg));
  }
  return out;
}

}  // namespace ppk::testing
