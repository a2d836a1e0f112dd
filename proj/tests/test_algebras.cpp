#include <catch2/catch_amalgamated.hpp>

#include "ppk/forms.hpp"
#include "ppk/identities.hpp"
#include "support.hpp"

using namespace ppk;
using namespace ppk::testing;

TEST_CASE("zero algebra passes every identity system") {
  auto alg = zero_algebra<Rational>(3, FieldDescriptor::rationals(),
                                    {"zinbiel", "prelie", "commassoc", "lie",
                                     "dendriform_succ", "dendriform_prec"});
  for (auto sys : {IdentitySystem::ZINBIEL, IdentitySystem::DENDRIFORM, IdentitySystem::PRELIE,
                   IdentitySystem::COMM_ASSOC, IdentitySystem::LIE, IdentitySystem::LEIBNIZ_RULE,
                   IdentitySystem::PREPOISSON_COMPAT, IdentitySystem::PREPOISSON,
                   IdentitySystem::POISSON})
    CHECK(check_identities(alg, sys).passed);
}

TEST_CASE("dim-2 family with (a,b,c)=(1,1,1) is pre-Poisson") {
  auto alg = family_dim2_q(1, 1, 1);
  auto report = check_identities(alg, IdentitySystem::PREPOISSON);
  CHECK(report.passed);
  CHECK(report.failure_count == 0);
}

TEST_CASE("dim-1 idempotent Zinbiel product fails with witness (1,1,1)") {
  Algebra<Rational> alg(1, FieldDescriptor::rationals());
  alg.add_table("zinbiel")(0, 0, 0) = Rational(1);
  auto report = check_identities(alg, IdentitySystem::ZINBIEL);
  REQUIRE(!report.passed);
  REQUIRE(report.witnesses.size() == 1);
  CHECK(report.witnesses[0].id == "zinbiel");
  CHECK(report.witnesses[0].at == std::vector<int>{1, 1, 1});
  CHECK(report.witnesses[0].residual == Vec<Rational>{Rational(-1)});
}

TEST_CASE("missing table is an error") {
  Algebra<Rational> alg(2, FieldDescriptor::rationals());
  alg.add_table("zinbiel");
  CHECK_THROWS_AS(check_identities(alg, IdentitySystem::PRELIE), Error);
}

TEST_CASE("identity checks agree with evaluation at random non-basis vectors") {
  // multilinearity spot-check: basis verdicts transfer to arbitrary vectors
  SplitMix64 rng(21);
  auto pool = prepoisson_pool_dim2(3, 10, 77);
  const auto& idents = identities_for(IdentitySystem::PREPOISSON);
  auto f3 = FieldDescriptor::fp(3);
  for (const auto& alg : pool) {
    for (const auto& ident : idents) {
      std::vector<Vec<Fp>> vars;
      for (int v = 0; v < ident.arity; ++v) vars.push_back(random_vec<Fp>(rng, f3, 2, 0.2));
      CHECK(is_zero(identity_residual(alg, ident, vars)));
    }
  }
}

TEST_CASE("rescaling preserves homogeneous identity verdicts") {
  SplitMix64 rng(31);
  auto f5 = FieldDescriptor::fp(5);
  struct Case { const char* table; IdentitySystem sys; };
  const Case cases[] = {{"zinbiel", IdentitySystem::ZINBIEL},
                        {"prelie", IdentitySystem::PRELIE},
                        {"commassoc", IdentitySystem::COMM_ASSOC},
                        {"lie", IdentitySystem::LIE}};
  for (int trial = 0; trial < 60; ++trial)
    for (const auto& c : cases) {
      Algebra<Fp> alg(2, f5);
      alg.set_table(c.table, random_tensor3<Fp>(rng, f5, 2, 2, 2, 0.5));
      Fp lambda = Fp::make(1 + static_cast<long>(rng.below(4)), 5);
      Algebra<Fp> scaled_alg(2, f5);
      scaled_alg.set_table(c.table, lambda * alg.table(c.table));
      CHECK(check_identities(alg, c.sys).passed == check_identities(scaled_alg, c.sys).passed);
    }
}

TEST_CASE("sub_adjacent of the dim-2 example family") {
  auto alg = family_dim2_q(1, 1, 1);
  auto sub = sub_adjacent(alg);
  // e1 ⋆ e1 = 2 e2, all brackets vanish (hand expansion of the family)
  const auto& star = sub.table("commassoc");
  CHECK(star(0, 0, 1) == Rational(2));
  CHECK(star(0, 0, 0) == Rational(0));
  CHECK(star(0, 1, 0) == Rational(0));
  CHECK(star(0, 1, 1) == Rational(0));
  CHECK(sub.table("lie").is_zero());
  CHECK(check_identities(sub, IdentitySystem::POISSON).passed);

  auto zero = zero_algebra<Rational>(2, FieldDescriptor::rationals());
  auto zsub = sub_adjacent(zero);
  CHECK(zsub.table("commassoc").is_zero());
  CHECK(zsub.table("lie").is_zero());
}

TEST_CASE("sub_adjacent sends pre-Poisson to Poisson on random valid instances") {
  auto pool = prepoisson_pool_dim2(3, 25, 99);
  for (const auto& alg : pool) {
    REQUIRE(check_identities(alg, IdentitySystem::PREPOISSON).passed);
    CHECK(check_identities(sub_adjacent(alg), IdentitySystem::POISSON).passed);
  }
}

TEST_CASE("zinbiel_to_dendriform") {
  auto zero = zero_algebra<Rational>(2, FieldDescriptor::rationals(), {"zinbiel"});
  auto dz = zinbiel_to_dendriform(zero);
  CHECK(dz.table("dendriform_succ").is_zero());
  CHECK(dz.table("dendriform_prec").is_zero());

  auto alg = family_dim2_q(1, 0, 0);
  auto d = zinbiel_to_dendriform(alg);
  CHECK(d.table("dendriform_succ")(0, 0, 1) == Rational(1));
  CHECK(d.table("dendriform_prec")(0, 0, 1) == Rational(1));
  Rational zero_r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        if (!(i == 0 && j == 0 && k == 1)) {
          CHECK(d.table("dendriform_succ")(i, j, k) == zero_r);
          CHECK(d.table("dendriform_prec")(i, j, k) == zero_r);
        }

  // the image of any Zinbiel-passing algebra passes the dendriform axioms
  auto zin_tables = all_valid_tables_dim2(2, "zinbiel", IdentitySystem::ZINBIEL);
  for (const auto& t : zin_tables) {
    Algebra<Fp> a(2, FieldDescriptor::fp(2));
    a.set_table("zinbiel", t);
    CHECK(check_identities(zinbiel_to_dendriform(a), IdentitySystem::DENDRIFORM).passed);
  }
}

TEST_CASE("connes cocycle checks") {
  BilinearForm<Rational> omega;
  omega.w = Matrix<Rational>(2, 2);
  omega.w(0, 1) = Rational(1);
  omega.w(1, 0) = Rational(-1);

  MultTable<Rational> star(2, 2, 2);
  CHECK(check_connes_cocycle(star, omega).passed);

  star(0, 0, 1) = Rational(1);  // e1⋆e1 = e2
  auto report = check_connes_cocycle(star, omega);
  // brute-force cyclic-sum oracle over all 8 triples
  std::size_t fails = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        Vec<Rational> x = basis_vec<Rational>(2, i), y = basis_vec<Rational>(2, j),
                      z = basis_vec<Rational>(2, k);
        Rational v = omega(table_mul(star, x, y), z) + omega(table_mul(star, y, z), x) +
                     omega(table_mul(star, z, x), y);
        if (!v.is_zero()) ++fails;
      }
  CHECK(report.failure_count == fails);
  CHECK(report.passed == (fails == 0));

  BilinearForm<Rational> not_antisym;
  not_antisym.w = Matrix<Rational>(2, 2);
  not_antisym.w(0, 1) = Rational(1);
  not_antisym.w(1, 0) = Rational(1);
  CHECK_THROWS_AS(check_connes_cocycle(star, not_antisym), Error);

  BilinearForm<Rational> degenerate;
  degenerate.w = Matrix<Rational>(2, 2);
  CHECK_THROWS_AS(check_connes_cocycle(star, degenerate), Error);
}

TEST_CASE("symplectic check agrees with the direct triple loop over F_3") {
  SplitMix64 rng(13);
  auto f3 = FieldDescriptor::fp(3);
  BilinearForm<Fp> omega;
  omega.w = Matrix<Fp>(2, 2);
  omega.w(0, 1) = Fp::make(1, 3);
  omega.w(1, 0) = Fp::make(-1, 3);
  // abelian bracket passes for every valid form
  MultTable<Fp> abelian(2, 2, 2);
  CHECK(check_symplectic(abelian, omega).passed);
  for (int trial = 0; trial < 60; ++trial) {
    auto lie = random_tensor3<Fp>(rng, f3, 2, 2, 2, 0.4);
    auto report = check_symplectic(lie, omega);
    std::size_t fails = 0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) {
          Vec<Fp> x = basis_vec<Fp>(2, i), y = basis_vec<Fp>(2, j), z = basis_vec<Fp>(2, k);
          Fp v = omega(table_mul(lie, x, y), z) + omega(table_mul(lie, y, z), x) +
                 omega(table_mul(lie, z, x), y);
          if (!v.is_zero()) ++fails;
        }
    CHECK(report.failure_count == fails);
  }
}

TEST_CASE("compatible_from_form") {
  BilinearForm<Rational> omega;
  omega.w = Matrix<Rational>(2, 2);
  omega.w(0, 1) = Rational(1);
  omega.w(1, 0) = Rational(-1);

  SECTION("zero star and bracket give zero products") {
    MultTable<Rational> star(2, 2, 2), lie(2, 2, 2);
    auto [ast, circ] = compatible_from_form(star, lie, omega);
    CHECK(ast.is_zero());
    CHECK(circ.is_zero());
  }

  SECTION("defining equations and compatibility on a nonzero Poisson instance") {
    // zero star with [e1, e2] = e1 is a Poisson algebra; every antisymmetric
    // form on a dim-2 space satisfies both cyclic conditions
    MultTable<Rational> star(2, 2, 2), lie(2, 2, 2);
    lie(0, 1, 0) = Rational(1);
    lie(1, 0, 0) = Rational(-1);
    {
      Algebra<Rational> poisson(2, FieldDescriptor::rationals());
      poisson.set_table("commassoc", star);
      poisson.set_table("lie", lie);
      REQUIRE(check_identities(poisson, IdentitySystem::POISSON).passed);
    }
    REQUIRE(check_connes_cocycle(star, omega).passed);
    REQUIRE(check_symplectic(lie, omega).passed);
    auto [ast, circ] = compatible_from_form(star, lie, omega);
    CHECK(!circ.is_zero());
    {
      Algebra<Rational> recovered(2, FieldDescriptor::rationals());
      recovered.set_table("zinbiel", ast);
      recovered.set_table("prelie", circ);
      CHECK(check_identities(recovered, IdentitySystem::PREPOISSON).passed);
    }
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) {
          Vec<Rational> x = basis_vec<Rational>(2, i), y = basis_vec<Rational>(2, j),
                        z = basis_vec<Rational>(2, k);
          CHECK(omega(table_mul(ast, x, y), z) == omega(y, table_mul(star, x, z)));
          CHECK(omega(table_mul(circ, x, y), z) == -omega(y, table_mul(lie, x, z)));
        }
    CHECK(symmetrized(ast) == star);
    CHECK(antisymmetrized(circ) == lie);
  }
}

TEST_CASE("change of basis transports identities and products") {
  SplitMix64 rng(404040);
  auto f5 = FieldDescriptor::fp(5);
  std::size_t checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto alg = family_dim2_f(1 + rng.below(4), rng.below(5), rng.below(5), 5);
    if (!check_identities(alg, IdentitySystem::PREPOISSON).passed) continue;
    auto p = random_matrix<Fp>(rng, f5, 2, 2, 0.3);
    if (determinant(p).is_zero()) continue;
    Algebra<Fp> moved(2, f5);
    moved.set_table("zinbiel", transform_table(alg.table("zinbiel"), p));
    moved.set_table("prelie", transform_table(alg.table("prelie"), p));
    CHECK(check_identities(moved, IdentitySystem::PREPOISSON).passed);
    // transporting twice through p and p^{-1} restores the table
    auto eye = Matrix<Fp>::identity(2);
    Matrix<Fp> pinv(2, 2);
    for (std::size_t c = 0; c < 2; ++c) {
      Vec<Fp> col = {eye(0, c), eye(1, c)};
      auto x = solve_linear(p, col);
      REQUIRE(x);
      pinv(0, c) = (*x)[0];
      pinv(1, c) = (*x)[1];
    }
    CHECK(transform_table(moved.table("zinbiel"), pinv) == alg.table("zinbiel"));
    ++checked;
  }
  CHECK(checked > 10);
  // singular matrices are rejected
  auto alg = family_dim2_q(1, 1, 1);
  Matrix<Rational> sing(2, 2);
  sing(0, 0) = Rational(1);
  CHECK_THROWS_AS(transform_table(alg.table("zinbiel"), sing), Error);
}
