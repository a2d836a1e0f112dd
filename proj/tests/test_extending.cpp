#include <catch2/catch_amalgamated.hpp>

#include "ppk/extending.hpp"
#include "support.hpp"

using namespace ppk;
using namespace ppk::testing;

namespace {

ExtendingDatum<Fp> random_datum(SplitMix64& rng, std::size_t n, std::size_t q, std::uint32_t p,
                                double sparsity) {
  auto field = FieldDescriptor::fp(p);
  ExtendingDatum<Fp> d(n, q);
  d.l1 = random_endo_family<Fp>(rng, field, n, q, sparsity);
  d.r1 = random_endo_family<Fp>(rng, field, n, q, sparsity);
  d.rho1 = random_endo_family<Fp>(rng, field, n, q, sparsity);
  d.mu1 = random_endo_family<Fp>(rng, field, n, q, sparsity);
  d.l2 = random_endo_family<Fp>(rng, field, q, n, sparsity);
  d.r2 = random_endo_family<Fp>(rng, field, q, n, sparsity);
  d.rho2 = random_endo_family<Fp>(rng, field, q, n, sparsity);
  d.mu2 = random_endo_family<Fp>(rng, field, q, n, sparsity);
  d.f = random_tensor3<Fp>(rng, field, q, q, n, sparsity);
  d.g = random_tensor3<Fp>(rng, field, q, q, n, sparsity);
  d.star2 = random_tensor3<Fp>(rng, field, q, q, q, sparsity);
  d.circ2 = random_tensor3<Fp>(rng, field, q, q, q, sparsity);
  return d;
}

void zero_prelie_side(ExtendingDatum<Fp>& d) {
  d.rho1 = EndoFamily<Fp>(d.dim_a, d.dim_v);
  d.mu1 = EndoFamily<Fp>(d.dim_a, d.dim_v);
  d.rho2 = EndoFamily<Fp>(d.dim_v, d.dim_a);
  d.mu2 = EndoFamily<Fp>(d.dim_v, d.dim_a);
  d.g = Tensor3<Fp>(d.dim_v, d.dim_v, d.dim_a);
  d.circ2 = Tensor3<Fp>(d.dim_v, d.dim_v, d.dim_v);
}

}  // namespace

TEST_CASE("unified product of zero data is the zero algebra") {
  auto a = zero_algebra<Rational>(2, FieldDescriptor::rationals());
  ExtendingDatum<Rational> d(2, 1);
  auto e = build_unified_product(a, d);
  CHECK(e.dim == 3);
  CHECK(e.table("zinbiel").is_zero());
  CHECK(e.table("prelie").is_zero());
}

TEST_CASE("unified product with only the V structure is the direct sum") {
  auto a = zero_algebra<Fp>(2, FieldDescriptor::fp(3));
  ExtendingDatum<Fp> d(2, 2);
  auto v = family_dim2_f(1, 1, 1, 3);
  d.star2 = v.table("zinbiel");
  d.circ2 = v.table("prelie");
  auto e = build_unified_product(a, d);
  CHECK(check_identities(e, IdentitySystem::PREPOISSON).passed);
  CHECK(e.table("zinbiel")(2, 2, 3) == Fp::make(1, 3));
}

TEST_CASE("zero datum over a valid base passes both strategies") {
  auto a = family_dim2_q(1, 1, 1);
  ExtendingDatum<Rational> d(2, 1);
  auto rep = verify_extending_structure(a, d, ExtendingKind::prepoisson, Strategy::both);
  CHECK(rep.passed);
  REQUIRE(rep.axiomatic);
  REQUIRE(rep.itemized);
  CHECK(rep.axiomatic->passed);
  CHECK(rep.itemized->passed);
  CHECK(rep.warnings.empty());
}

TEST_CASE("axiomatic and itemized verdicts agree for the Zinbiel list") {
  SplitMix64 rng(2024);
  auto zin_tables = all_valid_tables_dim2(3, "zinbiel", IdentitySystem::ZINBIEL);
  std::size_t passing = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Algebra<Fp> a(2, FieldDescriptor::fp(3));
    a.set_table("zinbiel", zin_tables[rng.below(zin_tables.size())]);
    a.add_table("prelie");
    auto d = random_datum(rng, 2, 1, 3, 0.75);
    zero_prelie_side(d);
    auto rep = verify_extending_structure(a, d, ExtendingKind::zinbiel, Strategy::both);
    REQUIRE(rep.axiomatic);
    REQUIRE(rep.itemized);
    CHECK(rep.axiomatic->passed == rep.itemized->passed);
    if (rep.axiomatic->passed) ++passing;
  }
  INFO("passing instances: " << passing);
  CHECK(passing > 0);
}

TEST_CASE("axiomatic and itemized verdicts agree for the pre-Lie list") {
  SplitMix64 rng(2025);
  auto pre_tables = all_valid_tables_dim2(3, "prelie", IdentitySystem::PRELIE);
  std::size_t passing = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Algebra<Fp> a(2, FieldDescriptor::fp(3));
    a.set_table("prelie", pre_tables[rng.below(pre_tables.size())]);
    a.add_table("zinbiel");
    auto d = random_datum(rng, 2, 1, 3, 0.75);
    d.l1 = EndoFamily<Fp>(2, 1);
    d.r1 = EndoFamily<Fp>(2, 1);
    d.l2 = EndoFamily<Fp>(1, 2);
    d.r2 = EndoFamily<Fp>(1, 2);
    d.f = Tensor3<Fp>(1, 1, 2);
    d.star2 = Tensor3<Fp>(1, 1, 1);
    auto rep = verify_extending_structure(a, d, ExtendingKind::prelie, Strategy::both);
    REQUIRE(rep.axiomatic);
    REQUIRE(rep.itemized);
    CHECK(rep.axiomatic->passed == rep.itemized->passed);
    if (rep.axiomatic->passed) ++passing;
  }
  CHECK(passing > 0);
}

TEST_CASE("pre-Poisson strategy disagreements are surfaced, not hidden") {
  SplitMix64 rng(2026);
  auto pool = prepoisson_pool_dim2(3, 12, 555);
  std::size_t agree = 0, disagree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& a = pool[rng.below(pool.size())];
    auto d = random_datum(rng, 2, 1, 3, 0.8);
    auto rep = verify_extending_structure(a, d, ExtendingKind::prepoisson, Strategy::both);
    REQUIRE(rep.axiomatic);
    REQUIRE(rep.itemized);
    if (rep.axiomatic->passed == rep.itemized->passed) {
      ++agree;
      CHECK(rep.warnings.empty());
    } else {
      ++disagree;
      CHECK(!rep.warnings.empty());
    }
  }
  INFO("agree=" << agree << " disagree=" << disagree);
  CHECK(agree + disagree == 200);
}

TEST_CASE("extraction round trip on random unified products") {
  SplitMix64 rng(2027);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng.below(2), q = 1 + rng.below(2);
    Algebra<Fp> a(n, FieldDescriptor::fp(3));
    auto field = FieldDescriptor::fp(3);
    a.set_table("zinbiel", random_tensor3<Fp>(rng, field, n, n, n, 0.5));
    a.set_table("prelie", random_tensor3<Fp>(rng, field, n, n, n, 0.5));
    auto d = random_datum(rng, n, q, 3, 0.5);
    auto e = build_unified_product(a, d);
    BasisSplit split;
    for (std::size_t i = 0; i < n; ++i) split.a_part.push_back(i);
    for (std::size_t i = 0; i < q; ++i) split.v_part.push_back(n + i);
    auto [a2, d2] = extract_datum(e, split);
    CHECK(a2.table("zinbiel") == a.table("zinbiel"));
    CHECK(a2.table("prelie") == a.table("prelie"));
    CHECK(d2.l1 == d.l1);
    CHECK(d2.r1 == d.r1);
    CHECK(d2.rho1 == d.rho1);
    CHECK(d2.mu1 == d.mu1);
    CHECK(d2.l2 == d.l2);
    CHECK(d2.r2 == d.r2);
    CHECK(d2.rho2 == d.rho2);
    CHECK(d2.mu2 == d.mu2);
    CHECK(d2.f == d.f);
    CHECK(d2.g == d.g);
    CHECK(d2.star2 == d.star2);
    CHECK(d2.circ2 == d.circ2);
  }
}

TEST_CASE("extraction from the dim-2 example family") {
  auto e = family_dim2_q(1, 1, 1);
  SECTION("span(e2) is closed and reproduces the algebra") {
    BasisSplit split{{1}, {0}};
    auto [a, d] = extract_datum(e, split);
    CHECK(a.dim == 1);
    CHECK(a.table("zinbiel").is_zero());
    CHECK(d.f(0, 0, 0) == Rational(1));
    CHECK(d.circ2(0, 0, 0) == Rational(1));
  }
  SECTION("span(e1) is not closed") {
    BasisSplit split{{0}, {1}};
    CHECK_THROWS_AS(extract_datum(e, split), Error);
  }
  SECTION("a non-partition is rejected") {
    CHECK_THROWS_AS(extract_datum(e, BasisSplit{{0}, {0}}), Error);
    CHECK_THROWS_AS(extract_datum(e, BasisSplit{{0}, {}}), Error);
  }
}

TEST_CASE("block-diagonal ambient algebra extracts a direct-sum datum") {
  auto v = family_dim2_q(1, 1, 1);
  Algebra<Rational> e(3, FieldDescriptor::rationals());
  for (const char* tn : {"zinbiel", "prelie"}) {
    MultTable<Rational> t(3, 3, 3);
    const auto& vt = v.table(tn);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) t(1 + i, 1 + j, 1 + k) = vt(i, j, k);
    e.set_table(tn, std::move(t));
  }
  auto [a, d] = extract_datum(e, BasisSplit{{0}, {1, 2}});
  CHECK(a.table("zinbiel").is_zero());
  CHECK(d.f.is_zero());
  CHECK(d.g.is_zero());
  CHECK(d.l1.is_zero());
  CHECK(d.r2.is_zero());
  CHECK(d.star2 == v.table("zinbiel"));
  CHECK(d.circ2 == v.table("prelie"));
}

TEST_CASE("morphism pairs") {
  auto a = family_dim2_q(1, 1, 1);
  ExtendingDatum<Rational> d(2, 1);
  d.f(0, 0, 0) = Rational(1);
  d.g(0, 0, 1) = Rational(2);
  d.star2(0, 0, 0) = Rational(1);

  SECTION("identity pair is cohomologous") {
    MorphismPair<Rational> pair{Matrix<Rational>(2, 1), Matrix<Rational>::identity(1)};
    auto v = check_morphism_pair(a, d, d, pair);
    CHECK(v.homomorphism);
    CHECK(v.direct_homomorphism);
    CHECK(v.routes_agree);
    CHECK(v.isomorphism);
    CHECK(v.equivalent);
    CHECK(v.cohomologous);
  }

  SECTION("eta = 2*id with a nonzero cocycle fails the transport conditions") {
    MorphismPair<Rational> pair{Matrix<Rational>(2, 1), Matrix<Rational>(1, 1)};
    pair.eta(0, 0) = Rational(2);
    auto v = check_morphism_pair(a, d, d, pair);
    CHECK(!v.homomorphism);
    CHECK(v.routes_agree);
    bool found = false;
    for (const auto& id : v.failing) found = found || id == "morph.05";
    CHECK(found);
  }

  SECTION("equation route and direct route agree on random instances") {
    std::size_t homs = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      SplitMix64 local(trial + 9000);
      auto field = FieldDescriptor::fp(3);
      Algebra<Fp> base(2, field);
      base.set_table("zinbiel", random_tensor3<Fp>(local, field, 2, 2, 2, 0.6));
      base.set_table("prelie", random_tensor3<Fp>(local, field, 2, 2, 2, 0.6));
      ExtendingDatum<Fp> da(2, 1), db(2, 1);
      da.f = random_tensor3<Fp>(local, field, 1, 1, 2, 0.3);
      da.g = random_tensor3<Fp>(local, field, 1, 1, 2, 0.3);
      da.star2 = random_tensor3<Fp>(local, field, 1, 1, 1, 0.3);
      da.circ2 = random_tensor3<Fp>(local, field, 1, 1, 1, 0.3);
      db = da;
      if (local.chance(0.5)) db.f = random_tensor3<Fp>(local, field, 1, 1, 2, 0.3);
      MorphismPair<Fp> pair{random_matrix<Fp>(local, field, 2, 1, 0.4),
                            random_matrix<Fp>(local, field, 1, 1, 0.2)};
      auto v = check_morphism_pair(base, da, db, pair);
      CHECK(v.routes_agree);
      if (v.homomorphism) ++homs;
    }
    CHECK(homs > 0);
  }

  SECTION("equivalence is reflexive and symmetric") {
    SplitMix64 local(4242);
    auto field = FieldDescriptor::fp(5);
    std::size_t symmetric_checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      Algebra<Fp> base(1, field);
      base.set_table("zinbiel", random_tensor3<Fp>(local, field, 1, 1, 1, 0.5));
      base.set_table("prelie", random_tensor3<Fp>(local, field, 1, 1, 1, 0.5));
      ExtendingDatum<Fp> da(1, 1);
      da.f = random_tensor3<Fp>(local, field, 1, 1, 1, 0.4);
      da.star2 = random_tensor3<Fp>(local, field, 1, 1, 1, 0.4);
      MorphismPair<Fp> idp{Matrix<Fp>(1, 1), Matrix<Fp>::identity(1)};
      CHECK(check_morphism_pair(base, da, da, idp).equivalent);
      ExtendingDatum<Fp> db = da;
      MorphismPair<Fp> pair{random_matrix<Fp>(local, field, 1, 1, 0.4),
                            random_matrix<Fp>(local, field, 1, 1, 0.0)};
      if (determinant(pair.eta).is_zero()) continue;
      auto v = check_morphism_pair(base, da, db, pair);
      if (!v.equivalent) continue;
      Matrix<Fp> eta_inv(1, 1);
      eta_inv(0, 0) = pair.eta(0, 0).inverse();
      MorphismPair<Fp> back{-(pair.zeta * eta_inv), eta_inv};
      CHECK(check_morphism_pair(base, db, da, back).equivalent);
      ++symmetric_checked;
    }
    CHECK(symmetric_checked > 0);
  }
}
