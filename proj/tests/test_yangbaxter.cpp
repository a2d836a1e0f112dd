#include <catch2/catch_amalgamated.hpp>

#include "ppk/yangbaxter.hpp"
#include "support.hpp"

using namespace ppk;
using namespace ppk::testing;

namespace {

// Independent expansion oracle: every named leg placement written as its
// own double sum over the rank-one terms of r, separate from the slot
// primitive.
template <class S>
Tensor3<S> oracle_placement(const std::string& name, const MultTable<S>& ast,
                            const MultTable<S>& other, const RMatrix<S>& r) {
  const std::size_t n = r.rows();
  Tensor3<S> out(n, n, n);
  auto mulv = [&](const MultTable<S>& t, std::size_t u, std::size_t v) {
    return table_mul_basis(t, u, v);
  };
  for (std::size_t ai = 0; ai < n; ++ai)
    for (std::size_t bi = 0; bi < n; ++bi) {
      if (r(ai, bi).is_zero()) continue;
      for (std::size_t aj = 0; aj < n; ++aj)
        for (std::size_t bj = 0; bj < n; ++bj) {
          if (r(aj, bj).is_zero()) continue;
          S c = r(ai, bi) * r(aj, bj);
          auto add = [&](std::size_t s0, std::size_t s1, const Vec<S>& prod, int slot) {
            for (std::size_t k = 0; k < n; ++k) {
              if (prod[k].is_zero()) continue;
              std::size_t idx[3];
              if (slot == 0) { idx[0] = k; idx[1] = s0; idx[2] = s1; }
              else if (slot == 1) { idx[0] = s0; idx[1] = k; idx[2] = s1; }
              else { idx[0] = s0; idx[1] = s1; idx[2] = k; }
              out(idx[0], idx[1], idx[2]) += c * prod[k];
            }
          };
          if (name == "r12*r23") add(ai, bj, mulv(ast, bi, aj), 1);
          else if (name == "r13s r23") add(ai, aj, mulv(other, bi, bj), 2);
          else if (name == "r12*r13") add(bi, bj, mulv(ast, ai, aj), 0);
          else if (name == "r13*r12") add(bj, bi, mulv(ast, ai, aj), 0);
          else if (name == "r13*r23") add(ai, aj, mulv(ast, bi, bj), 2);
          else if (name == "r23s r12") add(aj, bi, mulv(other, ai, bj), 1);
          else if (name == "r23*r12") add(aj, bi, mulv(ast, ai, bj), 1);
          else if (name == "r23*r13") add(aj, ai, mulv(ast, bi, bj), 2);
          else if (name == "r12s r13") add(bi, bj, mulv(other, ai, aj), 0);
          else throw Error("unknown placement " + name);
        }
    }
  return out;
}

template <class S>
Tensor3<S> oracle_d(const Algebra<S>& alg, const RMatrix<S>& r, DVariant variant) {
  const auto& ast = alg.table("zinbiel");
  MultTable<S> star = symmetrized(ast);
  switch (variant) {
    case DVariant::D:
      return oracle_placement<S>("r23*r12", ast, star, r) +
             oracle_placement<S>("r23*r13", ast, star, r) -
             oracle_placement<S>("r12s r13", ast, star, r);
    case DVariant::D1:
      return oracle_placement<S>("r13*r12", ast, star, r) +
             oracle_placement<S>("r13*r23", ast, star, r) -
             oracle_placement<S>("r23s r12", ast, star, r);
    case DVariant::D2:
      return oracle_placement<S>("r12*r23", ast, star, r) +
             oracle_placement<S>("r12*r13", ast, star, r) -
             oracle_placement<S>("r13s r23", ast, star, r);
  }
  throw Error("unknown variant");
}

template <class S>
Tensor3<S> oracle_s(const Algebra<S>& alg, const RMatrix<S>& r) {
  const auto& circ = alg.table("prelie");
  MultTable<S> lie = antisymmetrized(circ);
  // S(r) = −r12∘r13 + r12∘r23 + [r13, r23]
  return -oracle_placement<S>("r12*r13", circ, lie, r) +
         oracle_placement<S>("r12*r23", circ, lie, r) +
         oracle_placement<S>("r13s r23", circ, lie, r);
}

RMatrix<Rational> r_e11_q() {
  RMatrix<Rational> r(2, 2);
  r(0, 0) = Rational(1);
  return r;
}

}  // namespace

TEST_CASE("zero r gives zero obstructions") {
  auto alg = family_dim2_q(1, 1, 1);
  RMatrix<Rational> r(2, 2);
  CHECK(d_obstruction(alg, r).is_zero());
  CHECK(d_obstruction(alg, r, DVariant::D1).is_zero());
  CHECK(d_obstruction(alg, r, DVariant::D2).is_zero());
  CHECK(s_obstruction(alg, r).is_zero());
  auto v = check_ppybe(alg, r);
  CHECK(v.symmetric);
  CHECK(v.ppybe);
}

TEST_CASE("D(r) on the dim-2 family with a = 1, r = e1⊗e1") {
  auto alg = family_dim2_q(1, 0, 0);
  auto r = r_e11_q();
  auto d = d_obstruction(alg, r);
  // frozen from the expansion oracle: e1⊗e2⊗e1 + e1⊗e1⊗e2 − 2 e2⊗e1⊗e1
  Tensor3<Rational> want(2, 2, 2);
  want(0, 1, 0) = Rational(1);
  want(0, 0, 1) = Rational(1);
  want(1, 0, 0) = Rational(-2);
  CHECK(d == want);
  CHECK(d == oracle_d(alg, r, DVariant::D));
}

TEST_CASE("S(r) on the dim-2 family") {
  auto r = r_e11_q();
  SECTION("a=0, b=1, c=0 gives zero") {
    auto alg = family_dim2_q(0, 1, 0);
    CHECK(s_obstruction(alg, r).is_zero());
    CHECK(oracle_s(alg, r).is_zero());
  }
  SECTION("c = 1 leaves the residue e1⊗e2⊗e1 − e2⊗e1⊗e1") {
    auto alg = family_dim2_q(0, 1, 1);
    auto s = s_obstruction(alg, r);
    Tensor3<Rational> want(2, 2, 2);
    want(0, 1, 0) = Rational(1);
    want(1, 0, 0) = Rational(-1);
    CHECK(s == want);
    CHECK(s == oracle_s(alg, r));
  }
}

TEST_CASE("slot products match the expansion oracle on random data") {
  SplitMix64 rng(404);
  auto f3 = FieldDescriptor::fp(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + rng.below(2);
    Algebra<Fp> alg(n, f3);
    alg.set_table("zinbiel", random_tensor3<Fp>(rng, f3, n, n, n, 0.4));
    alg.set_table("prelie", random_tensor3<Fp>(rng, f3, n, n, n, 0.4));
    auto r = random_matrix<Fp>(rng, f3, n, n, 0.4);
    for (auto variant : {DVariant::D, DVariant::D1, DVariant::D2})
      CHECK(d_obstruction(alg, r, variant) == oracle_d(alg, r, variant));
    CHECK(s_obstruction(alg, r) == oracle_s(alg, r));
  }
}

TEST_CASE("for symmetric r the three D variants vanish together") {
  SplitMix64 rng(505);
  auto f2 = FieldDescriptor::fp(2);
  std::size_t zeros = 0, nonzeros = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto zin = all_valid_tables_dim2(2, "zinbiel", IdentitySystem::ZINBIEL);
    Algebra<Fp> alg(2, f2);
    alg.set_table("zinbiel", zin[rng.below(zin.size())]);
    // all 8 symmetric F2 matrices
    for (int m = 0; m < 8; ++m) {
      RMatrix<Fp> r(2, 2);
      r(0, 0) = Fp::make(m & 1, 2);
      r(1, 1) = Fp::make((m >> 1) & 1, 2);
      r(0, 1) = r(1, 0) = Fp::make((m >> 2) & 1, 2);
      bool d0 = d_obstruction(alg, r, DVariant::D).is_zero();
      bool d1 = d_obstruction(alg, r, DVariant::D1).is_zero();
      bool d2 = d_obstruction(alg, r, DVariant::D2).is_zero();
      CHECK(d0 == d1);
      CHECK(d1 == d2);
      (d0 ? zeros : nonzeros)++;
    }
  }
  INFO("zeros=" << zeros << " nonzeros=" << nonzeros);
  CHECK(zeros > 0);
  CHECK(nonzeros > 0);

  // random dim-3 instances over F3
  auto f3 = FieldDescriptor::fp(3);
  for (int trial = 0; trial < 150; ++trial) {
    Algebra<Fp> alg(3, f3);
    alg.set_table("zinbiel", random_tensor3<Fp>(rng, f3, 3, 3, 3, 0.5));
    auto r = random_matrix<Fp>(rng, f3, 3, 3, 0.5);
    r = r + r.transposed();  // symmetric by construction
    bool d0 = d_obstruction(alg, r, DVariant::D).is_zero();
    bool d1 = d_obstruction(alg, r, DVariant::D1).is_zero();
    bool d2 = d_obstruction(alg, r, DVariant::D2).is_zero();
    CHECK(d0 == d1);
    CHECK(d1 == d2);
  }
}

TEST_CASE("obstructions are quadratic in r") {
  SplitMix64 rng(606);
  auto f5 = FieldDescriptor::fp(5);
  for (int trial = 0; trial < 60; ++trial) {
    Algebra<Fp> alg(2, f5);
    alg.set_table("zinbiel", random_tensor3<Fp>(rng, f5, 2, 2, 2, 0.4));
    alg.set_table("prelie", random_tensor3<Fp>(rng, f5, 2, 2, 2, 0.4));
    auto r = random_matrix<Fp>(rng, f5, 2, 2, 0.4);
    Fp lambda = Fp::make(1 + static_cast<long>(rng.below(4)), 5);
    auto scaled_r = lambda * r;
    CHECK(d_obstruction(alg, scaled_r) == (lambda * lambda) * d_obstruction(alg, r));
    CHECK(s_obstruction(alg, scaled_r) == (lambda * lambda) * s_obstruction(alg, r));
  }
}

TEST_CASE("ppybe verdicts on the dim-2 family") {
  auto r = r_e11_q();
  SECTION("a=0,b=1,c=0 solves the PPYBE") {
    auto alg = family_dim2_q(0, 1, 0);
    auto v = check_ppybe(alg, r);
    CHECK(v.symmetric);
    CHECK(v.d_zero);
    CHECK(v.s_zero);
    CHECK(v.ppybe);
  }
  SECTION("a=1 breaks the D-equation") {
    auto alg = family_dim2_q(1, 1, 0);
    auto v = check_ppybe(alg, r);
    CHECK(!v.d_zero);
    CHECK(!v.ppybe);
  }
  SECTION("an invalid algebra is rejected") {
    Algebra<Rational> bad(1, FieldDescriptor::rationals());
    bad.add_table("zinbiel")(0, 0, 0) = Rational(1);
    bad.add_table("prelie");
    RMatrix<Rational> r1(1, 1);
    CHECK_THROWS_AS(check_ppybe(bad, r1), Error);
  }
}

TEST_CASE("coboundary comultiplications") {
  auto r = r_e11_q();
  SECTION("zero r gives zero comultiplications") {
    auto alg = family_dim2_q(1, 1, 1);
    auto [dz, dl] = coboundary_comultiplications(alg, RMatrix<Rational>(2, 2));
    CHECK(dz.is_zero());
    CHECK(dl.is_zero());
  }
  SECTION("the verified solution gives delta = 0 and a frozen nonzero pre-Lie part") {
    auto alg = family_dim2_q(0, 1, 0);
    auto [dz, dl] = coboundary_comultiplications(alg, r);
    CHECK(dz.is_zero());  // the Zinbiel product vanishes at a = 0
    // hand application of the regular maps: δ(e1) = e1⊗e1, δ(e2) = e2⊗e1
    Tensor3<Rational> want(2, 2, 2);
    want(0, 0, 0) = Rational(1);
    want(1, 1, 0) = Rational(1);
    CHECK(dl == want);
    // the full pair passes the bialgebra check
    auto data = coboundary_bialgebra(alg, r);
    CHECK(check_bialgebra(BialgebraKind::prepoisson, data).passed);
  }
}

TEST_CASE("CA obstructions") {
  SECTION("zero r vanishes everywhere") {
    auto alg = family_dim2_q(1, 1, 1);
    RMatrix<Rational> r(2, 2);
    for (std::size_t x = 0; x < 2; ++x) {
      CHECK(ca1_obstruction(alg, r, x).is_zero());
      CHECK(ca2_obstruction(alg, r, x).is_zero());
      for (std::size_t y = 0; y < 2; ++y) {
        CHECK(ca3_obstruction(alg, r, x, y).is_zero());
        CHECK(ca4_obstruction(alg, r, x, y).is_zero());
      }
    }
  }

  SECTION("verified symmetric solutions kill all four obstructions") {
    auto alg = family_dim2_f(0, 1, 0, 3);
    auto sols = search_solutions(alg);
    REQUIRE(!sols.empty());
    for (const auto& r : sols)
      for (std::size_t x = 0; x < 2; ++x) {
        CHECK(ca1_obstruction(alg, r, x).is_zero());
        CHECK(ca2_obstruction(alg, r, x).is_zero());
        for (std::size_t y = 0; y < 2; ++y) {
          CHECK(ca3_obstruction(alg, r, x, y).is_zero());
          CHECK(ca4_obstruction(alg, r, x, y).is_zero());
        }
      }
  }

  SECTION("CA vanishing against the direct compatibility checks, pointwise") {
    // the first, third and fourth obstruction expressions characterize their
    // compatibility condition exactly; the second one, transcribed as
    // printed, is weaker on non-symmetric r — the disagreement is counted
    // and surfaced rather than patched
    SplitMix64 rng(707);
    auto f3 = FieldDescriptor::fp(3);
    std::size_t interesting = 0, ca2_disagree = 0, ca2_total = 0;
    for (int trial = 0; trial < 150; ++trial) {
      auto alg = prepoisson_pool_dim2(3, 1, 4000 + trial)[0];
      auto r = random_matrix<Fp>(rng, f3, 2, 2, 0.4);
      auto data = coboundary_bialgebra(alg, r);
      auto co = check_coalgebra(CoalgebraKind::prepoisson, data.delta_zinbiel, &data.delta_prelie);
      auto bi = check_bialgebra(BialgebraKind::prepoisson, data);
      for (std::size_t x = 0; x < 2; ++x) {
        bool ca1_zero = ca1_obstruction(alg, r, x).is_zero();
        bool ca2_zero = ca2_obstruction(alg, r, x).is_zero();
        bool direct1 = true, direct2 = true;
        for (const auto& w : co.witnesses) {
          if (w.id == "coalg.mix.1" && w.at == std::vector<int>{static_cast<int>(x) + 1})
            direct1 = false;
          if (w.id == "coalg.mix.2" && w.at == std::vector<int>{static_cast<int>(x) + 1})
            direct2 = false;
        }
        REQUIRE(co.failure_count == co.witnesses.size());  // under the cap here
        CHECK(ca1_zero == direct1);
        ++ca2_total;
        if (ca2_zero != direct2) {
          ++ca2_disagree;
          // the printed expression only ever under-rejects
          CHECK(ca2_zero);
          CHECK(!direct2);
        }
        if (!ca1_zero || !direct2) ++interesting;
        for (std::size_t y = 0; y < 2; ++y) {
          bool ca3_zero = ca3_obstruction(alg, r, x, y).is_zero();
          bool ca4_zero = ca4_obstruction(alg, r, x, y).is_zero();
          bool direct3 = true, direct4 = true;
          std::vector<int> at{static_cast<int>(x) + 1, static_cast<int>(y) + 1};
          for (const auto& w : bi.witnesses) {
            if (w.id == "bialg.mix.4" && w.at == at) direct3 = false;  // mix.4 is the circ-side
            if (w.id == "bialg.mix.3" && w.at == at) direct4 = false;  // mix.3 is the ast-side
          }
          if (bi.failure_count == bi.witnesses.size()) {
            CHECK(ca3_zero == direct3);
            CHECK(ca4_zero == direct4);
          }
        }
      }
    }
    INFO("nonzero obstructions: " << interesting << ", second-expression disagreements: "
                                  << ca2_disagree << "/" << ca2_total);
    CHECK(interesting > 0);
    CHECK(ca2_disagree > 0);  // documents the defect in the printed expression
  }

  SECTION("on symmetric solutions every obstruction route gives zero") {
    // with r − τ(r) = 0 and both tensor obstructions zero, all four
    // expressions vanish term by term, whatever their index irregularities
    auto alg = family_dim2_f(2, 1, 2, 3);
    auto sols = search_solutions(alg);
    REQUIRE(!sols.empty());
    for (const auto& r : sols)
      for (std::size_t x = 0; x < 2; ++x) {
        CHECK(ca1_obstruction(alg, r, x).is_zero());
        CHECK(ca2_obstruction(alg, r, x).is_zero());
      }
  }

  SECTION("the two unconditioned compatibilities hold for every coboundary pair") {
    SplitMix64 rng(808);
    auto f3 = FieldDescriptor::fp(3);
    for (int trial = 0; trial < 120; ++trial) {
      auto alg = prepoisson_pool_dim2(3, 1, 6000 + trial)[0];
      auto r = random_matrix<Fp>(rng, f3, 2, 2, 0.4);
      auto data = coboundary_bialgebra(alg, r);
      auto bi = check_bialgebra(BialgebraKind::prepoisson, data);
      CHECK(bi.failures_for("bialg.mix.1") == 0);
      CHECK(bi.failures_for("bialg.mix.2") == 0);
    }
  }
}

TEST_CASE("solution search") {
  SECTION("r = 0 is always found") {
    auto alg = family_dim2_f(1, 1, 1, 3);
    auto sols = search_solutions(alg);
    bool has_zero = false;
    for (const auto& r : sols) has_zero = has_zero || r.is_zero();
    CHECK(has_zero);
  }

  SECTION("exhaustive scan on the a=0,b=1,c=0 family finds e1⊗e1") {
    auto alg = family_dim2_f(0, 1, 0, 3);
    auto sols = search_solutions(alg);
    bool has_e11 = false;
    for (const auto& r : sols) {
      // every returned solution satisfies the constraints by construction
      auto v = check_ppybe(alg, r);
      CHECK(v.ppybe);
      CHECK(v.symmetric);
      RMatrix<Fp> e11(2, 2);
      e11(0, 0) = Fp::make(1, 3);
      has_e11 = has_e11 || r == e11;
    }
    CHECK(has_e11);
  }

  SECTION("randomized mode is reproducible and verified") {
    auto alg = family_dim2_f(0, 1, 0, 3);
    SearchOptions opts;
    opts.exhaustive = false;
    opts.seed = 99;
    opts.samples = 500;
    auto a = search_solutions(alg, opts);
    auto b = search_solutions(alg, opts);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }

  SECTION("every found solution yields a passing coboundary bialgebra") {
    auto alg = family_dim2_f(0, 1, 0, 3);
    auto sols = search_solutions(alg);
    REQUIRE(!sols.empty());
    for (const auto& r : sols) {
      auto data = coboundary_bialgebra(alg, r);
      CHECK(check_bialgebra(BialgebraKind::prepoisson, data).passed);
      auto four = check_equivalent_characterizations(data);
      CHECK(four.agree);
      CHECK(four.bialgebra);
    }
  }

  SECTION("the exhaustive bound is enforced") {
    auto alg = family_dim2_f(0, 1, 0, 251);
    SearchOptions opts;
    opts.symmetric_only = false;  // 251^4 ≈ 4·10^9 points
    CHECK_THROWS_AS(search_solutions(alg, opts), Error);
  }
}
