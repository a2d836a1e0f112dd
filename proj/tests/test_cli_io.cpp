#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "ppk/cli.hpp"
#include "support.hpp"

using namespace ppk;
using namespace ppk::testing;

namespace {
const std::string fixtures = PPK_FIXTURES_DIR;
std::string fx(const std::string& name) { return fixtures + "/" + name; }

std::string write_temp(const std::string& name, const Json& j) {
  std::string path = std::string("/tmp/ppk_test_") + name;
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}
}  // namespace

TEST_CASE("document parsing") {
  SECTION("minimal zero algebra") {
    Json j{{"dim", 1}, {"field", Json{{"kind", "rationals"}}}};
    auto a = parse_algebra<Rational>(j);
    CHECK(a.dim == 1);
    CHECK(a.tables.empty());
  }
  SECTION("shape errors name the offending path") {
    Json j = load_json_file(fx("dim2_family.json"));
    j["tables"]["zinbiel"][0][1] = Json::array({"0", "0", "0"});
    try {
      parse_algebra<Rational>(j);
      FAIL("expected a shape error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("tables.zinbiel[0][1]") != std::string::npos);
    }
  }
  SECTION("non-prime modulus is rejected") {
    Json j{{"dim", 1}, {"field", Json{{"kind", "fp"}, {"p", 6}}}};
    CHECK_THROWS_AS(parse_algebra<Fp>(j), Error);
  }
  SECTION("scalar parse failures are rejected") {
    Json j{{"dim", 1},
           {"field", Json{{"kind", "rationals"}}},
           {"tables", Json{{"zinbiel", Json::array({Json::array({Json::array({"x"})})})}}}};
    CHECK_THROWS_AS(parse_algebra<Rational>(j), Error);
  }
  SECTION("unknown table names are rejected") {
    Json j{{"dim", 1},
           {"field", Json{{"kind", "rationals"}}},
           {"tables", Json{{"mystery", Json::array({Json::array({Json::array({"1"})})})}}}};
    CHECK_THROWS_AS(parse_algebra<Rational>(j), Error);
  }
  SECTION("the dim-2 family fixture parses and passes") {
    Json j = load_json_file(fx("dim2_family.json"));
    auto a = parse_algebra<Rational>(j);
    CHECK(check_identities(a, IdentitySystem::PREPOISSON).passed);
  }
  SECTION("algebra documents round trip") {
    auto a = family_dim2_f(1, 2, 1, 5);
    auto b = parse_algebra<Fp>(algebra_to_json(a));
    CHECK(b.table("zinbiel") == a.table("zinbiel"));
    CHECK(b.table("prelie") == a.table("prelie"));
  }
}

TEST_CASE("cli commands") {
  SECTION("the dim-2 family fixture passes the pre-Poisson check with exit 0") {
    auto rep = run_command({"check", "--kind", "prepoisson", fx("dim2_family.json")});
    CHECK(rep.exit_code == 0);
    CHECK(rep.body["status"] == "ok");
  }
  SECTION("the dim-1 idempotent algebra fails with witness (1,1,1) and exit 1") {
    auto rep = run_command({"check", "--kind", "zinbiel", fx("dim1_lambda1.json")});
    CHECK(rep.exit_code == 1);
    auto& w = rep.body["checks"][0]["witnesses"][0];
    CHECK(w["at"] == Json::array({1, 1, 1}));
  }
  SECTION("unknown subcommand exits 2") {
    auto rep = run_command({"frobnicate"});
    CHECK(rep.exit_code == 2);
    CHECK(rep.body["status"] == "input-error");
  }
  SECTION("missing file exits 2") {
    auto rep = run_command({"check", "--kind", "zinbiel", "/nonexistent.json"});
    CHECK(rep.exit_code == 2);
  }
  SECTION("the verified solution satisfies the ppybe check") {
    auto rep = run_command(
        {"ybe", "check", "--algebra", fx("ex_a0b1c0.json"), "--r", fx("r_e11.json")});
    CHECK(rep.exit_code == 0);
    CHECK(rep.body["results"]["ppybe"] == true);
    CHECK(rep.body["results"]["symmetric"] == true);
  }
  SECTION("coboundary emits a bialgebra document that re-parses") {
    std::string out = "/tmp/ppk_test_emitted_bialgebra.json";
    auto rep = run_command({"ybe", "coboundary", "--algebra", fx("ex_a0b1c0.json"), "--r",
                            fx("r_e11.json"), "--emit", out});
    REQUIRE(rep.exit_code == 0);
    auto data = parse_bialgebra<Fp>(load_json_file(out));
    CHECK(check_bialgebra(BialgebraKind::prepoisson, data).passed);
  }
  SECTION("extending verify runs both strategies on a datum document") {
    auto alg = family_dim2_q(1, 1, 1);
    ExtendingDatum<Rational> d(2, 1);
    std::string path = write_temp("datum.json", extending_to_json(alg, d));
    auto rep = run_command({"extending", "verify", "--strategy", "both", path});
    CHECK(rep.exit_code == 0);
    REQUIRE(rep.body["checks"].size() == 2);
  }
  SECTION("extending extract emits a datum that rebuilds") {
    auto alg = family_dim2_q(1, 1, 1);
    std::string path = write_temp("ambient.json", algebra_to_json(alg));
    auto rep = run_command({"extending", "extract", "--a-part", "1", path});
    REQUIRE(rep.exit_code == 0);
    auto [a, d] = parse_extending<Rational>(rep.body["results"]["datum"]);
    CHECK(a.dim == 1);
    CHECK(d.dim_v == 1);
    CHECK(build_unified_product(a, d).dim == 2);
  }
  SECTION("flag enumerate over F2") {
    Json adoc{{"dim", 1},
              {"field", Json{{"kind", "fp"}, {"p", 2}}},
              {"tables", Json{{"zinbiel", Json::array({Json::array({Json::array({"0"})})})}}}};
    std::string path = write_temp("flag_base.json", adoc);
    auto rep = run_command({"flag", "enumerate", "--kind", "zinbiel", "--algebra", path,
                            "--field", "f2", "--bucket"});
    REQUIRE(rep.exit_code == 0);
    CHECK(rep.body["results"]["passing"].get<std::size_t>() > 0);
    CHECK(rep.body["results"]["buckets"].get<std::size_t>() > 0);
  }
  SECTION("gen is reproducible through the CLI") {
    auto a = run_command({"gen", "--seed", "7", "--dim", "2", "--field", "f5", "--count", "3"});
    auto b = run_command({"gen", "--seed", "7", "--dim", "2", "--field", "f5", "--count", "3"});
    CHECK(a.body["results"] == b.body["results"]);
  }
}

TEST_CASE("report determinism") {
  auto once = run_command({"check", "--kind", "prepoisson", fx("dim2_family.json")});
  auto twice = run_command({"check", "--kind", "prepoisson", fx("dim2_family.json")});
  CHECK(once.render() == twice.render());
  // a failing run is deterministic too, including witness order
  auto f1 = run_command({"check", "--kind", "zinbiel", fx("dim1_lambda1.json")});
  auto f2 = run_command({"check", "--kind", "zinbiel", fx("dim1_lambda1.json")});
  CHECK(f1.render() == f2.render());
  // search output is deterministic
  auto s1 = run_command({"ybe", "search", "--algebra", fx("ex_a0b1c0.json"), "--field", "f3",
                         "--symmetric", "--exhaustive"});
  auto s2 = run_command({"ybe", "search", "--algebra", fx("ex_a0b1c0.json"), "--field", "f3",
                         "--symmetric", "--exhaustive"});
  CHECK(s1.render() == s2.render());
  CHECK(s1.exit_code == 0);
}

TEST_CASE("text format is a human summary") {
  auto rep = run_command({"check", "--kind", "prepoisson", fx("dim2_family.json"),
                          "--format", "text"});
  CHECK(rep.render().find("pass") != std::string::npos);
}

TEST_CASE("bialgebra check alias with group breakdown") {
  auto alg = family_dim2_f(0, 1, 0, 3);
  RMatrix<Fp> r(2, 2);
  r(0, 0) = Fp::make(1, 3);
  auto data = coboundary_bialgebra(alg, r);
  std::string path = write_temp("bialgebra.json", bialgebra_to_json(data));
  auto rep = run_command({"bialgebra", "check", path, "--kind", "prepoisson", "--explain"});
  CHECK(rep.exit_code == 0);
  REQUIRE(rep.body["results"].contains("groups"));
  for (const auto& [name, group] : rep.body["results"]["groups"].items())
    CHECK(group["passed"] == true);
}

TEST_CASE("PPK_THREADS does not change results") {
  auto run = [&] {
    return run_command({"ybe", "search", "--algebra", fx("ex_a0b1c0.json"), "--symmetric",
                        "--exhaustive"});
  };
  auto base = run();
  setenv("PPK_THREADS", "4", 1);
  auto par = run();
  unsetenv("PPK_THREADS");
  CHECK(base.render() == par.render());
}

TEST_CASE("extending equiv through the CLI") {
  auto alg = family_dim2_q(1, 1, 1);
  ExtendingDatum<Rational> d(2, 1);
  d.f(0, 0, 0) = Rational(1);
  Json pair{{"datum", extending_to_json(alg, d)},
            {"datum2", extending_to_json(alg, d)},
            {"zeta", Json::array({Json::array({"0"}), Json::array({"0"})})},
            {"eta", Json::array({Json::array({"1"})})}};
  std::string path = write_temp("equiv.json", pair);
  auto rep = run_command({"extending", "equiv", path});
  CHECK(rep.exit_code == 0);
  CHECK(rep.body["results"]["cohomologous"] == true);
  CHECK(rep.body["results"]["routes_agree"] == true);

  // a non-invertible eta is a homomorphism question, not an equivalence
  pair["eta"] = Json::array({Json::array({"0"})});
  pair["zeta"] = Json::array({Json::array({"0"}), Json::array({"0"})});
  path = write_temp("equiv2.json", pair);
  auto rep2 = run_command({"extending", "equiv", path});
  CHECK(rep2.body["results"]["equivalent"] == false);
}
