#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "ppk/generators.hpp"
#include "ppk/json_io.hpp"

namespace ppk {

/// Outcome of one CLI invocation. Exit status: 0 when every normative check
/// passed, 1 when a check failed, 2 on input or usage errors. The JSON body
/// is byte-deterministic for identical inputs (no timestamps, sorted keys).
struct RunReport {
  Json body = Json::object();
  int exit_code = 0;
  std::string format = "json";

  std::string render() const;
};

namespace detail {

inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Fn>
decltype(auto) with_scalar(const FieldDescriptor& f, Fn&& fn) {
  if (f.kind == FieldKind::rationals) return fn(std::type_identity<Rational>{});
  return fn(std::type_identity<Fp>{});
}

inline FieldDescriptor parse_field_flag(const std::string& s) {
  if (s == "rationals" || s == "q") return FieldDescriptor::rationals();
  if (s.size() >= 2 && s[0] == 'f') return FieldDescriptor::fp(std::stoul(s.substr(1)));
  throw Error("unknown field '" + s + "' (expected rationals or f<p>)");
}

struct Ctx {
  Json body;
  bool any_failed = false;

  explicit Ctx(const std::vector<std::string>& args) {
    body["command"] = args;
    body["inputs"] = Json::object();
    body["checks"] = Json::array();
    body["warnings"] = Json::array();
    body["results"] = Json::object();
  }

  Json load(const std::string& path) {
    std::string bytes = slurp(path);
    body["inputs"][path] = fnv1a_hex(bytes);
    Json j;
    try {
      j = Json::parse(bytes);
    } catch (const std::exception& e) {
      throw Error("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
  }

  template <class S>
  void add_check(const std::string& name, const CheckReport<S>& r) {
    body["checks"].push_back(check_report_to_json(r, name));
    for (const auto& w : r.warnings) body["warnings"].push_back(w);
    any_failed = any_failed || !r.passed;
  }

  template <class S>
  void add_strategy(const std::string& name, const StrategyReport<S>& r) {
    if (r.axiomatic) add_check(name + ".axiomatic", *r.axiomatic);
    if (r.itemized) {
      // the itemized route is informative; only the normative verdict can fail the run
      Json j = check_report_to_json(*r.itemized, name + ".itemized");
      body["checks"].push_back(std::move(j));
      if (!r.axiomatic) any_failed = any_failed || !r.itemized->passed;
    }
    for (const auto& w : r.warnings) body["warnings"].push_back(w);
  }

  RunReport finish(const std::string& format) {
    RunReport out;
    out.format = format;
    body["status"] = any_failed ? "check-failed" : "ok";
    out.exit_code = any_failed ? 1 : 0;
    body["exit"] = out.exit_code;
    out.body = std::move(body);
    return out;
  }
};

}  // namespace detail

inline std::string RunReport::render() const {
  if (format == "json") return body.dump(2) + "\n";
  // text: a short human summary; the JSON body remains the contract
  std::ostringstream out;
  out << "status: " << body.value("status", std::string("error")) << "\n";
  if (body.contains("error")) out << "error: " << body["error"].get<std::string>() << "\n";
  if (body.contains("checks"))
    for (const auto& c : body["checks"]) {
      out << (c["passed"].get<bool>() ? "  pass  " : "  FAIL  ") << c["name"].get<std::string>();
      if (c["failures"].get<std::size_t>() > 0) out << "  (" << c["failures"] << " failures)";
      out << "\n";
    }
  if (body.contains("warnings"))
    for (const auto& w : body["warnings"]) out << "  warn  " << w.get<std::string>() << "\n";
  if (body.contains("results") && !body["results"].empty())
    out << "results: " << body["results"].dump() << "\n";
  return out.str();
}

/// Parse and execute one command line. Never throws: errors land in the
/// report with exit code 2.
inline RunReport run_command(const std::vector<std::string>& args) {
  using detail::Ctx;
  using detail::with_scalar;

  CLI::App app{"structure-constant workbench for pre-Poisson algebras"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  std::string kind = "prepoisson";
  std::string strategy = "axiomatic";
  std::string file, file2, algebra_file, r_file, emit_file, field_flag, a_part, tables_flag;
  bool co_only = false, bucket = false, symmetric = true, exhaustive = true;
  std::uint64_t seed = 0;
  std::size_t samples = 10000, count = 1, dim = 2, limit = 100;
  double sparsity = 0.5;
  std::string constraint = "ppybe";

  auto* check_cmd = app.add_subcommand("check", "run an identity system on a document");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--kind", kind);
  check_cmd->add_flag("--co", co_only, "check only the coalgebra half of a bialgebra document");

  auto* extending = app.add_subcommand("extending", "extending structures");
  auto* ext_verify = extending->add_subcommand("verify");
  ext_verify->add_option("file", file)->required();
  ext_verify->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"axiomatic", "itemized", "both"}));
  ext_verify->add_option("--kind", kind);
  auto* ext_extract = extending->add_subcommand("extract");
  ext_extract->add_option("file", file)->required();
  ext_extract->add_option("--a-part", a_part)->required();
  ext_extract->add_option("--emit", emit_file);
  auto* ext_equiv = extending->add_subcommand("equiv");
  ext_equiv->add_option("file", file)->required();

  auto* crossed = app.add_subcommand("crossed", "crossed systems");
  auto* cr_verify = crossed->add_subcommand("verify");
  cr_verify->add_option("file", file)->required();
  cr_verify->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"axiomatic", "itemized", "both"}));
  auto* cr_build = crossed->add_subcommand("build");
  cr_build->add_option("file", file)->required();
  cr_build->add_option("--emit", emit_file);

  auto* matched = app.add_subcommand("matched", "matched pairs");
  auto* mp_verify = matched->add_subcommand("verify");
  mp_verify->add_option("file", file)->required();
  mp_verify->add_option("--kind", kind);
  mp_verify->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"axiomatic", "itemized", "both"}));
  auto* mp_build = matched->add_subcommand("build");
  mp_build->add_option("file", file)->required();
  mp_build->add_option("--kind", kind);
  mp_build->add_option("--emit", emit_file);

  auto* flag = app.add_subcommand("flag", "dim-1 extending structures");
  auto* fl_verify = flag->add_subcommand("verify");
  fl_verify->add_option("file", file)->required();
  fl_verify->add_option("--kind", kind);
  auto* fl_enum = flag->add_subcommand("enumerate");
  fl_enum->add_option("--algebra", algebra_file)->required();
  fl_enum->add_option("--kind", kind);
  fl_enum->add_option("--field", field_flag);
  fl_enum->add_flag("--bucket", bucket);
  fl_enum->add_option("--limit", limit);

  auto* ybe = app.add_subcommand("ybe", "Yang-Baxter-type equations");
  auto* ybe_check = ybe->add_subcommand("check");
  ybe_check->add_option("--algebra", algebra_file)->required();
  ybe_check->add_option("--r", r_file)->required();
  auto* ybe_search = ybe->add_subcommand("search");
  ybe_search->add_option("--algebra", algebra_file)->required();
  ybe_search->add_option("--field", field_flag);
  ybe_search->add_flag("--symmetric,!--all", symmetric);
  ybe_search->add_flag("--exhaustive,!--randomized", exhaustive);
  ybe_search->add_option("--seed", seed);
  ybe_search->add_option("--samples", samples);
  ybe_search->add_option("--constraint", constraint)
      ->check(CLI::IsMember({"ppybe", "d-only", "s-only"}));
  ybe_search->add_option("--limit", limit);
  auto* ybe_cob = ybe->add_subcommand("coboundary");
  ybe_cob->add_option("--algebra", algebra_file)->required();
  ybe_cob->add_option("--r", r_file)->required();
  ybe_cob->add_option("--emit", emit_file);

  bool explain = false;
  auto* bialg = app.add_subcommand("bialgebra", "bialgebra checks");
  auto* bialg_check = bialg->add_subcommand("check");
  bialg_check->add_option("file", file)->required();
  bialg_check->add_option("--kind", kind);
  bialg_check->add_flag("--explain", explain, "report pass/fail per condition group");

  auto* dbl = app.add_subcommand("double", "the double of a bialgebra");
  auto* dbl_build = dbl->add_subcommand("build");
  dbl_build->add_option("file", file)->required();
  dbl_build->add_option("--emit", emit_file);

  auto* gen = app.add_subcommand("gen", "deterministic instance generator");
  gen->add_option("--seed", seed);
  gen->add_option("--dim", dim);
  gen->add_option("--field", field_flag);
  gen->add_option("--sparsity", sparsity);
  gen->add_option("--count", count);
  gen->add_option("--tables", tables_flag);

  // let --format (and other global flags) appear after a subcommand
  auto enable_fallthrough = [](CLI::App* node, auto&& self) -> void {
    for (CLI::App* sub : node->get_subcommands({})) {
      sub->fallthrough();
      self(sub, self);
    }
  };
  enable_fallthrough(&app, enable_fallthrough);

  Ctx ctx(args);
  try {
    std::vector<const char*> argv;
    argv.push_back("ppk");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      throw Error(std::string("usage: ") + e.what());
    }

    if (check_cmd->parsed()) {
      Json doc = ctx.load(file);
      FieldDescriptor field = parse_field(doc.contains("field") ? doc.at("field")
                                                                : doc.at("base").at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        if (doc.contains("maps") && doc.contains("repdim")) {
          Representation<S> rep = parse_representation<S>(doc);
          ctx.add_check("representation." + to_string(rep.kind), check_representation(rep));
        } else if (doc.contains("delta_zinbiel") || doc.contains("delta_prelie")) {
          BialgebraData<S> data = parse_bialgebra<S>(doc);
          BialgebraKind bk = kind == "zinbiel"  ? BialgebraKind::zinbiel
                             : kind == "prelie" ? BialgebraKind::prelie
                                                : BialgebraKind::prepoisson;
          if (co_only) {
            CoalgebraKind ck = kind == "zinbiel"  ? CoalgebraKind::zinbiel
                               : kind == "prelie" ? CoalgebraKind::prelie
                                                  : CoalgebraKind::prepoisson;
            const Comultiplication<S>& first =
                ck == CoalgebraKind::prelie ? data.delta_prelie : data.delta_zinbiel;
            ctx.add_check("coalgebra." + kind,
                          check_coalgebra(ck, first,
                                          ck == CoalgebraKind::prepoisson ? &data.delta_prelie
                                                                          : nullptr));
          } else {
            ctx.add_check("bialgebra." + kind, check_bialgebra(bk, data));
          }
        } else {
          Algebra<S> alg = parse_algebra<S>(doc);
          ctx.add_check(kind, check_identities(alg, identity_system_from_string(kind)));
        }
      });
    } else if (ext_verify->parsed()) {
      Json doc = ctx.load(file);
      FieldDescriptor field = parse_field(doc.at("algebra").at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        auto [a, d] = parse_extending<S>(doc);
        ctx.add_strategy("extending",
                         verify_extending_structure(a, d, extending_kind_from_string(kind),
                                                    strategy_from_string(strategy)));
      });
    } else if (ext_extract->parsed()) {
      Json doc = ctx.load(file);
      FieldDescriptor field = parse_field(doc.at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        Algebra<S> e = parse_algebra<S>(doc);
        BasisSplit split;
        std::stringstream ss(a_part);
        for (std::string part; std::getline(ss, part, ',');)
          split.a_part.push_back(std::stoul(part));
        std::vector<bool> in_a(e.dim, false);
        for (auto i : split.a_part) {
          if (i >= e.dim) throw Error("--a-part index out of range");
          in_a[i] = true;
        }
        for (std::size_t i = 0; i < e.dim; ++i)
          if (!in_a[i]) split.v_part.push_back(i);
        auto [a, d] = extract_datum(e, split);
        Json out = extending_to_json(a, d);
        ctx.body["results"]["datum"] = out;
        if (!emit_file.empty()) {
          std::ofstream of(emit_file);
          of << out.dump(2) << "\n";
        }
      });
    } else if (ext_equiv->parsed()) {
      Json doc = ctx.load(file);
      FieldDescriptor field = parse_field(doc.at("datum").at("algebra").at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        auto [a, d] = parse_extending<S>(doc.at("datum"));
        auto [a2, d2] = parse_extending<S>(doc.at("datum2"));
        (void)a2;
        MorphismPair<S> pair;
        pair.zeta = parse_matrix<S>(doc.at("zeta"), field, d.dim_a, d.dim_v, "zeta");
        pair.eta = parse_matrix<S>(doc.at("eta"), field, d.dim_v, d.dim_v, "eta");
        auto v = check_morphism_pair(a, d, d2, pair);
        ctx.body["results"] = Json{{"homomorphism", v.homomorphism},
                                   {"isomorphism", v.isomorphism},
                                   {"equivalent", v.equivalent},
                                   {"cohomologous", v.cohomologous},
                                   {"routes_agree", v.routes_agree},
                                   {"failing", v.failing}};
        ctx.any_failed = !v.equivalent;
      });
    } else if (cr_verify->parsed() || cr_build->parsed()) {
      Json doc = ctx.load(file);
      FieldDescriptor field = parse_field(doc.at("algebra").at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        auto [a, d] = parse_extending<S>(doc);
        auto cs = CrossedSystem<S>::from_datum(std::move(d));
        if (cr_verify->parsed()) {
          ctx.add_strategy("crossed", verify_crossed_system(a, cs, strategy_from_string(strategy)));
        } else {
          Algebra<S> product = build_crossed_product(a, cs);
          Json out = algebra_to_json(product);
          ctx.body["results"]["product"] = out;
          if (!emit_file.empty()) {
            std::ofstream of(emit_file);
            of << out.dump(2) << "\n";
          }
        }
      });
    } else if (mp_verify->parsed() || mp_build->parsed()) {
      Json doc = ctx.load(file);
      FieldDescriptor field = parse_field(doc.at("a1").at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        MatchedPairData<S> mp = parse_matched_pair<S>(doc);
        MatchedPairKind mk = matched_pair_kind_from_string(kind);
        if (mp_verify->parsed()) {
          ctx.add_strategy("matched", verify_matched_pair(mp, mk, strategy_from_string(strategy)));
        } else {
          Algebra<S> product = build_bicrossed(mp, mk);
          Json out = algebra_to_json(product);
          ctx.body["results"]["product"] = out;
          if (!emit_file.empty()) {
            std::ofstream of(emit_file);
            of << out.dump(2) << "\n";
          }
        }
      });
    } else if (fl_verify->parsed()) {
      Json doc = ctx.load(file);
      FieldDescriptor field = parse_field(doc.at("algebra").at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        auto [a, fd] = parse_flag_datum<S>(doc);
        ctx.add_check("flag." + kind, verify_flag_datum(a, fd, flag_kind_from_string(kind)));
      });
    } else if (fl_enum->parsed()) {
      Json doc = ctx.load(algebra_file);
      FieldDescriptor field = parse_field(doc.at("field"));
      if (!field_flag.empty() && detail::parse_field_flag(field_flag) != field)
        throw Error("--field disagrees with the algebra document");
      if (field.kind != FieldKind::prime) throw Error("flag enumeration needs a prime field");
      Algebra<Fp> a = parse_algebra<Fp>(doc);
      FlagEnumeration en = enumerate_flag_datums(a, flag_kind_from_string(kind), bucket);
      Json datums = Json::array();
      for (std::size_t i = 0; i < en.passing.size() && i < limit; ++i)
        datums.push_back(flag_datum_to_json(en.passing[i]));
      ctx.body["results"] = Json{{"passing", en.passing.size()}, {"datums", std::move(datums)}};
      if (bucket) {
        ctx.body["results"]["buckets"] = en.bucket_count;
        Json assignment = Json::array();
        for (std::size_t i = 0; i < en.bucket_of.size() && i < limit; ++i)
          assignment.push_back(en.bucket_of[i]);
        ctx.body["results"]["bucket_of"] = std::move(assignment);
      }
    } else if (ybe_check->parsed() || ybe_cob->parsed()) {
      Json adoc = ctx.load(algebra_file);
      Json rdoc = ctx.load(r_file);
      FieldDescriptor field = parse_field(adoc.at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        Algebra<S> alg = parse_algebra<S>(adoc);
        RMatrix<S> r = parse_rmatrix<S>(rdoc, field, alg.dim);
        if (ybe_check->parsed()) {
          PpybeVerdict v = check_ppybe(alg, r);
          ctx.body["results"] = Json{{"symmetric", v.symmetric},
                                     {"d_zero", v.d_zero},
                                     {"s_zero", v.s_zero},
                                     {"ppybe", v.ppybe}};
          ctx.any_failed = !v.ppybe;
        } else {
          BialgebraData<S> data = coboundary_bialgebra(alg, r);
          ctx.add_check("bialgebra.prepoisson",
                        check_bialgebra(BialgebraKind::prepoisson, data));
          Json out = bialgebra_to_json(data);
          ctx.body["results"]["bialgebra"] = out;
          if (!emit_file.empty()) {
            std::ofstream of(emit_file);
            of << out.dump(2) << "\n";
          }
        }
      });
    } else if (ybe_search->parsed()) {
      Json adoc = ctx.load(algebra_file);
      FieldDescriptor field = parse_field(adoc.at("field"));
      if (!field_flag.empty() && detail::parse_field_flag(field_flag) != field)
        throw Error("--field disagrees with the algebra document");
      if (field.kind != FieldKind::prime) throw Error("solution search needs a prime field");
      Algebra<Fp> alg = parse_algebra<Fp>(adoc);
      SearchOptions opts;
      opts.symmetric_only = symmetric;
      opts.exhaustive = exhaustive;
      opts.seed = seed;
      opts.samples = samples;
      opts.constraint = constraint == "d-only"   ? SearchConstraint::d_only
                        : constraint == "s-only" ? SearchConstraint::s_only
                                                 : SearchConstraint::ppybe;
      auto sols = search_solutions(alg, opts);
      Json list = Json::array();
      for (std::size_t i = 0; i < sols.size() && i < limit; ++i)
        list.push_back(matrix_to_json(sols[i]));
      ctx.body["results"] = Json{{"found", sols.size()}, {"solutions", std::move(list)}};
    } else if (bialg_check->parsed()) {
      Json doc = ctx.load(file);
      FieldDescriptor field = parse_field(doc.at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        BialgebraData<S> data = parse_bialgebra<S>(doc);
        BialgebraKind bk = kind == "zinbiel"  ? BialgebraKind::zinbiel
                           : kind == "prelie" ? BialgebraKind::prelie
                                              : BialgebraKind::prepoisson;
        CheckReport<S> rep = check_bialgebra(bk, data);
        if (explain) {
          // pass/fail per condition group, keyed by witness-id prefix
          const char* groups[] = {"bialg.alg.", "coalg.", "bialg.zin.", "bialg.pre.",
                                  "bialg.mix."};
          Json detail = Json::object();
          for (const char* g : groups) {
            std::size_t fails = 0;
            for (const auto& [id, c] : rep.failures_by_id)
              if (id.rfind(g, 0) == 0) fails += c;
            detail[g] = Json{{"passed", fails == 0}, {"failures", fails}};
          }
          ctx.body["results"]["groups"] = std::move(detail);
        }
        ctx.add_check("bialgebra." + to_string(bk), rep);
      });
    } else if (dbl_build->parsed()) {
      Json doc = ctx.load(file);
      FieldDescriptor field = parse_field(doc.at("field"));
      with_scalar(field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        BialgebraData<S> data = parse_bialgebra<S>(doc);
        auto [algebra, omega] = double_construction(data);
        Json out{{"algebra", algebra_to_json(algebra)}, {"omega", matrix_to_json(omega.w)}};
        ctx.body["results"]["double"] = out;
        if (!emit_file.empty()) {
          std::ofstream of(emit_file);
          of << out.dump(2) << "\n";
        }
      });
    } else if (gen->parsed()) {
      InstanceGeneratorSpec spec;
      spec.seed = seed;
      spec.dim = dim;
      spec.sparsity = sparsity;
      spec.count = count;
      spec.field = field_flag.empty() ? FieldDescriptor::fp(3)
                                      : detail::parse_field_flag(field_flag);
      if (!tables_flag.empty()) {
        spec.tables.clear();
        std::stringstream ss(tables_flag);
        for (std::string part; std::getline(ss, part, ',');) spec.tables.push_back(part);
      }
      detail::with_scalar(spec.field, [&](auto tag) {
        using S = typename decltype(tag)::type;
        Json list = Json::array();
        for (const auto& alg : generate_instances<S>(spec)) list.push_back(algebra_to_json(alg));
        ctx.body["results"]["instances"] = std::move(list);
      });
    }
  } catch (const Error& e) {
    RunReport out;
    out.format = format;
    ctx.body["status"] = "input-error";
    ctx.body["error"] = e.what();
    ctx.body["exit"] = 2;
    out.body = std::move(ctx.body);
    out.exit_code = 2;
    return out;
  } catch (const std::exception& e) {
    RunReport out;
    out.format = format;
    ctx.body["status"] = "input-error";
    ctx.body["error"] = e.what();
    ctx.body["exit"] = 2;
    out.body = std::move(ctx.body);
    out.exit_code = 2;
    return out;
  }
  return ctx.finish(format);
}

}  // namespace ppk
