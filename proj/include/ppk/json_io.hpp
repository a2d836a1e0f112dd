#pragma once

#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "ppk/algebra.hpp"
#include "ppk/bialgebras.hpp"
#include "ppk/extending.hpp"
#include "ppk/products.hpp"
#include "ppk/representations.hpp"
#include "ppk/yangbaxter.hpp"

namespace ppk {

using Json = nlohmann::json;

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

inline FieldDescriptor parse_field(const Json& j, const std::string& path = "field") {
  if (!j.is_object() || !j.contains("kind"))
    throw Error(path + " must be an object with a \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "rationals") return FieldDescriptor::rationals();
  if (kind == "fp") {
    if (!j.contains("p")) throw Error(path + " of kind fp needs \"p\"");
    return FieldDescriptor::fp(j.at("p").get<std::uint32_t>());
  }
  throw Error(path + ".kind must be \"rationals\" or \"fp\"");
}

inline Json field_to_json(const FieldDescriptor& f) {
  if (f.kind == FieldKind::rationals) return Json{{"kind", "rationals"}};
  return Json{{"kind", "fp"}, {"p", f.modulus}};
}

template <class S>
S parse_scalar_json(const Json& j, const FieldDescriptor& field, const std::string& path) {
  if (j.is_string()) return parse_scalar<S>(j.get<std::string>(), field);
  if (j.is_number_integer()) return parse_scalar<S>(std::to_string(j.get<long>()), field);
  throw Error(path + " must be a scalar string or integer");
}

template <class S>
Json scalar_to_json(const S& v) {
  return Json(v.str());
}

template <class S>
Vec<S> parse_vec(const Json& j, const FieldDescriptor& field, std::size_t len,
                 const std::string& path) {
  if (!j.is_array() || j.size() != len)
    throw Error(path + " must be an array of length " + std::to_string(len));
  Vec<S> v(len);
  for (std::size_t i = 0; i < len; ++i)
    v[i] = parse_scalar_json<S>(j[i], field, path + "[" + std::to_string(i) + "]");
  return v;
}

template <class S>
Json vec_to_json(const Vec<S>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(scalar_to_json(x));
  return j;
}

template <class S>
Matrix<S> parse_matrix(const Json& j, const FieldDescriptor& field, std::size_t rows,
                       std::size_t cols, const std::string& path) {
  if (!j.is_array() || j.size() != rows)
    throw Error(path + " must be an array of " + std::to_string(rows) + " rows");
  Matrix<S> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != cols)
      throw Error(rp + " must be an array of length " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = parse_scalar_json<S>(row[c], field, rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

template <class S>
Json matrix_to_json(const Matrix<S>& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    j.push_back(std::move(row));
  }
  return j;
}

template <class S>
Tensor3<S> parse_tensor3(const Json& j, const FieldDescriptor& field, std::size_t d0,
                         std::size_t d1, std::size_t d2, const std::string& path) {
  if (!j.is_array() || j.size() != d0)
    throw Error(path + " must be an array of length " + std::to_string(d0));
  Tensor3<S> t(d0, d1, d2);
  for (std::size_t i = 0; i < d0; ++i) {
    std::string pi = path + "[" + std::to_string(i) + "]";
    const Json& ji = j[i];
    if (!ji.is_array() || ji.size() != d1)
      throw Error(pi + " must be an array of length " + std::to_string(d1));
    for (std::size_t jj = 0; jj < d1; ++jj) {
      std::string pj = pi + "[" + std::to_string(jj) + "]";
      const Json& jk = ji[jj];
      if (!jk.is_array() || jk.size() != d2)
        throw Error(pj + " must be an array of length " + std::to_string(d2));
      for (std::size_t k = 0; k < d2; ++k)
        t(i, jj, k) = parse_scalar_json<S>(jk[k], field, pj + "[" + std::to_string(k) + "]");
    }
  }
  return t;
}

template <class S>
Json tensor3_to_json(const Tensor3<S>& t) {
  Json j = Json::array();
  for (std::size_t i = 0; i < t.dim(0); ++i) {
    Json ji = Json::array();
    for (std::size_t jj = 0; jj < t.dim(1); ++jj) {
      Json jk = Json::array();
      for (std::size_t k = 0; k < t.dim(2); ++k) jk.push_back(scalar_to_json(t(i, jj, k)));
      ji.push_back(std::move(jk));
    }
    j.push_back(std::move(ji));
  }
  return j;
}

/// Algebra document: {"dim": n, "field": {...}, "tables": {name: [i][j][k]}}.
template <class S>
Algebra<S> parse_algebra(const Json& j, const std::string& path = "") {
  std::string p = path.empty() ? "" : path + ".";
  if (!j.contains("dim")) throw Error(p + "dim is required");
  std::size_t n = j.at("dim").get<std::size_t>();
  if (n == 0) throw Error(p + "dim must be positive");
  FieldDescriptor field = parse_field(j.at("field"), p + "field");
  Algebra<S> a(n, field);
  if (j.contains("tables")) {
    static const char* known[] = {"zinbiel", "prelie", "dendriform_succ",
                                  "dendriform_prec", "commassoc", "lie"};
    for (const auto& [name, table] : j.at("tables").items()) {
      bool ok = false;
      for (const char* k : known) ok = ok || name == k;
      if (!ok) throw Error(p + "tables." + name + " is not a recognized table name");
      a.set_table(name, parse_tensor3<S>(table, field, n, n, n, p + "tables." + name));
    }
  }
  return a;
}

template <class S>
Json algebra_to_json(const Algebra<S>& a) {
  Json tables = Json::object();
  for (const auto& [name, t] : a.tables) tables[name] = tensor3_to_json(t);
  return Json{{"dim", a.dim}, {"field", field_to_json(a.field)}, {"tables", std::move(tables)}};
}

template <class S>
EndoFamily<S> parse_endo_family(const Json& j, const FieldDescriptor& field, std::size_t base,
                                std::size_t rep, const std::string& path) {
  if (!j.is_array() || j.size() != base)
    throw Error(path + " must be an array of " + std::to_string(base) + " matrices");
  EndoFamily<S> f(base, rep);
  for (std::size_t i = 0; i < base; ++i)
    f.at(i) = parse_matrix<S>(j[i], field, rep, rep, path + "[" + std::to_string(i) + "]");
  return f;
}

template <class S>
Json endo_family_to_json(const EndoFamily<S>& f) {
  Json j = Json::array();
  for (const auto& m : f.mats) j.push_back(matrix_to_json(m));
  return j;
}

/// Representation document: {"kind", "base": <algebra>, "repdim", "maps"}.
template <class S>
Representation<S> parse_representation(const Json& j) {
  Representation<S> rep;
  rep.kind = rep_kind_from_string(j.at("kind").get<std::string>());
  rep.base = parse_algebra<S>(j.at("base"), "base");
  rep.rep_dim = j.at("repdim").get<std::size_t>();
  const Json& maps = j.at("maps");
  auto want = [&](const char* name) {
    if (!maps.contains(name)) throw Error(std::string("maps.") + name + " is required");
    return parse_endo_family<S>(maps.at(name), rep.base.field, rep.base.dim, rep.rep_dim,
                                std::string("maps.") + name);
  };
  switch (rep.kind) {
    case RepKind::zinbiel:
      rep.maps = {{"l", want("l")}, {"r", want("r")}};
      break;
    case RepKind::prelie:
      rep.maps = {{"rho", want("rho")}, {"mu", want("mu")}};
      break;
    case RepKind::poisson:
      rep.maps = {{"f", want("f")}, {"g", want("g")}};
      break;
    case RepKind::prepoisson:
      rep.maps = {{"l", want("l")}, {"r", want("r")}, {"rho", want("rho")}, {"mu", want("mu")}};
      break;
  }
  return rep;
}

/// Extending datum document: {"algebra": <algebra>, "dim_v": q, "maps":
/// {l1,r1,rho1,mu1,l2,r2,rho2,mu2}, "f", "g", "star2", "circ2"}; omitted
/// pieces default to zero.
template <class S>
std::pair<Algebra<S>, ExtendingDatum<S>> parse_extending(const Json& j) {
  Algebra<S> a = parse_algebra<S>(j.at("algebra"), "algebra");
  std::size_t q = j.at("dim_v").get<std::size_t>();
  if (q == 0) throw Error("dim_v must be positive");
  ExtendingDatum<S> d(a.dim, q);
  const FieldDescriptor& field = a.field;
  if (j.contains("maps")) {
    const Json& maps = j.at("maps");
    auto opt_a = [&](const char* name, EndoFamily<S>& dst) {
      if (maps.contains(name))
        dst = parse_endo_family<S>(maps.at(name), field, a.dim, q, std::string("maps.") + name);
    };
    auto opt_v = [&](const char* name, EndoFamily<S>& dst) {
      if (maps.contains(name))
        dst = parse_endo_family<S>(maps.at(name), field, q, a.dim, std::string("maps.") + name);
    };
    opt_a("l1", d.l1);
    opt_a("r1", d.r1);
    opt_a("rho1", d.rho1);
    opt_a("mu1", d.mu1);
    opt_v("l2", d.l2);
    opt_v("r2", d.r2);
    opt_v("rho2", d.rho2);
    opt_v("mu2", d.mu2);
  }
  if (j.contains("f")) d.f = parse_tensor3<S>(j.at("f"), field, q, q, a.dim, "f");
  if (j.contains("g")) d.g = parse_tensor3<S>(j.at("g"), field, q, q, a.dim, "g");
  if (j.contains("star2")) d.star2 = parse_tensor3<S>(j.at("star2"), field, q, q, q, "star2");
  if (j.contains("circ2")) d.circ2 = parse_tensor3<S>(j.at("circ2"), field, q, q, q, "circ2");
  return {std::move(a), std::move(d)};
}

template <class S>
Json extending_to_json(const Algebra<S>& a, const ExtendingDatum<S>& d) {
  Json maps{{"l1", endo_family_to_json(d.l1)},   {"r1", endo_family_to_json(d.r1)},
            {"rho1", endo_family_to_json(d.rho1)}, {"mu1", endo_family_to_json(d.mu1)},
            {"l2", endo_family_to_json(d.l2)},   {"r2", endo_family_to_json(d.r2)},
            {"rho2", endo_family_to_json(d.rho2)}, {"mu2", endo_family_to_json(d.mu2)}};
  return Json{{"algebra", algebra_to_json(a)},
              {"dim_v", d.dim_v},
              {"maps", std::move(maps)},
              {"f", tensor3_to_json(d.f)},
              {"g", tensor3_to_json(d.g)},
              {"star2", tensor3_to_json(d.star2)},
              {"circ2", tensor3_to_json(d.circ2)}};
}

/// Matched pair document: {"a1": <algebra>, "a2": <algebra>, "maps": {...}}.
template <class S>
MatchedPairData<S> parse_matched_pair(const Json& j) {
  Algebra<S> a1 = parse_algebra<S>(j.at("a1"), "a1");
  Algebra<S> a2 = parse_algebra<S>(j.at("a2"), "a2");
  if (a1.field != a2.field) throw Error("matched pair components use different fields");
  auto mp = MatchedPairData<S>::make(std::move(a1), std::move(a2));
  if (j.contains("maps")) {
    const Json& maps = j.at("maps");
    auto opt1 = [&](const char* name, EndoFamily<S>& dst) {
      if (maps.contains(name))
        dst = parse_endo_family<S>(maps.at(name), mp.a1.field, mp.a1.dim, mp.a2.dim,
                                   std::string("maps.") + name);
    };
    auto opt2 = [&](const char* name, EndoFamily<S>& dst) {
      if (maps.contains(name))
        dst = parse_endo_family<S>(maps.at(name), mp.a1.field, mp.a2.dim, mp.a1.dim,
                                   std::string("maps.") + name);
    };
    opt1("l1", mp.l1);
    opt1("r1", mp.r1);
    opt1("rho1", mp.rho1);
    opt1("mu1", mp.mu1);
    opt2("l2", mp.l2);
    opt2("r2", mp.r2);
    opt2("rho2", mp.rho2);
    opt2("mu2", mp.mu2);
  }
  return mp;
}

/// Bialgebra document: algebra fields plus "delta_zinbiel" and "delta_prelie".
template <class S>
BialgebraData<S> parse_bialgebra(const Json& j) {
  BialgebraData<S> data;
  data.alg = parse_algebra<S>(j);
  std::size_t n = data.alg.dim;
  data.delta_zinbiel =
      j.contains("delta_zinbiel")
          ? parse_tensor3<S>(j.at("delta_zinbiel"), data.alg.field, n, n, n, "delta_zinbiel")
          : Tensor3<S>(n, n, n);
  data.delta_prelie =
      j.contains("delta_prelie")
          ? parse_tensor3<S>(j.at("delta_prelie"), data.alg.field, n, n, n, "delta_prelie")
          : Tensor3<S>(n, n, n);
  return data;
}

template <class S>
Json bialgebra_to_json(const BialgebraData<S>& data) {
  Json j = algebra_to_json(data.alg);
  j["delta_zinbiel"] = tensor3_to_json(data.delta_zinbiel);
  j["delta_prelie"] = tensor3_to_json(data.delta_prelie);
  return j;
}

/// r document: {"r": [[...]]} with shape taken from the companion algebra.
template <class S>
RMatrix<S> parse_rmatrix(const Json& j, const FieldDescriptor& field, std::size_t n) {
  if (!j.contains("r")) throw Error("r document needs an \"r\" matrix");
  return parse_matrix<S>(j.at("r"), field, n, n, "r");
}

/// Flag datum document: {"algebra": ..., "a1", "k1", "tau", "omega", "P",
/// "Q", "a2", "k2", "p", "q", "S", "T"}; omitted pieces default to zero.
template <class S>
std::pair<Algebra<S>, FlagDatum<S>> parse_flag_datum(const Json& j) {
  Algebra<S> a = parse_algebra<S>(j.at("algebra"), "algebra");
  const std::size_t n = a.dim;
  FlagDatum<S> fd = FlagDatum<S>::zero(n);
  auto opt_vec = [&](const char* name, Vec<S>& dst) {
    if (j.contains(name)) dst = parse_vec<S>(j.at(name), a.field, n, name);
  };
  auto opt_scalar = [&](const char* name, S& dst) {
    if (j.contains(name)) dst = parse_scalar_json<S>(j.at(name), a.field, name);
  };
  auto opt_mat = [&](const char* name, Matrix<S>& dst) {
    if (j.contains(name)) dst = parse_matrix<S>(j.at(name), a.field, n, n, name);
  };
  opt_vec("a1", fd.a1);
  opt_vec("a2", fd.a2);
  opt_scalar("k1", fd.k1);
  opt_scalar("k2", fd.k2);
  opt_vec("tau", fd.tau);
  opt_vec("omega", fd.omega);
  opt_vec("p", fd.p);
  opt_vec("q", fd.q);
  opt_mat("P", fd.P);
  opt_mat("Q", fd.Q);
  opt_mat("S", fd.S);
  opt_mat("T", fd.T);
  return {std::move(a), std::move(fd)};
}

template <class S>
Json flag_datum_to_json(const FlagDatum<S>& fd) {
  return Json{{"a1", vec_to_json(fd.a1)},     {"k1", scalar_to_json(fd.k1)},
              {"tau", vec_to_json(fd.tau)},   {"omega", vec_to_json(fd.omega)},
              {"P", matrix_to_json(fd.P)},    {"Q", matrix_to_json(fd.Q)},
              {"a2", vec_to_json(fd.a2)},     {"k2", scalar_to_json(fd.k2)},
              {"p", vec_to_json(fd.p)},       {"q", vec_to_json(fd.q)},
              {"S", matrix_to_json(fd.S)},    {"T", matrix_to_json(fd.T)}};
}

/// Abelian crossed matrix document: {"field", "n", "A","B","C","D",
/// "theta0","upsilon0"}.
template <class S>
std::pair<AbelianCrossedMatrices<S>, FieldDescriptor> parse_abelian_crossed(const Json& j) {
  FieldDescriptor field = parse_field(j.at("field"));
  std::size_t n = j.at("n").get<std::size_t>();
  AbelianCrossedMatrices<S> m;
  m.A = parse_matrix<S>(j.at("A"), field, n, n, "A");
  m.B = parse_matrix<S>(j.at("B"), field, n, n, "B");
  m.C = parse_matrix<S>(j.at("C"), field, n, n, "C");
  m.D = parse_matrix<S>(j.at("D"), field, n, n, "D");
  m.theta0 = parse_vec<S>(j.at("theta0"), field, n, "theta0");
  m.upsilon0 = parse_vec<S>(j.at("upsilon0"), field, n, "upsilon0");
  return {std::move(m), field};
}

template <class S>
Json check_report_to_json(const CheckReport<S>& r, const std::string& name) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    Json res = Json::array();
    for (const auto& v : w.residual) res.push_back(scalar_to_json(v));
    witnesses.push_back(Json{{"id", w.id}, {"at", w.at}, {"residual", std::move(res)}});
  }
  Json by_id = Json::object();
  for (const auto& [id, c] : r.failures_by_id) by_id[id] = c;
  Json j{{"name", name},
         {"passed", r.passed},
         {"failures", r.failure_count},
         {"failures_by_id", std::move(by_id)},
         {"witnesses", std::move(witnesses)}};
  if (r.derived_failure_count > 0 || !r.derived_passed) {
    j["derived_passed"] = r.derived_passed;
    j["derived_failures"] = r.derived_failure_count;
  }
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

}  // namespace ppk
