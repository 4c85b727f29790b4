// JSON input files for the 4-manifold commands.  Every schema error names
// the offending field as a path such as $.F0[1].genus.
#pragma once

#include "knotforge/fourmanifold.hpp"
#include "knotforge/family.hpp"

#include <json.hpp>

#include <filesystem>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotforge {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

namespace config {

using Json = nlohmann::json;

inline Json load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError("$", e.what());
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
}

namespace detail {

inline void require_object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(path + "." + key, "unknown field");
  }
}

inline const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing required field");
  return j.at(key);
}

inline std::int64_t integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline HomologyClass int_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of integers");
  HomologyClass out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

/// A form is either block notation ("<-1> + H") or an explicit matrix.
inline IntersectionForm parse_form(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return IntersectionForm::parse_blocks(j.get<std::string>());
    if (j.is_array()) {
      std::vector<std::vector<std::int64_t>> rows;
      for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(detail::int_vector(j[i], path + "[" + std::to_string(i) + "]"));
      return IntersectionForm(std::move(rows));
    }
  } catch (const FourManifoldError& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path, "expected block notation or a matrix");
}

inline ManifoldData parse_manifold(const Json& j, const std::string& path) {
  detail::require_object(j, path, {"form", "euler", "boundary", "mu_coset"});
  ManifoldData m;
  m.form = parse_form(detail::field(j, path, "form"), path + ".form");
  m.euler = static_cast<int>(detail::integer(detail::field(j, path, "euler"), path + ".euler"));
  const Json& b = detail::field(j, path, "boundary");
  const std::string bpath = path + ".boundary";
  if (!b.is_string()) throw ConfigError(bpath, "expected a string");
  const auto kind = b.get<std::string>();
  if (kind == "closed") {
    m.boundary = BoundaryKind::closed;
  } else if (kind == "homology-sphere") {
    m.boundary = BoundaryKind::homology_sphere;
  } else if (kind == "other") {
    m.boundary = BoundaryKind::other;
  } else {
    throw ConfigError(bpath, "expected \"closed\", \"homology-sphere\" or \"other\"");
  }
  if (j.contains("mu_coset")) {
    const auto mu = detail::integer(j["mu_coset"], path + ".mu_coset");
    if (mu != 0 && mu != 2) throw ConfigError(path + ".mu_coset", "must be 0 or 2");
    if (m.boundary != BoundaryKind::homology_sphere) {
      throw ConfigError(path + ".mu_coset", "only meaningful for a homology-sphere boundary");
    }
    m.mu_coset = static_cast<int>(mu);
  }
  return m;
}

/// Components need a rank to default their class to zero; a form, when
/// given, also validates the optional "self_int" field.
inline SurfaceComponent parse_component(const Json& j, const std::string& path, std::size_t rank,
                                        const IntersectionForm* form) {
  detail::require_object(j, path, {"genus", "orientable", "kind", "class", "k", "self_int", "label"});
  SurfaceComponent c;
  const auto genus = detail::integer(detail::field(j, path, "genus"), path + ".genus");
  if (genus < 0) throw ConfigError(path + ".genus", "must be non-negative");
  c.genus = static_cast<int>(genus);
  if (j.contains("orientable")) {
    if (!j["orientable"].is_boolean()) throw ConfigError(path + ".orientable", "expected true or false");
    c.orientable = j["orientable"].get<bool>();
  }
  if (!c.orientable && c.genus < 1) throw ConfigError(path + ".genus", "non-orientable surface needs genus >= 1");
  if (j.contains("kind")) {
    const Json& k = j["kind"];
    if (k == "definite") {
      c.kind = FoldKind::definite;
    } else if (k == "indefinite") {
      c.kind = FoldKind::indefinite;
    } else {
      throw ConfigError(path + ".kind", "expected \"definite\" or \"indefinite\"");
    }
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ConfigError(path + ".label", "expected a string");
    c.label = j["label"].get<std::string>();
  }
  if (j.contains("k")) {
    if (rank != 1) throw ConfigError(path + ".k", "k multiples need a rank-1 form");
    c.k_multiple = detail::integer(j["k"], path + ".k");
  }
  if (j.contains("class")) {
    c.cls = detail::int_vector(j["class"], path + ".class");
    if (c.cls.size() != rank) {
      throw ConfigError(path + ".class", "has " + std::to_string(c.cls.size()) + " coordinates, expected " +
                                             std::to_string(rank));
    }
    if (c.k_multiple && c.cls[0] != *c.k_multiple) throw ConfigError(path + ".k", "disagrees with class");
  } else if (c.k_multiple) {
    c.cls = {*c.k_multiple};
  } else {
    c.cls.assign(rank, 0);
  }
  if (j.contains("self_int")) {
    const auto s = detail::integer(j["self_int"], path + ".self_int");
    if (form == nullptr) throw ConfigError(path + ".self_int", "no intersection form to check against");
    const auto actual = form->self_intersection(c.cls);
    if (s != actual) {
      throw ConfigError(path + ".self_int",
                        "is " + std::to_string(s) + " but the class has self-intersection " + std::to_string(actual));
    }
  }
  return c;
}

inline SurfaceConfig parse_surfaces(const Json& j, const std::string& path, std::size_t rank,
                                    const IntersectionForm* form) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of surface components");
  SurfaceConfig cfg;
  for (std::size_t i = 0; i < j.size(); ++i) {
    cfg.components.push_back(parse_component(j[i], path + "[" + std::to_string(i) + "]", rank, form));
  }
  return cfg;
}

struct SaekiInput {
  ManifoldData manifold;
  SurfaceConfig f0;
  SurfaceConfig f1;
};

inline SaekiInput parse_saeki(const Json& j) {
  detail::require_object(j, "$", {"description", "manifold", "F0", "F1"});
  SaekiInput in;
  in.manifold = parse_manifold(detail::field(j, "$", "manifold"), "$.manifold");
  if (in.manifold.boundary != BoundaryKind::closed) throw ConfigError("$.manifold.boundary", "must be \"closed\"");
  const auto rank = in.manifold.form.rank();
  in.f0 = parse_surfaces(detail::field(j, "$", "F0"), "$.F0", rank, &in.manifold.form);
  in.f1 = parse_surfaces(detail::field(j, "$", "F1"), "$.F1", rank, &in.manifold.form);
  if (in.f0.empty() && in.f1.empty()) throw ConfigError("$", "F0 and F1 are both empty");
  return in;
}

struct DefectExpectation {
  std::optional<TotalDefect> defect;
  std::optional<bool> coset;
  std::optional<bool> canonical;
};

struct DefectInput {
  ManifoldData manifold;
  SurfaceConfig sigma0;
  SurfaceConfig sigma1;
  std::optional<std::int64_t> framing;  // p, for a single p-framed 2-handle
  DefectExpectation expect;
};

inline DefectInput parse_defect(const Json& j) {
  detail::require_object(j, "$", {"description", "manifold", "sigma0", "sigma1", "framing", "expect"});
  DefectInput in;
  in.manifold = parse_manifold(detail::field(j, "$", "manifold"), "$.manifold");
  if (in.manifold.boundary == BoundaryKind::closed) throw ConfigError("$.manifold.boundary", "must not be \"closed\"");
  const auto rank = in.manifold.form.rank();
  in.sigma0 = parse_surfaces(j.value("sigma0", Json::array()), "$.sigma0", rank, &in.manifold.form);
  in.sigma1 = parse_surfaces(j.value("sigma1", Json::array()), "$.sigma1", rank, &in.manifold.form);
  for (const auto* cfg : {&in.sigma0, &in.sigma1}) {
    const std::string base = cfg == &in.sigma0 ? "$.sigma0" : "$.sigma1";
    for (std::size_t i = 0; i < cfg->components.size(); ++i) {
      if (!cfg->components[i].orientable) {
        throw ConfigError(base + "[" + std::to_string(i) + "].orientable", "components must be orientable");
      }
    }
  }
  if (j.contains("framing")) {
    in.framing = detail::integer(j["framing"], "$.framing");
    if (rank != 1) throw ConfigError("$.framing", "a framing describes a single 2-handle (rank-1 form)");
  }
  if (j.contains("expect")) {
    const Json& e = j["expect"];
    detail::require_object(e, "$.expect", {"defect", "coset", "canonical"});
    if (e.contains("defect")) {
      const auto v = detail::int_vector(e["defect"], "$.expect.defect");
      if (v.size() != 2) throw ConfigError("$.expect.defect", "expected [d, h]");
      in.expect.defect = TotalDefect{v[0], v[1]};
    }
    for (const char* key : {"coset", "canonical"}) {
      if (!e.contains(key)) continue;
      if (!e[key].is_boolean()) throw ConfigError(std::string("$.expect.") + key, "expected true or false");
      (std::string(key) == "coset" ? in.expect.coset : in.expect.canonical) = e[key].get<bool>();
    }
  }
  return in;
}

/// sg^k comparison; k = 0 stands for the plain invariant sg.
struct SgExpectation {
  int k = 1;
  std::string op;  // "==", ">=", "<=", ">", "<"
  ExtendedGenus value;

  bool holds(const ExtendedGenus& actual) const {
    if (op == "==") return actual == value;
    if (op == ">=") return actual >= value;
    if (op == "<=") return actual <= value;
    if (op == ">") return actual > value;
    return actual < value;
  }
  std::string describe(const std::string& catalog) const {
    const std::string lhs = k == 0 ? "sg(" + catalog + ")" : "sg^" + std::to_string(k) + "(" + catalog + ")";
    return lhs + " " + op + " " + value.render();
  }
};

struct CatalogEntry {
  MapCatalog catalog;
  /// Lower bound on sg^1 known from outside (e.g. a gauge-theoretic
  /// obstruction); recorded as input, never computed.
  std::optional<int> lower_bound;
  std::vector<SgExpectation> expect;
};

struct CatalogFile {
  std::size_t rank = 1;
  std::vector<CatalogEntry> catalogs;
};

inline ExtendedGenus parse_genus_value(const Json& j, const std::string& path) {
  if (j.is_string() && (j == "inf" || j == "infinity")) return ExtendedGenus::infinity();
  const auto v = detail::integer(j, path);
  if (v < 0) throw ConfigError(path, "must be non-negative or \"inf\"");
  return ExtendedGenus(static_cast<int>(v));
}

inline std::set<FoldKind> parse_kinds(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of fold kinds");
  std::set<FoldKind> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (j[i] == "definite") {
      out.insert(FoldKind::definite);
    } else if (j[i] == "indefinite") {
      out.insert(FoldKind::indefinite);
    } else {
      throw ConfigError(p, "expected \"definite\" or \"indefinite\"");
    }
  }
  return out;
}

inline CatalogFile parse_catalogs(const Json& j) {
  detail::require_object(j, "$", {"description", "rank", "A", "singularities", "catalogs"});
  CatalogFile file;
  if (j.contains("rank")) {
    const auto r = detail::integer(j["rank"], "$.rank");
    if (r < 0) throw ConfigError("$.rank", "must be non-negative");
    file.rank = static_cast<std::size_t>(r);
  }
  auto parse_classes = [&](const Json& a, const std::string& path) {
    if (!a.is_array()) throw ConfigError(path, "expected an array of homology classes");
    std::vector<HomologyClass> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string p = path + "[" + std::to_string(i) + "]";
      out.push_back(detail::int_vector(a[i], p));
      if (out.back().size() != file.rank) throw ConfigError(p, "class dimension differs from rank");
    }
    return out;
  };
  const std::vector<HomologyClass> shared_a = parse_classes(detail::field(j, "$", "A"), "$.A");
  const std::set<FoldKind> shared_kinds = j.contains("singularities")
                                              ? parse_kinds(j["singularities"], "$.singularities")
                                              : std::set<FoldKind>{FoldKind::definite, FoldKind::indefinite};
  const Json& cats = detail::field(j, "$", "catalogs");
  if (!cats.is_array()) throw ConfigError("$.catalogs", "expected an array");
  for (std::size_t ci = 0; ci < cats.size(); ++ci) {
    const std::string cpath = "$.catalogs[" + std::to_string(ci) + "]";
    const Json& c = cats[ci];
    detail::require_object(c, cpath, {"name", "maps", "A", "singularities", "lower_bound", "expect"});
    CatalogEntry entry;
    const Json& name = detail::field(c, cpath, "name");
    if (!name.is_string()) throw ConfigError(cpath + ".name", "expected a string");
    entry.catalog.name = name.get<std::string>();
    entry.catalog.admissible = c.contains("A") ? parse_classes(c["A"], cpath + ".A") : shared_a;
    entry.catalog.allowed = c.contains("singularities") ? parse_kinds(c["singularities"], cpath + ".singularities")
                                                        : shared_kinds;
    const Json& maps = detail::field(c, cpath, "maps");
    if (!maps.is_array()) throw ConfigError(cpath + ".maps", "expected an array");
    for (std::size_t mi = 0; mi < maps.size(); ++mi) {
      const std::string mpath = cpath + ".maps[" + std::to_string(mi) + "]";
      detail::require_object(maps[mi], mpath, {"name", "components"});
      CatalogMap m;
      m.name = maps[mi].value("name", "map" + std::to_string(mi));
      m.singular_set = parse_surfaces(detail::field(maps[mi], mpath, "components"), mpath + ".components", file.rank,
                                      nullptr);
      entry.catalog.maps.push_back(std::move(m));
    }
    if (c.contains("lower_bound")) {
      const auto lb = detail::integer(c["lower_bound"], cpath + ".lower_bound");
      if (lb < 0) throw ConfigError(cpath + ".lower_bound", "must be non-negative");
      entry.lower_bound = static_cast<int>(lb);
    }
    if (c.contains("expect")) {
      const Json& ex = c["expect"];
      if (!ex.is_array()) throw ConfigError(cpath + ".expect", "expected an array");
      for (std::size_t ei = 0; ei < ex.size(); ++ei) {
        const std::string epath = cpath + ".expect[" + std::to_string(ei) + "]";
        detail::require_object(ex[ei], epath, {"k", "op", "value"});
        SgExpectation e;
        const auto k = detail::integer(detail::field(ex[ei], epath, "k"), epath + ".k");
        if (k < 0) throw ConfigError(epath + ".k", "must be >= 1, or 0 for the plain invariant");
        e.k = static_cast<int>(k);
        const Json& op = detail::field(ex[ei], epath, "op");
        if (!op.is_string() || (op != "==" && op != ">=" && op != "<=" && op != ">" && op != "<")) {
          throw ConfigError(epath + ".op", "expected one of ==, >=, <=, >, <");
        }
        e.op = op.get<std::string>();
        e.value = parse_genus_value(detail::field(ex[ei], epath, "value"), epath + ".value");
        entry.expect.push_back(std::move(e));
      }
    }
    file.catalogs.push_back(std::move(entry));
  }
  return file;
}

}  // namespace config
}  // namespace knotforge
