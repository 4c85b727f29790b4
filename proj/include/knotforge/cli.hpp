// Command-line front end.  `run` parses arguments, executes one subcommand
// and writes its report; the return value is the process exit code.
#pragma once

#include "knotforge/config.hpp"
#include "knotforge/diagram.hpp"
#include "knotforge/family.hpp"
#include "knotforge/fourmanifold.hpp"
#include "knotforge/invariants.hpp"
#include "knotforge/report.hpp"
#include "knotforge/skein.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace knotforge::cli {

enum ExitCode : int { kOk = 0, kFailedChecks = 1, kInputError = 2, kBudget = 3 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  bool json = false;
  bool no_timestamp = false;
  std::string data;
  std::string table;
  int budget = 24;
  int parallel_depth = 0;

  std::filesystem::path data_path() const { return data.empty() ? data_dir() : std::filesystem::path(data); }
  std::filesystem::path table_path() const {
    return table.empty() ? data_path() / "knots.pd" : std::filesystem::path(table);
  }
  /// Paths that do not exist as given are looked up in the data directory.
  std::filesystem::path resolve(const std::string& p) const {
    const std::filesystem::path given(p);
    if (std::filesystem::exists(given) || given.is_absolute()) return given;
    const auto candidate = data_path() / given;
    return std::filesystem::exists(candidate) ? candidate : given;
  }
  SkeinOptions skein() const {
    SkeinOptions o;
    o.crossing_budget = budget;
    o.parallel_depth = parallel_depth;
    return o;
  }
};

namespace detail {

inline std::string str(const Rational& r) { return knotforge::detail::str(r); }

inline void add_invariants(RunReport& r, const SurgeryInvariants& inv, const std::string& prefix) {
  r.result(prefix + "a2", inv.a2.str());
  r.result(prefix + "c4", inv.c4.str());
  r.result(prefix + "v0", inv.v0.str());
  r.result(prefix + "v1", inv.v1.str());
  r.result(prefix + "v2", inv.v2.str());
  r.result(prefix + "v3", inv.v3.str());
  r.result(prefix + "lambda1", str(inv.lambda1));
  r.result(prefix + "lambda2", str(inv.lambda2));
}

}  // namespace detail

struct InvariantsArgs {
  std::string pd_file;
  std::string name;
};

inline RunReport cmd_invariants(const GlobalOptions& g, const InvariantsArgs& a) {
  RunReport r;
  r.command = "invariants";
  PDDiagram d;
  if (!a.pd_file.empty()) {
    r.input("pd", a.pd_file);
    d = parse_pd(read_file(g.resolve(a.pd_file)));
  } else {
    r.input("name", a.name);
    d = KnotTable::load(g.table_path()).diagram(a.name);
  }
  if (d.component_count() != 1) {
    throw InputError("input has " + std::to_string(d.component_count()) + " components; a knot is required");
  }
  SkeinEngine engine(g.skein());
  const LaurentPoly c = engine.conway(d);
  const LaurentPoly v = engine.jones(d);
  r.result("crossings", std::to_string(d.crossing_count()));
  r.result("writhe", std::to_string(d.writhe()));
  r.result("conway", c.render("z"));
  r.result("jones", v.render("t"));
  const SurgeryInvariants inv = surgery_invariants(c, v);
  detail::add_invariants(r, inv, "");
  r.check(make_check("V(1) = 1", "1", inv.v0.str()));
  r.check(make_check("v1 = 0", "0", inv.v1.str()));
  r.check(make_check("v2 = -6 a2", Integer(-6 * inv.a2).str(), inv.v2.str()));
  constexpr int kOracleLimit = 16;
  if (d.crossing_count() <= kOracleLimit) {
    r.check(make_check("jones = bracket state sum", v.render("t"), jones_bracket_oracle(d).render("t")));
  }
  return r;
}

inline RunReport cmd_verify_paper(const GlobalOptions& g, int n_max) {
  if (n_max < 2) throw InputError("--nmax must be at least 2");
  const KnotTable table = KnotTable::load(g.table_path());
  SkeinEngine engine(g.skein());
  RunReport r = verify_family(n_max, table, engine);
  r.command = "verify-paper";
  r.input("nmax", std::to_string(n_max));
  r.input("table", g.table_path().filename().string());

  const auto& names = family_table_names();
  for (const auto& [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}) {
    const std::string label = "distinguish " + names[i].second + " vs " + names[j].second;
    try {
      const ChiralityChoice a = resolve_family_member(table, i, engine);
      const ChiralityChoice b = resolve_family_member(table, j, engine);
      const DistinguishReport rep = distinguish(a.diagram, b.diagram, engine);
      r.result(label + " lambda2", detail::str(rep.first.lambda2) + " vs " + detail::str(rep.second.lambda2));
      r.check(make_check(label, "distinguished", to_string(rep.verdict)));
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const std::exception& e) {
      r.check({label, "distinguished", std::string("error: ") + e.what(), false});
    }
  }
  return r;
}

inline RunReport cmd_saeki(const GlobalOptions& g, const std::string& path) {
  RunReport r;
  r.command = "saeki";
  r.input("config", path);
  const config::SaekiInput in = config::parse_saeki(config::load(g.resolve(path)));
  r.result("euler", std::to_string(in.manifold.euler));
  r.result("signature", std::to_string(in.manifold.form.signature()));
  r.result("chi(F0)", std::to_string(in.f0.euler()));
  r.result("chi(F1)", std::to_string(in.f1.euler()));
  const SaekiReport rep = saeki_check(in.manifold, in.f0, in.f1);
  for (int i = 0; i < SaekiReport::kConditions; ++i) {
    const std::string name = "condition (" + std::to_string(i + 1) + ")";
    r.result(name, rep.detail[i]);
    r.check(make_check(name, "holds", rep.holds[i] ? "holds" : "fails"));
  }
  return r;
}

inline RunReport cmd_defect(const GlobalOptions& g, const std::string& path) {
  RunReport r;
  r.command = "defect";
  r.input("config", path);
  const config::DefectInput in = config::parse_defect(config::load(g.resolve(path)));
  const TotalDefect t = total_defect(in.manifold, in.sigma0, in.sigma1);
  r.result("signature", std::to_string(in.manifold.form.signature()));
  r.result("d", std::to_string(t.d));
  r.result("h", std::to_string(t.h));
  r.result("defect", render(t));
  if (in.framing) {
    if (in.manifold.form.entry(0, 0) != *in.framing) {
      throw ConfigError("$.framing", "does not match the 1x1 intersection form");
    }
    std::vector<std::int64_t> ks;
    bool spheres_and_tori = true;
    for (const auto& c : in.sigma0.components) {
      spheres_and_tori = spheres_and_tori && c.genus == 0;
      ks.push_back(c.cls[0]);
    }
    for (const auto& c : in.sigma1.components) spheres_and_tori = spheres_and_tori && c.genus == 1;
    if (spheres_and_tori) {
      const TotalDefect closed = handle_defect_closed_form(*in.framing, ks, in.sigma1.euler());
      r.result("handle closed form", render(closed));
    }
  }
  if (in.manifold.boundary == BoundaryKind::homology_sphere) {
    const bool member = homology_sphere_coset_check(t, in.manifold.mu_coset);
    r.result("coset", member ? "member" : "not a member");
    r.result("canonical", is_canonical(t, in.manifold.mu_coset) ? "yes" : "no");
    r.check(make_check("coset membership", "member", member ? "member" : "not a member"));
  }
  if (in.expect.defect) r.check(make_check("defect", render(*in.expect.defect), render(t)));
  if (in.expect.coset) {
    const bool member = homology_sphere_coset_check(t, in.manifold.mu_coset);
    r.check(make_check("expected coset verdict", *in.expect.coset ? "member" : "not a member",
                       member ? "member" : "not a member"));
  }
  if (in.expect.canonical) {
    r.check(make_check("expected canonical verdict", *in.expect.canonical ? "yes" : "no",
                       is_canonical(t, in.manifold.mu_coset) ? "yes" : "no"));
  }
  return r;
}

inline RunReport cmd_sg(const GlobalOptions& g, const std::string& path, std::optional<int> k) {
  RunReport r;
  r.command = "sg";
  r.input("catalog", path);
  if (k) {
    if (*k < 1) throw InputError("--k must be at least 1");
    r.input("k", std::to_string(*k));
  }
  const config::CatalogFile file = config::parse_catalogs(config::load(g.resolve(path)));
  constexpr int kRange = 4;
  for (const auto& entry : file.catalogs) {
    const auto& cat = entry.catalog;
    if (k) {
      r.result("sg^" + std::to_string(*k) + "(" + cat.name + ")", sg_k(cat, *k).render());
    } else {
      for (int kk = 1; kk <= kRange; ++kk) r.result("sg^" + std::to_string(kk) + "(" + cat.name + ")", sg_k(cat, kk).render());
      r.result("sg(" + cat.name + ")", sg_plain(cat).render());
    }
    if (entry.lower_bound) {
      const ExtendedGenus v = sg_k(cat, 1);
      r.check({"sg^1(" + cat.name + ") respects external lower bound", ">= " + std::to_string(*entry.lower_bound),
               v.render(), v >= ExtendedGenus(*entry.lower_bound)});
    }
    for (const auto& e : entry.expect) {
      const ExtendedGenus v = e.k == 0 ? sg_plain(cat) : sg_k(cat, e.k);
      r.check({e.describe(cat.name), e.op + " " + e.value.render(), v.render(), e.holds(v)});
    }
  }
  // With two catalogs, report the first k where the first is 0, the second
  // positive and finite, and both vanish below k.
  if (file.catalogs.size() == 2) {
    const auto& a = file.catalogs[0].catalog;
    const auto& b = file.catalogs[1].catalog;
    std::string gap = "none";
    for (int kk = 1; kk <= kRange; ++kk) {
      const ExtendedGenus va = sg_k(a, kk);
      const ExtendedGenus vb = sg_k(b, kk);
      if (va == ExtendedGenus(0) && vb > ExtendedGenus(0) && !vb.is_infinite()) {
        gap = std::to_string(kk);
        break;
      }
      if (!(va == ExtendedGenus(0) && vb == ExtendedGenus(0))) break;
    }
    r.result("gap k (" + a.name + " vs " + b.name + ")", gap);
  }
  return r;
}

inline RunReport cmd_tb(int writhe, int cusps) {
  RunReport r;
  r.command = "tb";
  r.input("writhe", std::to_string(writhe));
  r.input("cusps", std::to_string(cusps));
  try {
    r.result("tb", std::to_string(tb_from_front(FrontDiagram{writhe, cusps})));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return r;
}

inline int emit(const RunReport& r, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  if (g.json) {
    out << to_json(r, !g.no_timestamp).dump(2) << '\n';
  } else {
    out << render_text(r, !g.no_timestamp);
  }
  if (r.passed()) return kOk;
  err << "failing checks:\n";
  for (const auto& name : r.failing()) err << "  " << name << '\n';
  return kFailedChecks;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"knotforge: knot polynomials, surgery invariants and 4-manifold checks"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_flag("--json", g.json, "Emit the report as JSON");
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp line");
  app.add_option("--data", g.data, "Data directory (default: $KNOTFORGE_DATA or the built-in path)");
  app.add_option("--table", g.table, "Knot table file (default: <data>/knots.pd)");
  app.add_option("--budget", g.budget, "Crossing budget for skein recursion")->check(CLI::PositiveNumber);
  app.add_option("--parallel-depth", g.parallel_depth, "Recursion levels evaluated concurrently")
      ->check(CLI::Range(0, 8));

  InvariantsArgs inv_args;
  auto* inv = app.add_subcommand("invariants", "Conway, Jones and (-1)-surgery invariants of a knot");
  auto* pd_opt = inv->add_option("--pd", inv_args.pd_file, "File with a PD code");
  auto* name_opt = inv->add_option("--name", inv_args.name, "Knot table entry");
  pd_opt->excludes(name_opt);
  inv->require_option(1);

  int n_max = 2;
  auto* verify = app.add_subcommand("verify-paper", "Check the L_n family against table diagrams and closed forms");
  verify->add_option("--nmax", n_max, "Largest n for closed-form checks (>= 2)");

  std::string saeki_config;
  auto* saeki = app.add_subcommand("saeki", "Fold-map existence conditions for a closed 4-manifold");
  saeki->add_option("--config", saeki_config, "JSON config")->required();

  std::string defect_config;
  auto* defect = app.add_subcommand("defect", "Total defect of the framing induced on the boundary");
  defect->add_option("--config", defect_config, "JSON config")->required();

  std::string catalog;
  std::optional<int> sg_k_value;
  auto* sg = app.add_subcommand("sg", "sg^k genus invariants of map catalogs");
  sg->add_option("--catalog", catalog, "JSON catalog file")->required();
  sg->add_option("--k", sg_k_value, "Compute only sg^k (default: k = 1..4 and sg)");

  int writhe = 0;
  int cusps = 0;
  auto* tb = app.add_subcommand("tb", "Thurston-Bennequin number of a front");
  tb->add_option("--writhe", writhe, "Writhe of the front")->required();
  tb->add_option("--cusps", cusps, "Number of cusps")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    RunReport r;
    if (*inv) {
      r = cmd_invariants(g, inv_args);
    } else if (*verify) {
      r = cmd_verify_paper(g, n_max);
    } else if (*saeki) {
      r = cmd_saeki(g, saeki_config);
    } else if (*defect) {
      r = cmd_defect(g, defect_config);
    } else if (*sg) {
      r = cmd_sg(g, catalog, sg_k_value);
    } else {
      r = cmd_tb(writhe, cusps);
    }
    return emit(r, g, out, err);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::logic_error& e) {
    // invalid_argument (and FourManifoldError) are input problems; other
    // logic errors are internal.
    if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    }
    err << "internal error: " << e.what() << '\n';
    return kFailedChecks;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"knotforge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace knotforge::cli
