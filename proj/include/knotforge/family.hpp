// The twist family L_n: closed forms for its Conway and Jones polynomials,
// a named knot table holding diagrams for L_0, L_1, L_2 and the link J_0,
// and a cross-check between the two.
#pragma once

#include "knotforge/diagram.hpp"
#include "knotforge/invariants.hpp"
#include "knotforge/laurent.hpp"
#include "knotforge/report.hpp"
#include "knotforge/skein.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef KNOTFORGE_DATA_DIR
#define KNOTFORGE_DATA_DIR "data"
#endif

namespace knotforge {

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Data directory: $KNOTFORGE_DATA if set, else the compiled-in location.
inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("KNOTFORGE_DATA"); env != nullptr && *env != '\0') return env;
  return KNOTFORGE_DATA_DIR;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Names like "L7n2", "hopf+" or "unlink2" denote links; everything else a knot.
inline bool is_link_name(const std::string& name) {
  if (name.size() >= 2 && name[0] == 'L' && std::isdigit(static_cast<unsigned char>(name[1]))) return true;
  return name.rfind("hopf", 0) == 0 || name.rfind("unlink", 0) == 0;
}

class KnotTable {
 public:
  /// Stanzas of the form
  ///   name: 5_2
  ///   X(1,4,2,5) ...
  /// Comments start with '#'.
  static KnotTable parse(const std::string& text) {
    KnotTable table;
    std::istringstream in(text);
    std::string line;
    std::string current;
    std::string body;
    int line_no = 0;
    int stanza_line = 0;
    auto flush = [&] {
      if (current.empty()) return;
      table.add(current, body, stanza_line);
      body.clear();
    };
    while (std::getline(in, line)) {
      ++line_no;
      const std::string content = strip(line.substr(0, line.find('#')));
      if (content.empty()) continue;
      if (content.rfind("name:", 0) == 0) {
        flush();
        current = strip(content.substr(5));
        stanza_line = line_no;
        if (current.empty()) throw TableError("line " + std::to_string(line_no) + ": empty entry name");
        if (table.entries_.count(current) != 0) {
          throw TableError("line " + std::to_string(line_no) + ": duplicate entry '" + current + "'");
        }
        continue;
      }
      if (current.empty()) throw TableError("line " + std::to_string(line_no) + ": PD text before any 'name:' line");
      body += content;
      body += '\n';
    }
    flush();
    return table;
  }

  static KnotTable load(const std::filesystem::path& path) { return parse(read_file(path)); }
  static KnotTable load_default() { return load(data_dir() / "knots.pd"); }

  bool contains(const std::string& name) const { return diagrams_.count(name) != 0; }

  const PDDiagram& diagram(const std::string& name) const {
    auto it = diagrams_.find(name);
    if (it == diagrams_.end()) throw TableError("no table entry named '" + name + "'");
    return it->second;
  }
  const std::string& text(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw TableError("no table entry named '" + name + "'");
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [name, text] : entries_) out.push_back(name);
    return out;
  }
  std::size_t size() const { return entries_.size(); }

  /// Adds or replaces an entry; the text must parse and match the name's type.
  void set(const std::string& name, const std::string& pd_text) {
    entries_.erase(name);
    diagrams_.erase(name);
    add(name, pd_text, 0);
  }

 private:
  static std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

  void add(const std::string& name, const std::string& pd_text, int line) {
    const std::string where = "entry '" + name + "'" + (line > 0 ? " (line " + std::to_string(line) + ")" : "");
    PDDiagram d;
    try {
      d = parse_pd(pd_text);
    } catch (const std::exception& e) {
      throw TableError(where + ": " + e.what());
    }
    const bool link = is_link_name(name);
    if (link && d.component_count() < 2) throw TableError(where + ": link entry has one component");
    if (!link && d.component_count() != 1) {
      throw TableError(where + ": knot entry has " + std::to_string(d.component_count()) + " components");
    }
    entries_.emplace(name, pd_text);
    diagrams_.emplace(name, std::move(d));
  }

  std::map<std::string, std::string> entries_;
  std::map<std::string, PDDiagram> diagrams_;
};

/// Values stated for the family, entered by hand.
namespace anchors {
/// V(L_0) = t^-1 - t^-2 + 2t^-3 - t^-4 + t^-5 - t^-6.
inline LaurentPoly jones_l0() { return LaurentPoly::from_integral({{-1, 1}, {-2, -1}, {-3, 2}, {-4, -1}, {-5, 1}, {-6, -1}}); }
/// t^-1 (t^{1/2} - t^{-1/2}) V(J_0).
inline LaurentPoly tilde_v() {
  return LaurentPoly::from_integral({{-1, 2}, {-2, -3}, {-3, 3}, {-4, -3}, {-5, 2}, {-6, -2}, {-7, 1}});
}
inline LaurentPoly conway_l0() { return LaurentPoly::from_integral({{0, 1}, {2, 2}}); }
inline LaurentPoly conway_j0() { return vars::z_pow(3); }
}  // namespace anchors

inline void require_nonnegative(int n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + ": n must be non-negative");
}

/// conway(L_n) = conway(L_0) - n z conway(J_0).
inline LaurentPoly conway_family(int n) {
  require_nonnegative(n, "conway_family");
  return anchors::conway_l0() - LaurentPoly(n) * vars::z_pow(1) * anchors::conway_j0();
}

/// (1 + t^-2 + ... + t^{-2(n-1)}) tilde_v + t^{-2n} V(L_0).
inline LaurentPoly jones_family(int n) {
  require_nonnegative(n, "jones_family");
  LaurentPoly geometric;
  for (int i = 0; i < n; ++i) geometric += vars::t_pow(-2 * i);
  return geometric * anchors::tilde_v() + vars::t_pow(-2 * n) * anchors::jones_l0();
}

/// V(L_n) = t^-2 V(L_{n-1}) + tilde_v, iterated from V(L_0).
inline LaurentPoly jones_family_recurrence(int n) {
  require_nonnegative(n, "jones_family_recurrence");
  LaurentPoly v = anchors::jones_l0();
  for (int i = 0; i < n; ++i) v = vars::t_pow(-2) * v + anchors::tilde_v();
  return v;
}

/// lambda_2 of (-1)-surgery on L_n from the closed forms.
inline Rational lambda2_family(int n) {
  require_nonnegative(n, "lambda2_family");
  const LaurentPoly v = jones_family(n);
  return ohtsuki_lambda2(v_i(v, 2), v_i(v, 3), Rational(c4(conway_family(n))));
}

/// t^-1 (t^{1/2} - t^{-1/2}) V.
inline LaurentPoly tilde_product(const LaurentPoly& jones_j0) {
  return vars::t_pow(-1) * (vars::sqrt_t() - vars::sqrt_t().inverted()) * jones_j0;
}

struct ChiralityChoice {
  PDDiagram diagram;
  LaurentPoly value;  // value on the chosen diagram
  bool mirrored = false;
  bool matched = false;
};

/// Evaluates `f` on `d`; if that misses `expected`, tries the mirror image
/// once.  When neither matches, reports the unmirrored value.
inline ChiralityChoice resolve_chirality(const PDDiagram& d, const std::function<LaurentPoly(const PDDiagram&)>& f,
                                         const LaurentPoly& expected) {
  LaurentPoly direct = f(d);
  if (direct == expected) return {d, std::move(direct), false, true};
  PDDiagram mirror = d.mirrored();
  LaurentPoly flipped = f(mirror);
  if (flipped == expected) return {std::move(mirror), std::move(flipped), true, true};
  return {d, std::move(direct), false, false};
}

class ConventionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TildeV {
  LaurentPoly value;
  bool mirrored = false;
};

/// tilde_v from the J_0 table diagram ("L7n2"), checked against the listed
/// polynomial.  Throws ConventionMismatch when neither chirality reproduces it.
inline TildeV tilde_v(const KnotTable& table, SkeinEngine& engine) {
  auto f = [&](const PDDiagram& d) { return tilde_product(engine.jones(d)); };
  const ChiralityChoice c = resolve_chirality(table.diagram("L7n2"), f, anchors::tilde_v());
  if (!c.matched) {
    throw ConventionMismatch("tilde_v from L7n2 is " + c.value.render("t") + ", expected " +
                             anchors::tilde_v().render("t"));
  }
  return {c.value, c.mirrored};
}

namespace detail {
inline std::string str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}
inline std::string tuple_str(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + str(v[i]);
  return out + ")";
}
}  // namespace detail

/// Table anchors for L_0, L_1, L_2.
inline const std::vector<std::pair<int, std::string>>& family_table_names() {
  static const std::vector<std::pair<int, std::string>> names = {{0, "5_2"}, {1, "9_45"}, {2, "11n63"}};
  return names;
}

/// The table diagram of L_n (n <= 2) in the chirality whose Jones
/// polynomial matches the closed form, if either does.
inline ChiralityChoice resolve_family_member(const KnotTable& table, int n, SkeinEngine& engine) {
  for (const auto& [m, name] : family_table_names()) {
    if (m != n) continue;
    auto jones_of = [&](const PDDiagram& d) { return engine.jones(d); };
    return resolve_chirality(table.diagram(name), jones_of, jones_family(n));
  }
  throw std::invalid_argument("no table anchor for L_" + std::to_string(n));
}

/// Cross-checks the closed forms against the skein engine on the table
/// diagrams, and checks moments and lambda_2 of the closed forms for
/// 0 <= n <= n_max.  Failed identities appear as failing checks.
inline RunReport verify_family(int n_max, const KnotTable& table, SkeinEngine& engine) {
  if (n_max < 2) throw std::invalid_argument("verify_family: n_max must be at least 2");
  RunReport r;
  r.command = "verify-family";

  for (const auto& [n, name] : family_table_names()) {
    const std::string tag = "L" + std::to_string(n) + "=" + name + ": ";
    const LaurentPoly expected_v = jones_family(n);
    if (!table.contains(name)) {
      r.check({tag + "jones = jones_family(" + std::to_string(n) + ")", expected_v.render("t"), "missing entry", false});
      continue;
    }
    try {
      const ChiralityChoice c = resolve_family_member(table, n, engine);
      r.result("chirality." + name, c.mirrored ? "mirrored" : "as tabulated");
      r.check(make_check(tag + "jones = jones_family(" + std::to_string(n) + ")", expected_v.render("t"),
                         c.value.render("t")));
      const LaurentPoly conway_value = engine.conway(c.diagram);
      r.check(make_check(tag + "conway = conway_family(" + std::to_string(n) + ")", conway_family(n).render("z"),
                         conway_value.render("z")));
      const SurgeryInvariants inv = surgery_invariants(conway_value, c.value);
      r.check(make_check(tag + "engine lambda2 = 72n+270", std::to_string(72 * n + 270), detail::str(inv.lambda2)));
      r.check(make_check(tag + "engine lambda1 = -2", "-2", detail::str(inv.lambda1)));
    } catch (const std::exception& e) {
      r.check({tag + "engine evaluation", "ok", std::string("error: ") + e.what(), false});
    }
  }

  if (!table.contains("L7n2")) {
    r.check({"J0=L7n2: tilde_v = listed", anchors::tilde_v().render("t"), "missing entry", false});
  } else {
    try {
      auto tilde_of = [&](const PDDiagram& d) { return tilde_product(engine.jones(d)); };
      const ChiralityChoice c = resolve_chirality(table.diagram("L7n2"), tilde_of, anchors::tilde_v());
      r.result("chirality.L7n2", c.mirrored ? "mirrored" : "as tabulated");
      r.check(make_check("J0=L7n2: tilde_v = listed", anchors::tilde_v().render("t"), c.value.render("t")));
      r.check(make_check("J0=L7n2: conway = z^3", anchors::conway_j0().render("z"),
                         engine.conway(c.diagram).render("z")));
    } catch (const std::exception& e) {
      r.check({"J0=L7n2: engine evaluation", "ok", std::string("error: ") + e.what(), false});
    }
  }

  const LaurentPoly tv = anchors::tilde_v();
  r.check(make_check("tilde_v moments 0..3", "(0, 2, -4, -28)",
                     detail::tuple_str({v_i(tv, 0), v_i(tv, 1), v_i(tv, 2), v_i(tv, 3)})));

  for (int n = 0; n <= n_max; ++n) {
    const std::string tag = "L" + std::to_string(n) + ": ";
    const LaurentPoly v = jones_family(n);
    const LaurentPoly c = conway_family(n);
    r.check(make_check(tag + "recurrence = closed form", v.render("t"), jones_family_recurrence(n).render("t")));
    r.check(make_check(tag + "V(1) = 1", "1", detail::str(v.at_one())));
    r.check(make_check(tag + "v2 = -12", "-12", detail::str(v_i(v, 2))));
    r.check(make_check(tag + "v3 = 36n+108", std::to_string(36 * n + 108), detail::str(v_i(v, 3))));
    r.check(make_check(tag + "c4 = -n", std::to_string(-n), c4(c).str()));
    r.check(make_check(tag + "lambda1 = -2", "-2", detail::str(casson_minus_one_surgery(a2(c)))));
    r.check(make_check(tag + "lambda2 = 72n+270", std::to_string(72 * n + 270), detail::str(lambda2_family(n))));
  }
  return r;
}

}  // namespace knotforge
