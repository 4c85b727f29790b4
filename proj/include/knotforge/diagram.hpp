// Oriented link diagrams in planar-diagram (PD) form.
//
// A crossing is the tuple (a,b,c,d) of edge labels read counterclockwise
// starting from the incoming under-edge a; the under-strand runs a -> c and
// the over-strand joins b and d.  A crossing has sign +1 when the
// over-strand runs b -> d (it crosses the under-strand from the under-strand's
// right to its left) and -1 when it runs d -> b.
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace knotforge {

/// Malformed PD text or a label pattern that is not a valid diagram.
class PdParseError : public std::runtime_error {
 public:
  PdParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("PD parse error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Structural problem with a diagram built programmatically.
class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Crossing {
  std::array<int, 4> labels{};
  int sign = 1;

  int under_in() const { return labels[0]; }
  int under_out() const { return labels[2]; }
  int over_in_pos() const { return sign > 0 ? 1 : 3; }
  int over_out_pos() const { return sign > 0 ? 3 : 1; }
  int over_in() const { return labels[over_in_pos()]; }
  int over_out() const { return labels[over_out_pos()]; }
  bool is_in_port(int pos) const { return pos == 0 || pos == over_in_pos(); }

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Contiguous label range of one link component.
struct LabelRun {
  int lo = 0;
  int hi = 0;
  int length() const { return hi - lo + 1; }
  int next(int x) const { return x == hi ? lo : x + 1; }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

struct Port {
  int crossing = -1;
  int pos = -1;
  friend bool operator==(const Port&, const Port&) = default;
};

}  // namespace detail

class PDDiagram;
PDDiagram parse_pd(std::string_view text);

/// An oriented link diagram: PD crossings plus a count of crossingless
/// unknotted components.  Immutable; every operation returns a new value.
class PDDiagram {
 public:
  /// The diagram of one crossingless unknot.
  PDDiagram() : free_loops_(1) {}

  static PDDiagram unknot() { return PDDiagram(); }
  static PDDiagram unlink(int components) {
    if (components < 1) throw DiagramError("unlink needs at least one component");
    PDDiagram d;
    d.free_loops_ = components;
    return d;
  }

  /// Builds a diagram from crossings whose port ids are arbitrary integers
  /// (each id naming one edge, appearing at exactly one in-port and one
  /// out-port).  Labels are recomputed so every component is a consecutive
  /// run.
  static PDDiagram from_ports(const std::vector<std::array<int, 4>>& ports, const std::vector<int>& signs,
                              int free_loops) {
    if (ports.size() != signs.size()) throw DiagramError("from_ports: sign count mismatch");
    if (free_loops < 0) throw DiagramError("from_ports: negative free loop count");
    std::map<int, detail::Port> head;
    std::map<int, detail::Port> tail;
    for (std::size_t k = 0; k < ports.size(); ++k) {
      if (signs[k] != 1 && signs[k] != -1) throw DiagramError("from_ports: sign must be +1 or -1");
      Crossing probe{ports[k], signs[k]};
      for (int p = 0; p < 4; ++p) {
        auto& slot = probe.is_in_port(p) ? head : tail;
        if (!slot.emplace(ports[k][p], detail::Port{static_cast<int>(k), p}).second) {
          throw DiagramError("from_ports: edge id " + std::to_string(ports[k][p]) + " has two " +
                             (probe.is_in_port(p) ? "heads" : "tails"));
        }
      }
    }
    if (head.size() != tail.size()) throw DiagramError("from_ports: dangling edge");
    for (const auto& [id, port] : head) {
      if (!tail.count(id)) throw DiagramError("from_ports: edge " + std::to_string(id) + " has no tail");
    }

    std::map<int, int> relabel;
    int counter = 0;
    for (std::size_t k = 0; k < ports.size(); ++k) {
      for (int p = 0; p < 4; ++p) {
        const int start = ports[k][p];
        if (relabel.count(start)) continue;
        int id = start;
        do {
          relabel.emplace(id, ++counter);
          const detail::Port h = head.at(id);
          id = ports[h.crossing][(h.pos + 2) % 4];
        } while (id != start);
      }
    }

    PDDiagram out;
    out.free_loops_ = free_loops;
    out.crossings_.reserve(ports.size());
    for (std::size_t k = 0; k < ports.size(); ++k) {
      Crossing c;
      c.sign = signs[k];
      for (int p = 0; p < 4; ++p) c.labels[p] = relabel.at(ports[k][p]);
      out.crossings_.push_back(c);
    }
    if (out.crossings_.empty() && out.free_loops_ == 0) throw DiagramError("from_ports: empty diagram");
    out.rebuild_runs();
    out.check_planar();
    return out;
  }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int free_loops() const { return free_loops_; }
  const std::vector<LabelRun>& runs() const { return runs_; }
  int component_count() const { return static_cast<int>(runs_.size()) + free_loops_; }

  int sign(int index) const { return at(index).sign; }
  int writhe() const {
    int w = 0;
    for (const auto& c : crossings_) w += c.sign;
    return w;
  }

  /// Index into runs() of the component containing `label`.
  int component_of(int label) const {
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      if (label >= runs_[i].lo && label <= runs_[i].hi) return static_cast<int>(i);
    }
    throw DiagramError("label " + std::to_string(label) + " not in diagram");
  }

  /// Over/under exchanged at one crossing; labels unchanged.
  PDDiagram switched(int index) const {
    PDDiagram out = *this;
    out.crossings_[checked(index)] = switch_crossing(crossings_[index]);
    return out;
  }

  PDDiagram mirrored() const {
    PDDiagram out = *this;
    for (auto& c : out.crossings_) c = switch_crossing(c);
    return out;
  }

  /// Oriented resolution at one crossing, labels recomputed from scratch.
  PDDiagram smoothed(int index) const {
    const Crossing& c = crossings_[checked(index)];
    return remove_and_merge({index}, {{c.under_in(), c.over_out()}, {c.over_in(), c.under_out()}});
  }

  /// Index of a crossing carrying a Reidemeister-I curl, if any.
  std::optional<int> find_curl() const {
    for (std::size_t k = 0; k < crossings_.size(); ++k) {
      const auto& l = crossings_[k].labels;
      for (int p = 0; p < 4; ++p) {
        if (l[p] == l[(p + 1) % 4]) return static_cast<int>(k);
      }
    }
    return std::nullopt;
  }

  /// All Reidemeister-I curls removed, iterated to a fixpoint.
  PDDiagram reduce_r1() const {
    PDDiagram d = *this;
    while (auto k = d.find_curl()) {
      const auto& l = d.crossings_[*k].labels;
      d = d.remove_and_merge({*k}, {{l[0], l[1]}, {l[1], l[2]}, {l[2], l[3]}});
    }
    return d;
  }

  /// Removes pairs of crossings bounding a bigon across which one strand
  /// passes over twice (Reidemeister II), iterated to a fixpoint.
  PDDiagram cancel_r2() const {
    PDDiagram d = *this;
    while (true) {
      auto pair = d.find_r2_pair();
      if (!pair) return d;
      d = *pair;
    }
  }

  /// Faces of the diagram as cycles of darts.  A dart (k, p) leaves
  /// crossing k through port p; each face is traversed with the face on the
  /// left.
  std::vector<std::vector<detail::Port>> faces() const {
    std::vector<std::vector<detail::Port>> out;
    const auto partner = port_partners();
    std::vector<std::array<bool, 4>> seen(crossings_.size(), {false, false, false, false});
    for (std::size_t k = 0; k < crossings_.size(); ++k) {
      for (int p = 0; p < 4; ++p) {
        if (seen[k][p]) continue;
        std::vector<detail::Port> face;
        detail::Port dart{static_cast<int>(k), p};
        while (!seen[dart.crossing][dart.pos]) {
          seen[dart.crossing][dart.pos] = true;
          face.push_back(dart);
          const detail::Port arrive = partner[dart.crossing][dart.pos];
          dart = detail::Port{arrive.crossing, (arrive.pos + 3) % 4};
        }
        out.push_back(std::move(face));
      }
    }
    return out;
  }

  /// Number of connected pieces of the crossing graph.
  int connected_pieces() const {
    if (crossings_.empty()) return 0;
    detail::DisjointSets sets(crossings_.size());
    const auto partner = port_partners();
    for (std::size_t k = 0; k < crossings_.size(); ++k) {
      for (int p = 0; p < 4; ++p) sets.unite(k, partner[k][p].crossing);
    }
    std::set<std::size_t> roots;
    for (std::size_t k = 0; k < crossings_.size(); ++k) roots.insert(sets.find(k));
    return static_cast<int>(roots.size());
  }

  std::string render() const {
    std::ostringstream os;
    bool first = true;
    if (free_loops_ > 0) {
      os << "loops=" << free_loops_;
      first = false;
    }
    for (const auto& c : crossings_) {
      if (!first) os << ' ';
      first = false;
      os << (over_direction_ambiguous(c) ? (c.sign > 0 ? "Xp(" : "Xm(") : "X(") << c.labels[0] << ',' << c.labels[1] << ',' << c.labels[2] << ',' << c.labels[3] << ')';
    }
    return os.str();
  }

  /// Canonical key: the labels of every component rotated to the choice
  /// giving the lexicographically least sorted crossing list.  Diagrams that
  /// differ only in where each component's labelling starts share a key.
  /// Above kExhaustiveRotations combinations the search is greedy, one
  /// component at a time; the key still determines the diagram.
  static constexpr std::uint64_t kExhaustiveRotations = 4096;

  std::vector<int> canonical_key() const {
    std::vector<int> rotation(runs_.size(), 0);
    auto encode = [&](const std::vector<int>& rot) {
      std::vector<std::array<int, 5>> rows;
      rows.reserve(crossings_.size());
      for (const auto& c : crossings_) {
        std::array<int, 5> row{};
        for (int p = 0; p < 4; ++p) {
          const int label = c.labels[p];
          const auto& run = runs_[run_index_[label]];
          row[p] = run.lo + (label - run.lo + rot[run_index_[label]]) % run.length();
        }
        row[4] = c.sign;
        rows.push_back(row);
      }
      std::sort(rows.begin(), rows.end());
      return rows;
    };
    std::uint64_t combinations = 1;
    for (const auto& run : runs_) {
      combinations *= static_cast<std::uint64_t>(run.length());
      if (combinations > kExhaustiveRotations) break;
    }
    auto best = encode(rotation);
    if (combinations <= kExhaustiveRotations) {
      // Odometer over all rotation tuples.
      std::vector<int> best_rotation = rotation;
      while (true) {
        std::size_t i = 0;
        while (i < runs_.size() && ++rotation[i] == runs_[i].length()) rotation[i++] = 0;
        if (i == runs_.size()) break;
        auto candidate = encode(rotation);
        if (candidate < best) {
          best = std::move(candidate);
          best_rotation = rotation;
        }
      }
    } else {
      for (std::size_t i = 0; i < runs_.size(); ++i) {
        int best_r = 0;
        for (int r = 1; r < runs_[i].length(); ++r) {
          rotation[i] = r;
          auto candidate = encode(rotation);
          if (candidate < best) {
            best = std::move(candidate);
            best_r = r;
          }
        }
        rotation[i] = best_r;
      }
    }
    std::vector<int> key;
    key.reserve(crossings_.size() * 5 + 1);
    key.push_back(free_loops_);
    for (const auto& row : best) key.insert(key.end(), row.begin(), row.end());
    return key;
  }

  friend bool operator==(const PDDiagram& a, const PDDiagram& b) {
    return a.crossings_ == b.crossings_ && a.free_loops_ == b.free_loops_;
  }

  /// Removes the given crossings, identifies the given label pairs and
  /// relabels.  Labels that end up on no remaining crossing become free
  /// loops.
  PDDiagram remove_and_merge(const std::vector<int>& removed, const std::vector<std::pair<int, int>>& merges) const {
    const int edge_count = 2 * crossing_count();
    detail::DisjointSets sets(static_cast<std::size_t>(edge_count) + 1);
    for (const auto& [x, y] : merges) sets.unite(x, y);
    std::vector<bool> gone(crossings_.size(), false);
    for (int k : removed) gone[checked(k)] = true;

    std::vector<std::array<int, 4>> ports;
    std::vector<int> signs;
    std::set<std::size_t> live;
    for (std::size_t k = 0; k < crossings_.size(); ++k) {
      if (gone[k]) continue;
      std::array<int, 4> row{};
      for (int p = 0; p < 4; ++p) {
        row[p] = static_cast<int>(sets.find(crossings_[k].labels[p]));
        live.insert(sets.find(crossings_[k].labels[p]));
      }
      ports.push_back(row);
      signs.push_back(crossings_[k].sign);
    }
    std::set<std::size_t> all;
    for (int label = 1; label <= edge_count; ++label) all.insert(sets.find(label));
    const int new_loops = static_cast<int>(all.size() - live.size());
    return from_ports(ports, signs, free_loops_ + new_loops);
  }

  /// Crossing-level constructor used by the parser; validates everything.
  static PDDiagram validated(std::vector<Crossing> crossings, int free_loops) {
    PDDiagram d;
    d.crossings_ = std::move(crossings);
    d.free_loops_ = free_loops;
    if (d.crossings_.empty() && free_loops == 0) throw DiagramError("empty diagram");
    d.rebuild_runs();
    d.check_orientation();
    d.check_planar();
    return d;
  }

 private:
  static Crossing switch_crossing(const Crossing& c) {
    // New under-strand is the old over-strand; rotate so it starts at its
    // incoming edge.  Positions stay counterclockwise.
    const int start = c.over_in_pos();
    Crossing out;
    for (int i = 0; i < 4; ++i) out.labels[i] = c.labels[(start + i) % 4];
    // Old under-strand a -> c now sits at positions (4-start) and (6-start).
    const int old_a_pos = (4 - start) % 4;
    out.sign = old_a_pos == 1 ? 1 : -1;
    return out;
  }

  /// True when the labels alone allow both over-strand directions.
  bool over_direction_ambiguous(const Crossing& c) const {
    const LabelRun& run = runs_[static_cast<std::size_t>(component_of(c.labels[1]))];
    return run.next(c.labels[1]) == c.labels[3] && run.next(c.labels[3]) == c.labels[1];
  }

  std::size_t checked(int index) const {
    if (index < 0 || index >= crossing_count()) {
      throw std::out_of_range("crossing index " + std::to_string(index) + " out of range");
    }
    return static_cast<std::size_t>(index);
  }
  const Crossing& at(int index) const { return crossings_[checked(index)]; }

  std::vector<std::array<detail::Port, 4>> port_partners() const {
    std::map<int, std::vector<detail::Port>> where;
    for (std::size_t k = 0; k < crossings_.size(); ++k) {
      for (int p = 0; p < 4; ++p) where[crossings_[k].labels[p]].push_back({static_cast<int>(k), p});
    }
    std::vector<std::array<detail::Port, 4>> partner(crossings_.size());
    for (const auto& [label, ports] : where) {
      if (ports.size() != 2) throw DiagramError("label " + std::to_string(label) + " does not occur twice");
      partner[ports[0].crossing][ports[0].pos] = ports[1];
      partner[ports[1].crossing][ports[1].pos] = ports[0];
    }
    return partner;
  }

  void rebuild_runs() {
    runs_.clear();
    const int edge_count = 2 * crossing_count();
    run_index_.assign(static_cast<std::size_t>(edge_count) + 1, -1);
    if (edge_count == 0) return;
    detail::DisjointSets sets(static_cast<std::size_t>(edge_count) + 1);
    for (const auto& c : crossings_) {
      sets.unite(c.labels[0], c.labels[2]);
      sets.unite(c.labels[1], c.labels[3]);
    }
    std::map<std::size_t, LabelRun> by_root;
    std::map<std::size_t, int> sizes;
    for (int label = 1; label <= edge_count; ++label) {
      auto root = sets.find(label);
      auto [it, fresh] = by_root.try_emplace(root, LabelRun{label, label});
      if (!fresh) it->second.hi = label;
      ++sizes[root];
    }
    for (const auto& [root, run] : by_root) {
      if (run.length() != sizes[root]) throw DiagramError("component labels are not a consecutive run");
    }
    for (const auto& [root, run] : by_root) runs_.push_back(run);
    std::sort(runs_.begin(), runs_.end(), [](const LabelRun& a, const LabelRun& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      for (int label = runs_[i].lo; label <= runs_[i].hi; ++label) run_index_[label] = static_cast<int>(i);
    }
  }

  void check_orientation() const {
    for (std::size_t k = 0; k < crossings_.size(); ++k) {
      const Crossing& c = crossings_[k];
      const auto& run_u = runs_[run_index_[c.under_in()]];
      const auto& run_o = runs_[run_index_[c.over_in()]];
      if (run_u.next(c.under_in()) != c.under_out() || run_o.next(c.over_in()) != c.over_out()) {
        throw DiagramError("crossing " + std::to_string(k) + " is not consistent with the label runs");
      }
    }
    std::vector<int> heads(static_cast<std::size_t>(2 * crossing_count()) + 1, 0);
    for (const auto& c : crossings_) {
      ++heads[c.under_in()];
      ++heads[c.over_in()];
    }
    for (std::size_t label = 1; label < heads.size(); ++label) {
      if (heads[label] != 1) throw DiagramError("edge " + std::to_string(label) + " does not have exactly one head");
    }
  }

  void check_planar() const {
    if (crossings_.empty()) return;
    const int faces_found = static_cast<int>(faces().size());
    const int expected = crossing_count() + 2 * connected_pieces();
    if (faces_found != expected) {
      throw DiagramError("diagram is not planar (" + std::to_string(faces_found) + " faces, expected " +
                         std::to_string(expected) + ")");
    }
  }

  std::optional<PDDiagram> find_r2_pair() const {
    // A bigon face has two darts; its two crossings share both edges.
    for (const auto& face : faces()) {
      if (face.size() != 2) continue;
      const int k1 = face[0].crossing;
      const int k2 = face[1].crossing;
      if (k1 == k2) continue;
      const int e = crossings_[k1].labels[face[0].pos];
      const int f = crossings_[k2].labels[face[1].pos];
      auto is_over = [&](int k, int label) {
        const auto& l = crossings_[k].labels;
        return l[1] == label || l[3] == label;
      };
      if (is_over(k1, e) != is_over(k2, e)) continue;  // clasp, not an R2 bigon
      std::vector<std::pair<int, int>> merges;
      for (int k : {k1, k2}) {
        for (int p = 0; p < 4; ++p) merges.emplace_back(crossings_[k].labels[p], crossings_[k].labels[(p + 2) % 4]);
      }
      merges.emplace_back(e, e);
      merges.emplace_back(f, f);
      return remove_and_merge({k1, k2}, merges);
    }
    return std::nullopt;
  }

  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::vector<LabelRun> runs_;
  std::vector<int> run_index_;
};

/// Parses whitespace-separated "X(a,b,c,d)" tokens with an optional
/// "loops=k" token; '#' starts a comment running to end of line.  The
/// over-strand direction comes from the label order; "Xp(...)" and
/// "Xm(...)" state the sign outright, which is needed when a two-edge
/// component passes over at both of its crossings.
inline PDDiagram parse_pd(std::string_view text) {
  struct RawCrossing {
    std::array<int, 4> labels{};
    std::size_t offset = 0;
    int explicit_sign = 0;
  };
  std::vector<RawCrossing> raw;
  std::optional<int> loops;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size()) {
      if (text[i] == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      } else {
        break;
      }
    }
  };
  auto read_int = [&](std::size_t& pos) -> long long {
    const std::size_t start = pos;
    long long value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > 1'000'000) throw PdParseError(start, "integer too large");
      ++pos;
    }
    if (pos == start) throw PdParseError(start, "expected a non-negative integer");
    return value;
  };

  skip_space();
  while (i < text.size()) {
    const std::size_t token_start = i;
    if (text.substr(i, 6) == "loops=") {
      if (loops) throw PdParseError(token_start, "duplicate loops= header");
      i += 6;
      loops = static_cast<int>(read_int(i));
    } else if (text[i] == 'X') {
      RawCrossing rc;
      rc.offset = token_start;
      ++i;
      if (i < text.size() && (text[i] == 'p' || text[i] == 'm')) rc.explicit_sign = text[i++] == 'p' ? 1 : -1;
      if (i >= text.size() || text[i] != '(') throw PdParseError(token_start, "unrecognized token");
      ++i;
      for (int p = 0; p < 4; ++p) {
        while (i < text.size() && text[i] == ' ') ++i;
        const std::size_t label_start = i;
        const long long v = read_int(i);
        if (v < 1) throw PdParseError(label_start, "edge labels must be positive");
        rc.labels[p] = static_cast<int>(v);
        while (i < text.size() && text[i] == ' ') ++i;
        const char expected = p < 3 ? ',' : ')';
        if (i >= text.size() || text[i] != expected) {
          throw PdParseError(i, std::string("expected '") + expected + "'");
        }
        ++i;
      }
      raw.push_back(rc);
    } else {
      throw PdParseError(token_start, "unrecognized token");
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#') {
      throw PdParseError(i, "tokens must be separated by whitespace");
    }
    skip_space();
  }

  const int free_loops = loops.value_or(raw.empty() ? 1 : 0);
  if (raw.empty() && free_loops == 0) throw PdParseError(0, "diagram has no components");

  // Label occurrence counts.
  const int edge_count = 2 * static_cast<int>(raw.size());
  std::map<int, std::vector<std::size_t>> seen;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    for (int p = 0; p < 4; ++p) seen[raw[k].labels[p]].push_back(k);
  }
  for (const auto& [label, where] : seen) {
    if (label > edge_count) {
      throw PdParseError(raw[where.front()].offset, "label " + std::to_string(label) + " exceeds 2*crossings");
    }
    if (where.size() != 2) {
      throw PdParseError(raw[where.front()].offset,
                         "label " + std::to_string(label) + " occurs " + std::to_string(where.size()) + " times");
    }
  }

  // Component runs from the strand pairings.
  detail::DisjointSets sets(static_cast<std::size_t>(edge_count) + 1);
  for (const auto& rc : raw) {
    sets.unite(rc.labels[0], rc.labels[2]);
    sets.unite(rc.labels[1], rc.labels[3]);
  }
  std::map<std::size_t, LabelRun> runs;
  std::map<std::size_t, int> sizes;
  for (int label = 1; label <= edge_count; ++label) {
    auto root = sets.find(label);
    auto [it, fresh] = runs.try_emplace(root, LabelRun{label, label});
    if (!fresh) it->second.hi = label;
    ++sizes[root];
  }
  auto run_of = [&](int label) -> const LabelRun& { return runs.at(sets.find(label)); };
  for (const auto& [root, run] : runs) {
    if (run.length() != sizes[root]) {
      throw PdParseError(0, "component labels " + std::to_string(run.lo) + ".." + std::to_string(run.hi) +
                                " are not consecutive");
    }
  }

  // Orientation: under-strand is fixed; over-strand direction from the run
  // arithmetic, with head/tail bookkeeping for two-edge components.
  std::vector<int> sign(raw.size(), 0);
  std::vector<int> head_count(static_cast<std::size_t>(edge_count) + 1, 0);
  std::vector<int> tail_count(static_cast<std::size_t>(edge_count) + 1, 0);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& l = raw[k].labels;
    if (run_of(l[0]).next(l[0]) != l[2]) {
      throw PdParseError(raw[k].offset, "under-strand labels " + std::to_string(l[0]) + "," + std::to_string(l[2]) +
                                            " are not consecutive");
    }
    ++head_count[l[0]];
    ++tail_count[l[2]];
    const bool b_to_d = run_of(l[1]).next(l[1]) == l[3];
    const bool d_to_b = run_of(l[3]).next(l[3]) == l[1];
    if (!b_to_d && !d_to_b) {
      throw PdParseError(raw[k].offset, "over-strand labels " + std::to_string(l[1]) + "," + std::to_string(l[3]) +
                                            " are not consecutive");
    }
    if (const int s = raw[k].explicit_sign; s != 0) {
      if ((s > 0 && !b_to_d) || (s < 0 && !d_to_b)) {
        throw PdParseError(raw[k].offset, "explicit crossing sign contradicts the label order");
      }
      sign[k] = s;
      ++head_count[s > 0 ? l[1] : l[3]];
      ++tail_count[s > 0 ? l[3] : l[1]];
    } else if (b_to_d != d_to_b) {
      sign[k] = b_to_d ? 1 : -1;
      ++head_count[b_to_d ? l[1] : l[3]];
      ++tail_count[b_to_d ? l[3] : l[1]];
    }
  }
  auto assign = [&](std::size_t k, int s) {
    const auto& l = raw[k].labels;
    sign[k] = s;
    ++head_count[s > 0 ? l[1] : l[3]];
    ++tail_count[s > 0 ? l[3] : l[1]];
  };
  bool pending = true;
  while (pending) {
    pending = false;
    bool progress = false;
    for (std::size_t k = 0; k < raw.size(); ++k) {
      if (sign[k] != 0) continue;
      const auto& l = raw[k].labels;
      if (head_count[l[1]] > 0 || tail_count[l[3]] > 0) {
        assign(k, -1);
        progress = true;
      } else if (head_count[l[3]] > 0 || tail_count[l[1]] > 0) {
        assign(k, 1);
        progress = true;
      } else {
        pending = true;
      }
    }
    if (pending && !progress) {
      for (std::size_t k = 0; k < raw.size(); ++k) {
        if (sign[k] == 0) {
          assign(k, 1);
          break;
        }
      }
    }
  }
  for (int label = 1; label <= edge_count; ++label) {
    if (head_count[label] != 1 || tail_count[label] != 1) {
      throw PdParseError(raw[seen[label].front()].offset,
                         "edge " + std::to_string(label) + " cannot be oriented consistently");
    }
  }

  std::vector<Crossing> crossings;
  crossings.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) crossings.push_back(Crossing{raw[k].labels, sign[k]});
  try {
    return PDDiagram::validated(std::move(crossings), free_loops);
  } catch (const DiagramError& e) {
    throw PdParseError(0, e.what());
  }
}

/// Planar surgery that inserts |n| full twists between two edges bordering a
/// common face.  Positive n gives left-handed twists.
struct TwistInsertion {
  PDDiagram diagram;
  /// Labels, in the new diagram, of the two edges leaving the twist region
  /// on the side the original first edge was traversed from.
  std::pair<int, int> far_site;
  std::pair<int, int> near_site;
};

inline TwistInsertion insert_full_twists_at(const PDDiagram& d, int first_edge, int second_edge, int n,
                                            int face_choice = 0) {
  if (first_edge == second_edge) throw DiagramError("twist site edges coincide");
  const auto& crossings = d.crossings();
  const int edge_count = 2 * d.crossing_count();
  for (int e : {first_edge, second_edge}) {
    if (e < 1 || e > edge_count) throw DiagramError("twist site edge " + std::to_string(e) + " not in diagram");
  }

  // Locate a face bordering both edges and the darts along them.
  struct Candidate {
    detail::Port dart1;
    detail::Port dart2;
  };
  std::vector<Candidate> candidates;
  for (const auto& face : d.faces()) {
    std::optional<detail::Port> d1;
    std::optional<detail::Port> d2;
    for (const auto& dart : face) {
      const int label = crossings[dart.crossing].labels[dart.pos];
      if (label == first_edge && !d1) d1 = dart;
      if (label == second_edge && !d2) d2 = dart;
    }
    if (d1 && d2) candidates.push_back({*d1, *d2});
  }
  if (candidates.empty()) throw DiagramError("twist site edges do not border a common face");
  if (face_choice < 0 || face_choice >= static_cast<int>(candidates.size())) {
    throw DiagramError("twist face choice out of range");
  }
  const Candidate site = candidates[static_cast<std::size_t>(face_choice)];

  std::vector<std::array<int, 4>> ports;
  std::vector<int> signs;
  for (const auto& c : crossings) {
    ports.push_back(c.labels);
    signs.push_back(c.sign);
  }
  if (n == 0) {
    return TwistInsertion{d, {first_edge, second_edge}, {first_edge, second_edge}};
  }

  auto other_port = [&](detail::Port from) {
    const int label = crossings[from.crossing].labels[from.pos];
    for (std::size_t k = 0; k < crossings.size(); ++k) {
      for (int p = 0; p < 4; ++p) {
        if (crossings[k].labels[p] == label && !(static_cast<int>(k) == from.crossing && p == from.pos)) {
          return detail::Port{static_cast<int>(k), p};
        }
      }
    }
    throw DiagramError("unmatched edge");
  };
  // Local picture: the first edge is a vertical line on the left traversed
  // downward by the face, the second a vertical line on the right traversed
  // upward; the face lies between them.
  const detail::Port left_top = site.dart1;
  const detail::Port left_bottom = other_port(site.dart1);
  const detail::Port right_bottom = site.dart2;
  const detail::Port right_top = other_port(site.dart2);
  const bool left_up = crossings[left_top.crossing].is_in_port(left_top.pos);
  const bool right_up = !crossings[right_bottom.crossing].is_in_port(right_bottom.pos);

  const int twist_crossings = 2 * (n > 0 ? n : -n);
  int next_id = edge_count + 1;
  // seg[level][side]: side 0 = left, 1 = right.
  std::vector<std::array<int, 2>> seg(static_cast<std::size_t>(twist_crossings) + 1);
  for (auto& level : seg) level = {next_id++, next_id++};
  ports[left_bottom.crossing][left_bottom.pos] = seg.front()[0];
  ports[right_bottom.crossing][right_bottom.pos] = seg.front()[1];
  ports[left_top.crossing][left_top.pos] = seg.back()[0];
  ports[right_top.crossing][right_top.pos] = seg.back()[1];

  // Strand A starts bottom-left, strand B bottom-right; they swap sides at
  // every crossing.  Port order counterclockwise: SW, SE, NE, NW.
  for (int i = 1; i <= twist_crossings; ++i) {
    const bool a_on_left = (i - 1) % 2 == 0;
    const bool slash_up = a_on_left ? left_up : right_up;      // SW -> NE strand
    const bool backslash_up = a_on_left ? right_up : left_up;  // SE -> NW strand
    const std::array<int, 4> ccw = {seg[i - 1][0], seg[i - 1][1], seg[i][1], seg[i][0]};
    // Positions in ccw: SW=0, SE=1, NE=2, NW=3.
    const int slash_in = slash_up ? 0 : 2;
    const int backslash_in = backslash_up ? 1 : 3;
    const bool slash_over = n < 0;
    const int under_in = slash_over ? backslash_in : slash_in;
    const int over_in = slash_over ? slash_in : backslash_in;
    std::array<int, 4> row{};
    for (int p = 0; p < 4; ++p) row[p] = ccw[(under_in + p) % 4];
    ports.push_back(row);
    signs.push_back(((over_in - under_in + 4) % 4) == 1 ? 1 : -1);
  }

  // Track the new labels of the boundary segments through relabelling.
  PDDiagram out = PDDiagram::from_ports(ports, signs, d.free_loops());
  auto find_label = [&](int id) {
    for (std::size_t k = 0; k < ports.size(); ++k) {
      for (int p = 0; p < 4; ++p) {
        if (ports[k][p] == id) return out.crossings()[k].labels[p];
      }
    }
    throw DiagramError("lost twist segment");
  };
  return TwistInsertion{out,
                        {find_label(seg.back()[0]), find_label(seg.back()[1])},
                        {find_label(seg.front()[0]), find_label(seg.front()[1])}};
}

inline PDDiagram insert_full_twists(const PDDiagram& d, std::pair<int, int> site, int n) {
  return insert_full_twists_at(d, site.first, site.second, n).diagram;
}

/// Front projection of a Legendrian link: writhe and cusp count.
struct FrontDiagram {
  int writhe = 0;
  int cusps = 2;
};

inline int tb_from_front(const FrontDiagram& f) {
  if (f.cusps < 2 || f.cusps % 2 != 0) {
    throw std::invalid_argument("front must have an even number of cusps, at least 2");
  }
  return f.writhe - f.cusps / 2;
}

}  // namespace knotforge
