// Conway and Jones polynomials by skein recursion, and a Kauffman-bracket
// state sum that computes the Jones polynomial independently.
//
// Skein relations (K+ / K- / K0 differ at one crossing of sign +1 / -1 /
// smoothed):
//   conway(K+) - conway(K-) = -z conway(K0),          conway(unknot) = 1
//   t V(K+) - t^{-1} V(K-) = (t^{1/2} - t^{-1/2}) V(K0),   V(unknot) = 1
#pragma once

#include "knotforge/diagram.hpp"
#include "knotforge/laurent.hpp"

#include <atomic>
#include <cstdint>
#include <future>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace knotforge {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct KeyHash {
  std::size_t operator()(const std::vector<int>& key) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : key) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Index of the first crossing met on its under-strand before its
/// over-strand, walking components in label order from their smallest
/// label.  Absent when the diagram is descending.
inline std::optional<int> first_ascending_crossing(const PDDiagram& d) {
  const auto& crossings = d.crossings();
  const int edge_count = 2 * d.crossing_count();
  std::vector<detail::Port> head(static_cast<std::size_t>(edge_count) + 1);
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    for (int p = 0; p < 4; ++p) {
      if (crossings[k].is_in_port(p)) head[crossings[k].labels[p]] = {static_cast<int>(k), p};
    }
  }
  std::vector<bool> visited(crossings.size(), false);
  for (const auto& run : d.runs()) {
    for (int label = run.lo; label <= run.hi; ++label) {
      const auto [k, p] = head[label];
      if (visited[k]) continue;
      visited[k] = true;
      if (p == 0) return k;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Memo table shared between recursion branches.  Values for one key are
/// always equal, so concurrent writers cannot disagree; an attempt to store
/// a different value is a logic error.
class SkeinMemo {
 public:
  std::optional<LaurentPoly> lookup(const std::vector<int>& key) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    return it->second;
  }

  void store(const std::vector<int>& key, const LaurentPoly& value) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = table_.try_emplace(key, value);
    if (!inserted && it->second != value) throw std::logic_error("skein memo: conflicting values for one diagram");
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::vector<int>, LaurentPoly, detail::KeyHash> table_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

struct SkeinOptions {
  int crossing_budget = 24;
  /// Recursion levels (from the top) at which the switched branch runs on
  /// its own thread.  Zero keeps everything on the calling thread.
  int parallel_depth = 0;
  bool memoize = true;
};

class SkeinEngine {
 public:
  explicit SkeinEngine(SkeinOptions options = {}) : options_(options) {}

  /// Conway polynomial, variable z.
  LaurentPoly conway(const PDDiagram& d) {
    check_budget(d);
    return evaluate(d, Kind::conway, 0);
  }

  /// Jones polynomial, variable t (half-integer exponents for links with an
  /// even number of components).
  LaurentPoly jones(const PDDiagram& d) {
    check_budget(d);
    return evaluate(d, Kind::jones, 0);
  }

  const SkeinMemo& conway_memo() const { return memo_[0]; }
  const SkeinMemo& jones_memo() const { return memo_[1]; }
  const SkeinOptions& options() const { return options_; }

  /// Jones value of the k-component unlink, (t^{1/2} + t^{-1/2})^{k-1}.
  static LaurentPoly jones_unlink(int components) {
    const LaurentPoly delta = vars::sqrt_t() + vars::sqrt_t().inverted();
    return delta.pow(static_cast<unsigned>(components - 1));
  }

 private:
  enum class Kind { conway = 0, jones = 1 };

  void check_budget(const PDDiagram& d) const {
    if (d.crossing_count() > options_.crossing_budget) {
      throw BudgetExceeded("diagram has " + std::to_string(d.crossing_count()) + " crossings; budget is " +
                           std::to_string(options_.crossing_budget));
    }
  }

  LaurentPoly evaluate(const PDDiagram& input, Kind kind, int depth) {
    const PDDiagram d = input.reduce_r1();
    const auto k = detail::first_ascending_crossing(d);
    if (!k) return unlink_value(d.component_count(), kind);

    SkeinMemo& memo = memo_[static_cast<int>(kind)];
    std::vector<int> key;
    if (options_.memoize) {
      key = d.canonical_key();
      if (auto hit = memo.lookup(key)) return *hit;
    }

    const int s = d.sign(*k);
    const PDDiagram switched = d.switched(*k);
    const PDDiagram smoothed = d.smoothed(*k);
    LaurentPoly v_switched;
    LaurentPoly v_smoothed;
    if (depth < options_.parallel_depth) {
      auto pending = std::async(std::launch::async, [&] { return evaluate(switched, kind, depth + 1); });
      v_smoothed = evaluate(smoothed, kind, depth + 1);
      v_switched = pending.get();
    } else {
      v_switched = evaluate(switched, kind, depth + 1);
      v_smoothed = evaluate(smoothed, kind, depth + 1);
    }

    LaurentPoly result;
    if (kind == Kind::conway) {
      // K+ = K- - z K0 ;  K- = K+ + z K0
      const LaurentPoly z = vars::z_pow(1);
      result = s > 0 ? v_switched - z * v_smoothed : v_switched + z * v_smoothed;
    } else {
      const LaurentPoly root_diff = vars::sqrt_t() - vars::sqrt_t().inverted();
      if (s > 0) {
        // V(K+) = t^{-2} V(K-) + t^{-1} (t^{1/2} - t^{-1/2}) V(K0)
        result = vars::t_pow(-2) * v_switched + vars::t_pow(-1) * root_diff * v_smoothed;
      } else {
        // V(K-) = t^{2} V(K+) - t (t^{1/2} - t^{-1/2}) V(K0)
        result = vars::t_pow(2) * v_switched - vars::t_pow(1) * root_diff * v_smoothed;
      }
    }
    if (options_.memoize) memo.store(key, result);
    return result;
  }

  static LaurentPoly unlink_value(int components, Kind kind) {
    if (kind == Kind::conway) return components == 1 ? LaurentPoly(1) : LaurentPoly();
    return jones_unlink(components);
  }

  SkeinOptions options_;
  SkeinMemo memo_[2];
};

inline LaurentPoly conway(const PDDiagram& d) { return SkeinEngine().conway(d); }
inline LaurentPoly jones(const PDDiagram& d) { return SkeinEngine().jones(d); }

/// Variable substitution taking the writhe-normalized bracket, a polynomial
/// in A with exponents in 2Z, to the Jones polynomial: A^{2m} maps to
/// kBracketSign^m * t^{kBracketDirection * m / 2}.
inline constexpr int kBracketDirection = -1;
inline constexpr int kBracketSign = -1;

/// Jones polynomial from the Kauffman bracket state sum over all 2^N
/// smoothings.  The A-smoothing of X(a,b,c,d) joins a-b and c-d.
inline LaurentPoly jones_bracket_oracle(const PDDiagram& d, int crossing_budget = 20) {
  const int n = d.crossing_count();
  if (n > crossing_budget) {
    throw BudgetExceeded("bracket state sum limited to " + std::to_string(crossing_budget) + " crossings");
  }
  const auto& crossings = d.crossings();
  const int edge_count = 2 * n;
  // histogram[a_count][loops]
  std::vector<std::vector<Integer>> histogram(static_cast<std::size_t>(n) + 1,
                                              std::vector<Integer>(static_cast<std::size_t>(edge_count) + 2));
  std::vector<int> parent(static_cast<std::size_t>(edge_count) + 1);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < states; ++mask) {
    for (int i = 0; i <= edge_count; ++i) parent[i] = i;
    int loops = edge_count;
    auto join = [&](int x, int y) {
      x = find(x);
      y = find(y);
      if (x != y) {
        parent[x] = y;
        --loops;
      }
    };
    int a_count = 0;
    for (int k = 0; k < n; ++k) {
      const auto& l = crossings[k].labels;
      if ((mask >> k) & 1u) {
        join(l[0], l[1]);
        join(l[2], l[3]);
        ++a_count;
      } else {
        join(l[0], l[3]);
        join(l[1], l[2]);
      }
    }
    ++histogram[a_count][loops];
  }

  // Bracket as a map from A-exponent to integer coefficient.
  std::map<int, Integer> bracket;
  auto add = [&](std::map<int, Integer>& poly, int e, const Integer& c) {
    if (c == 0) return;
    auto& slot = poly[e];
    slot += c;
    if (slot == 0) poly.erase(e);
  };
  auto mul = [&](const std::map<int, Integer>& a, const std::map<int, Integer>& b) {
    std::map<int, Integer> out;
    for (const auto& [ea, ca] : a) {
      for (const auto& [eb, cb] : b) add(out, ea + eb, ca * cb);
    }
    return out;
  };
  const std::map<int, Integer> delta = {{2, -1}, {-2, -1}};
  std::vector<std::map<int, Integer>> delta_pow = {{{0, 1}}};
  const int max_loops = edge_count + d.free_loops();
  for (int i = 1; i <= max_loops; ++i) delta_pow.push_back(mul(delta_pow.back(), delta));
  for (int a = 0; a <= n; ++a) {
    for (int loops = 0; loops <= edge_count + 1; ++loops) {
      const Integer& count = histogram[a][loops];
      if (count == 0) continue;
      const int total_loops = loops + d.free_loops();
      for (const auto& [e, c] : delta_pow[total_loops - 1]) add(bracket, e + a - (n - a), c * count);
    }
  }

  // Writhe normalization (-A^3)^{-w} with the geometric writhe, which is the
  // negative of the sign sum in this crossing convention.
  const int geometric_writhe = -d.writhe();
  const int shift = -3 * geometric_writhe;
  const Integer factor = (geometric_writhe % 2 == 0) ? 1 : -1;

  LaurentPoly::TermMap terms;
  for (const auto& [e, c] : bracket) {
    const int a_exp = e + shift;
    if (a_exp % 2 != 0) throw std::logic_error("bracket oracle: odd power of A");
    const int m = a_exp / 2;
    const Integer sign = (kBracketSign < 0 && m % 2 != 0) ? -1 : 1;
    terms[kBracketDirection * m] += Rational(c * factor * sign);
  }
  return LaurentPoly::from_doubled(terms);
}

}  // namespace knotforge
