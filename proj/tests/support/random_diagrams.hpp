// Random diagrams from braid closures, and other helpers for the tests.
#pragma once

#include "knotforge/diagram.hpp"

#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace knotforge::testing {

/// Closure of a braid word; generator +i / -i crosses strands i and i+1
/// (1-based), with the strand from position i passing under / over.
inline PDDiagram braid_closure(int strands, const std::vector<int>& word) {
  std::vector<int> cur(static_cast<std::size_t>(strands));
  for (int i = 0; i < strands; ++i) cur[i] = i + 1;
  int next_id = strands + 1;
  std::vector<std::array<int, 4>> ports;
  std::vector<int> signs;
  for (int g : word) {
    const int i = (g > 0 ? g : -g) - 1;
    const int in_l = cur[i];
    const int in_r = cur[i + 1];
    const int out_l = next_id++;
    const int out_r = next_id++;
    // Around the crossing counterclockwise: in_l (SW), in_r (SE), out_r (NE), out_l (NW).
    if (g > 0) {
      ports.push_back({in_l, in_r, out_r, out_l});  // over strand in_r -> out_l, b -> d
      signs.push_back(1);
    } else {
      ports.push_back({in_r, out_r, out_l, in_l});  // over strand in_l -> out_r, d -> b
      signs.push_back(-1);
    }
    cur[i] = out_l;
    cur[i + 1] = out_r;
  }
  int free_loops = 0;
  std::map<int, int> close;
  for (int i = 0; i < strands; ++i) {
    if (cur[i] == i + 1) {
      ++free_loops;
    } else {
      close[cur[i]] = i + 1;
    }
  }
  for (auto& row : ports) {
    for (int& id : row) {
      if (auto it = close.find(id); it != close.end()) id = it->second;
    }
  }
  return PDDiagram::from_ports(ports, signs, free_loops);
}

struct RandomBraid {
  int strands;
  std::vector<int> word;
};

inline RandomBraid random_braid(std::mt19937_64& rng, int max_strands, int max_length) {
  std::uniform_int_distribution<int> strand_dist(2, max_strands);
  RandomBraid b{strand_dist(rng), {}};
  std::uniform_int_distribution<int> len_dist(1, max_length);
  std::uniform_int_distribution<int> gen_dist(1, b.strands - 1);
  std::bernoulli_distribution sign_dist(0.5);
  const int len = len_dist(rng);
  for (int k = 0; k < len; ++k) b.word.push_back(sign_dist(rng) ? gen_dist(rng) : -gen_dist(rng));
  return b;
}

inline PDDiagram random_diagram(std::mt19937_64& rng, int max_strands = 4, int max_length = 10) {
  const RandomBraid b = random_braid(rng, max_strands, max_length);
  return braid_closure(b.strands, b.word);
}

/// Same diagram with every component's labels rotated by a random offset.
inline PDDiagram rotate_labels(const PDDiagram& d, std::mt19937_64& rng) {
  std::map<int, int> shift;
  for (const auto& run : d.runs()) {
    std::uniform_int_distribution<int> dist(0, run.length() - 1);
    const int r = dist(rng);
    for (int l = run.lo; l <= run.hi; ++l) shift[l] = run.lo + (l - run.lo + r) % run.length();
  }
  std::string text = d.free_loops() > 0 ? "loops=" + std::to_string(d.free_loops()) : "";
  for (const auto& c : d.crossings()) {
    text += std::string(c.sign > 0 ? " Xp(" : " Xm(") + std::to_string(shift[c.labels[0]]) + "," + std::to_string(shift[c.labels[1]]) + "," +
            std::to_string(shift[c.labels[2]]) + "," + std::to_string(shift[c.labels[3]]) + ")";
  }
  return parse_pd(text);
}

}  // namespace knotforge::testing
