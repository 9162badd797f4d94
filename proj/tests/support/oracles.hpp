#pragma once

// Test-only reference implementations. Nothing here touches DdManager: truth
// tables are computed from formulas directly and reduced diagrams are obtained
// by reducing the full decision tree level by level.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "deldd/bool_formula.hpp"
#include "deldd/formula.hpp"
#include "deldd/knowledge.hpp"
#include "deldd/manager.hpp"

namespace deldd::testing {

/// State whose bits spell `index` with variable 0 as the most significant bit.
inline State state_from_index(std::size_t n, std::uint64_t index) {
  State s(n);
  for (std::uint32_t i = 0; i < n; ++i) s.set(VarId{i}, (index >> (n - 1 - i)) & 1U);
  return s;
}

/// Truth table indexed as in state_from_index.
inline std::vector<bool> truth_table(const BoolFormula& f, std::size_t n) {
  std::vector<bool> table(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < table.size(); ++i) table[i] = f.holds(state_from_index(n, i));
  return table;
}

inline BoolFormula random_formula(std::mt19937_64& rng, std::size_t n, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  std::uniform_int_distribution<std::uint32_t> var(0, static_cast<std::uint32_t>(n - 1));
  const int k = pick(rng);
  switch (k) {
    case 0:
    case 1:
      return BoolFormula::atom(VarId{var(rng)});
    case 2:
      return !random_formula(rng, n, depth - 1);
    case 3:
      return random_formula(rng, n, depth - 1) && random_formula(rng, n, depth - 1);
    case 4:
      return random_formula(rng, n, depth - 1) || random_formula(rng, n, depth - 1);
    case 5:
      return BoolFormula::exclusive({random_formula(rng, n, depth - 1), random_formula(rng, n, depth - 1)});
    case 6:
      return BoolFormula::implication(random_formula(rng, n, depth - 1), random_formula(rng, n, depth - 1));
    default:
      return std::uniform_int_distribution<int>(0, 9)(rng) == 0 ? BoolFormula::top()
                                                                 : BoolFormula::atom(VarId{var(rng)});
  }
}

/// Reduces the full decision tree of `table` (2^n entries) under `rule` and
/// returns the number of internal nodes. Identical subtrees merge by
/// (variable, then-id, else-id); ids 0 and 1 are the leaves.
inline std::size_t reduced_tree_size(const std::vector<bool>& table, std::size_t n, Rule rule) {
  std::map<std::tuple<std::size_t, int, int>, int> nodes;
  auto build = [&](auto&& self, std::size_t level, std::uint64_t offset) -> int {
    if (level == n) return table[offset] ? 1 : 0;
    const std::uint64_t half = std::uint64_t{1} << (n - level - 1);
    const int hi = self(self, level + 1, offset + half);
    const int lo = self(self, level + 1, offset);
    switch (rule) {
      case Rule::EQ:
        if (hi == lo) return hi;
        break;
      case Rule::T0:
        if (hi == 0) return lo;
        break;
      case Rule::T1:
        if (hi == 1) return lo;
        break;
      case Rule::E0:
        if (lo == 0) return hi;
        break;
      case Rule::E1:
        if (lo == 1) return hi;
        break;
    }
    auto key = std::make_tuple(level, hi, lo);
    auto it = nodes.find(key);
    if (it != nodes.end()) return it->second;
    const int id = static_cast<int>(nodes.size()) + 2;
    nodes.emplace(key, id);
    return id;
  };
  build(build, 0, 0);
  // Every interned node is reachable: it was created on the way up from the root.
  return nodes.size();
}

/// Internal node count of the complement-edge BDD: EQ nodes whose subfunctions
/// coincide up to negation share one node.
inline std::size_t reduced_tree_size_complement(const std::vector<bool>& table, std::size_t n) {
  std::set<std::pair<std::size_t, std::vector<bool>>> classes;
  auto visit = [&](auto&& self, std::size_t level, std::vector<bool> slice) -> void {
    if (level == n) return;
    const std::size_t half = slice.size() / 2;
    std::vector<bool> lo(slice.begin(), slice.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<bool> hi(slice.begin() + static_cast<std::ptrdiff_t>(half), slice.end());
    if (lo == hi) {
      self(self, level + 1, lo);
      return;
    }
    std::vector<bool> neg(slice.size());
    for (std::size_t i = 0; i < slice.size(); ++i) neg[i] = !slice[i];
    auto key = std::make_pair(level, std::min(slice, neg));
    if (!classes.insert(key).second) return;
    self(self, level + 1, hi);
    self(self, level + 1, lo);
  };
  visit(visit, 0, table);
  return classes.size();
}

inline std::size_t oracle_size(const std::vector<bool>& table, std::size_t n, Backend b) {
  return b.complement_edges ? reduced_tree_size_complement(table, n) : reduced_tree_size(table, n, b.rule);
}

/// Random DEL formula over n variables and `agents` agents, with K, Kw, [!] and [?!].
inline DelFormula random_del_formula(std::mt19937_64& rng, std::size_t n, std::size_t agents, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 10);
  std::uniform_int_distribution<std::uint32_t> var(0, static_cast<std::uint32_t>(n - 1));
  std::uniform_int_distribution<std::uint32_t> agent(0, static_cast<std::uint32_t>(agents - 1));
  auto sub = [&] { return random_del_formula(rng, n, agents, depth - 1); };
  switch (pick(rng)) {
    case 0:
    case 1:
      return DelFormula::atom(VarId{var(rng)});
    case 2:
      return !sub();
    case 3:
      return sub() && sub();
    case 4:
      return sub() || sub();
    case 5:
      return DelFormula::implication(sub(), sub());
    case 6:
    case 7:
      return DelFormula::knows(AgentId{agent(rng)}, sub());
    case 8:
      return DelFormula::knows_whether(AgentId{agent(rng)}, sub());
    case 9:
      return DelFormula::announce(sub(), sub());
    default:
      return DelFormula::announce_whether(sub(), sub());
  }
}

/// Random structure: n variables, random law, each agent observing a random subset.
inline KnowledgeStructure random_structure(std::mt19937_64& rng, std::shared_ptr<DdManager> manager,
                                           std::size_t agents, const BoolFormula& law) {
  const std::size_t n = manager->var_count();
  std::vector<std::vector<VarId>> obs(agents);
  for (auto& o : obs)
    for (std::uint32_t v = 0; v < n; ++v)
      if (rng() % 2) o.push_back(VarId{v});
  return KnowledgeStructure::from_formula(std::move(manager), law, std::move(obs));
}

}  // namespace deldd::testing
