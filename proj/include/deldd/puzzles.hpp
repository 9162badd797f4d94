#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deldd/knowledge.hpp"

namespace deldd {

enum class AnnouncementMode { Plain, Whether };

struct Announcement {
  DelFormula formula;
  AnnouncementMode mode = AnnouncementMode::Plain;
};

/// Rule-independent description of a benchmark scenario. build() encodes it
/// in a given manager; run() replays the announcements.
struct PuzzleInstance {
  Vocabulary vocabulary;
  BoolFormula law;
  std::vector<std::vector<VarId>> observed;
  std::vector<std::string> agent_names;
  std::optional<State> actual;
  std::vector<Announcement> announcements;
  /// Non-fatal remark about the instance, e.g. a bound that may admit no solution.
  std::string note;

  KnowledgeStructure build(std::shared_ptr<DdManager> manager) const;
  KnowledgeStructure build(Backend backend) const;
};

/// Structures after 0, 1, ..., k announcements. Whether-announcements are
/// resolved at the actual state; they require one (ValidationError otherwise).
std::vector<KnowledgeStructure> run(const PuzzleInstance& instance, const KnowledgeStructure& initial);

/// V = p1..pn, law p1 | ... | pn, O_i = V \ {p_i}, first m children muddy,
/// m - 1 announcements that nobody knows whether they are muddy.
PuzzleInstance muddy_children(std::size_t n, std::size_t m);

/// V = p0..pn followed by one coin per adjacent pair of seats, ordered by
/// (lower seat, higher seat). Law: exactly one of p0..pn. Agent i sees p_i and
/// its two coins and announces whether the XOR of those bits holds.
/// payer = 0 means the NSA paid; coins are all false in the actual state.
PuzzleInstance dining_cryptographers(std::size_t n, std::size_t payer = 0);

/// Bit layout of the Sum-and-Product encoding: blocks x, y, s, p, MSB first.
struct SapLayout {
  std::size_t bound = 0;
  std::size_t width_xys = 0;  // bits for x, y and s
  std::size_t width_p = 0;    // bits for the product

  explicit SapLayout(std::size_t bound);
  std::size_t var_count() const { return 3 * width_xys + width_p; }
  VarId x_bit(std::size_t k) const { return VarId{static_cast<std::uint32_t>(k)}; }
  VarId y_bit(std::size_t k) const { return VarId{static_cast<std::uint32_t>(width_xys + k)}; }
  VarId s_bit(std::size_t k) const { return VarId{static_cast<std::uint32_t>(2 * width_xys + k)}; }
  VarId p_bit(std::size_t k) const { return VarId{static_cast<std::uint32_t>(3 * width_xys + k)}; }
  /// Literals fixing `value` in a block of `width` bits starting at `first`.
  static std::vector<std::pair<VarId, bool>> encode(std::uint32_t first, std::size_t width, std::uint64_t value);
  std::pair<std::uint64_t, std::uint64_t> decode_xy(const State& s) const;
  Vocabulary vocabulary() const;
};

/// Pairs 1 < x < y with x + y <= bound, ascending.
std::vector<std::pair<std::uint64_t, std::uint64_t>> sap_pairs(std::size_t bound);

/// Agents S (observes s) and P (observes p); no actual state. Announcements:
/// K_S ~(OR K_P(x=i & y=j)), OR K_P(x=i & y=j), OR K_S(x=i & y=j).
PuzzleInstance sum_and_product(std::size_t bound);

/// (x, y) of the states surviving all three announcements, ascending.
std::set<std::pair<std::uint64_t, std::uint64_t>> sap_solutions(std::size_t bound, Backend backend = {});

}  // namespace deldd
