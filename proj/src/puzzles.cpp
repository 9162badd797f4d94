#include "deldd/puzzles.hpp"

#include <algorithm>
#include <bit>

#include "deldd/errors.hpp"

namespace deldd {

KnowledgeStructure PuzzleInstance::build(std::shared_ptr<DdManager> manager) const {
  if (!(manager->vocabulary() == vocabulary)) throw VocabularyError("manager vocabulary does not match the instance");
  return KnowledgeStructure::from_formula(std::move(manager), law, observed, agent_names);
}

KnowledgeStructure PuzzleInstance::build(Backend backend) const {
  return build(std::make_shared<DdManager>(vocabulary, backend));
}

std::vector<KnowledgeStructure> run(const PuzzleInstance& instance, const KnowledgeStructure& initial) {
  std::vector<KnowledgeStructure> rounds{initial};
  for (const auto& a : instance.announcements) {
    const KnowledgeStructure& cur = rounds.back();
    DelFormula told = a.formula;
    if (a.mode == AnnouncementMode::Whether) {
      if (!instance.actual) throw ValidationError("whether-announcement needs an actual state");
      if (!eval_scene(Scene(cur, *instance.actual), a.formula)) told = !a.formula;
    }
    rounds.push_back(update(cur, told));
  }
  return rounds;
}

PuzzleInstance muddy_children(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0 || m > n) {
    throw InvalidInstanceError("muddy children needs 1 <= m <= n, got n=" + std::to_string(n) +
                               " m=" + std::to_string(m));
  }
  PuzzleInstance inst;
  inst.vocabulary = Vocabulary::numbered("p", n, 1);
  std::vector<BoolFormula> atoms;
  std::vector<DelFormula> ignorant;
  for (std::uint32_t i = 0; i < n; ++i) {
    atoms.push_back(BoolFormula::atom(VarId{i}));
    std::vector<VarId> obs;
    for (std::uint32_t j = 0; j < n; ++j)
      if (j != i) obs.push_back(VarId{j});
    inst.observed.push_back(std::move(obs));
    inst.agent_names.push_back(std::to_string(i + 1));
    ignorant.push_back(!DelFormula::knows_whether(AgentId{i}, DelFormula::atom(VarId{i})));
  }
  inst.law = BoolFormula::disjunction(std::move(atoms));
  State actual(n);
  for (std::uint32_t i = 0; i < m; ++i) actual.set(VarId{i});
  inst.actual = std::move(actual);
  const DelFormula nobody_knows = DelFormula::conjunction(std::move(ignorant));
  inst.announcements.assign(m - 1, Announcement{nobody_knows, AnnouncementMode::Plain});
  return inst;
}

PuzzleInstance dining_cryptographers(std::size_t n, std::size_t payer) {
  if (n < 3 || n % 2 == 0) {
    throw InvalidInstanceError("dining cryptographers needs an odd n >= 3, got " + std::to_string(n));
  }
  if (payer > n) throw InvalidInstanceError("payer must be 0 (NSA) or a seat in 1.." + std::to_string(n));
  std::vector<std::pair<std::size_t, std::size_t>> coins;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t j = i % n + 1;
    coins.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(coins.begin(), coins.end());

  PuzzleInstance inst;
  inst.vocabulary = Vocabulary::numbered("p", n + 1 + coins.size(), 0);
  std::vector<BoolFormula> payers;
  for (std::uint32_t i = 0; i <= n; ++i) payers.push_back(BoolFormula::atom(VarId{i}));
  // exactly one: at least one, and no two
  std::vector<BoolFormula> parts{BoolFormula::disjunction(payers)};
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) parts.push_back(!(payers[i] && payers[j]));
  inst.law = BoolFormula::conjunction(std::move(parts));

  for (std::uint32_t i = 1; i <= n; ++i) {
    std::vector<VarId> obs{VarId{i}};
    for (std::size_t c = 0; c < coins.size(); ++c) {
      if (coins[c].first == i || coins[c].second == i) obs.push_back(VarId{static_cast<std::uint32_t>(n + 1 + c)});
    }
    std::vector<DelFormula> bits;
    for (VarId v : obs) bits.push_back(DelFormula::atom(v));
    inst.announcements.push_back({DelFormula::exclusive(std::move(bits)), AnnouncementMode::Whether});
    inst.observed.push_back(std::move(obs));
    inst.agent_names.push_back(std::to_string(i));
  }
  State actual(inst.vocabulary.size());
  actual.set(VarId{static_cast<std::uint32_t>(payer)});
  inst.actual = std::move(actual);
  return inst;
}

SapLayout::SapLayout(std::size_t b)
    : bound(b), width_xys(static_cast<std::size_t>(std::bit_width(b))), width_p(static_cast<std::size_t>(std::bit_width(b * b))) {}

std::vector<std::pair<VarId, bool>> SapLayout::encode(std::uint32_t first, std::size_t width, std::uint64_t value) {
  std::vector<std::pair<VarId, bool>> lits;
  for (std::size_t k = 0; k < width; ++k) {
    lits.emplace_back(VarId{first + static_cast<std::uint32_t>(k)}, (value >> (width - 1 - k)) & 1U);
  }
  return lits;
}

std::pair<std::uint64_t, std::uint64_t> SapLayout::decode_xy(const State& s) const {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  for (std::size_t k = 0; k < width_xys; ++k) {
    x = (x << 1) | (s.contains(x_bit(k)) ? 1U : 0U);
    y = (y << 1) | (s.contains(y_bit(k)) ? 1U : 0U);
  }
  return {x, y};
}

Vocabulary SapLayout::vocabulary() const {
  std::vector<std::string> names;
  for (const char* block : {"x", "y", "s"})
    for (std::size_t k = 1; k <= width_xys; ++k) names.push_back(block + std::to_string(k));
  for (std::size_t k = 1; k <= width_p; ++k) names.push_back("p" + std::to_string(k));
  return Vocabulary(std::move(names));
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> sap_pairs(std::size_t bound) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t x = 2; x < bound; ++x)
    for (std::uint64_t y = x + 1; x + y <= bound; ++y) pairs.emplace_back(x, y);
  return pairs;
}

namespace {

BoolFormula cube_formula(const std::vector<std::pair<VarId, bool>>& lits) {
  std::vector<BoolFormula> parts;
  for (auto [v, val] : lits) parts.push_back(val ? BoolFormula::atom(v) : !BoolFormula::atom(v));
  return BoolFormula::conjunction(std::move(parts));
}

DelFormula cube_del(const std::vector<std::pair<VarId, bool>>& lits) {
  return DelFormula::from_bool(cube_formula(lits));
}

}  // namespace

PuzzleInstance sum_and_product(std::size_t bound) {
  if (bound < 2) throw InvalidInstanceError("sum and product needs a bound >= 2");
  const SapLayout layout(bound);
  const auto w = layout.width_xys;
  PuzzleInstance inst;
  inst.vocabulary = layout.vocabulary();
  if (bound < 65) inst.note = "bound " + std::to_string(bound) + " < 65: the puzzle may have no solution";

  const auto pairs = sap_pairs(bound);
  std::vector<BoolFormula> states;
  std::vector<DelFormula> kp;
  std::vector<DelFormula> ks;
  const AgentId S{0};
  const AgentId P{1};
  for (auto [x, y] : pairs) {
    auto lits = SapLayout::encode(layout.x_bit(0).index, w, x);
    auto ly = SapLayout::encode(layout.y_bit(0).index, w, y);
    lits.insert(lits.end(), ly.begin(), ly.end());
    const DelFormula xy = cube_del(lits);
    kp.push_back(DelFormula::knows(P, xy));
    ks.push_back(DelFormula::knows(S, xy));
    auto ls = SapLayout::encode(layout.s_bit(0).index, w, x + y);
    auto lp = SapLayout::encode(layout.p_bit(0).index, layout.width_p, x * y);
    lits.insert(lits.end(), ls.begin(), ls.end());
    lits.insert(lits.end(), lp.begin(), lp.end());
    states.push_back(cube_formula(lits));
  }
  inst.law = BoolFormula::disjunction(std::move(states));

  std::vector<VarId> s_bits;
  std::vector<VarId> p_bits;
  for (std::size_t k = 0; k < w; ++k) s_bits.push_back(layout.s_bit(k));
  for (std::size_t k = 0; k < layout.width_p; ++k) p_bits.push_back(layout.p_bit(k));
  inst.observed = {s_bits, p_bits};
  inst.agent_names = {"S", "P"};

  const DelFormula p_knows = DelFormula::disjunction(kp);
  inst.announcements.push_back({DelFormula::knows(S, !p_knows), AnnouncementMode::Plain});
  inst.announcements.push_back({p_knows, AnnouncementMode::Plain});
  inst.announcements.push_back({DelFormula::disjunction(std::move(ks)), AnnouncementMode::Plain});
  return inst;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> sap_solutions(std::size_t bound, Backend backend) {
  const PuzzleInstance inst = sum_and_product(bound);
  const auto rounds = run(inst, inst.build(backend));
  const SapLayout layout(bound);
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const State& s : states_of(rounds.back())) out.insert(layout.decode_xy(s));
  return out;
}

}  // namespace deldd
