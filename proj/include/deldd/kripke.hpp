#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "deldd/formula.hpp"
#include "deldd/knowledge.hpp"

namespace deldd {

/// Explicit S5 model. Each agent's relation is a partition of the worlds,
/// stored as a class id per world; two worlds are related iff their ids match.
class KripkeModel {
 public:
  KripkeModel() = default;
  /// classes[i][w] is agent i's class id of world w.
  KripkeModel(Vocabulary vocab, std::vector<State> worlds, std::vector<std::vector<std::uint32_t>> classes);

  const Vocabulary& vocabulary() const { return vocab_; }
  std::size_t world_count() const { return worlds_.size(); }
  std::size_t agent_count() const { return classes_.size(); }
  const State& valuation(std::size_t w) const { return worlds_.at(w); }
  const std::vector<State>& worlds() const { return worlds_; }
  bool related(AgentId i, std::size_t w, std::size_t v) const {
    return classes_.at(i.index).at(w) == classes_[i.index].at(v);
  }
  std::uint32_t class_of(AgentId i, std::size_t w) const { return classes_.at(i.index).at(w); }
  std::optional<std::size_t> find_world(const State& s) const;

  /// Sub-model on the worlds with keep[w] set; relations and valuation restricted.
  KripkeModel restrict_to(const std::vector<bool>& keep) const;

 private:
  Vocabulary vocab_;
  std::vector<State> worlds_;
  std::vector<std::vector<std::uint32_t>> classes_;
};

struct PointedModel {
  KripkeModel model;
  std::size_t point = 0;
};

/// truth[w] = (M, w) |= f for every world.
std::vector<bool> truth_set(const KripkeModel& model, const DelFormula& f);
bool kripke_eval(const PointedModel& pm, const DelFormula& f);
/// Worlds where f holds, with restricted relations.
KripkeModel announce(const KripkeModel& model, const DelFormula& f);

/// One world per state of the law; w ~i v iff w and v agree on O_i.
/// Throws ResourceError when |V| exceeds max_vars.
KripkeModel ks_to_kripke(const KnowledgeStructure& structure, std::size_t max_vars = 20);

}  // namespace deldd
