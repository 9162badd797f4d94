#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deldd/formula.hpp"
#include "deldd/manager.hpp"

namespace deldd {

/// (V, theta, O_1..O_n) with theta held by a shared manager. Copies share the
/// manager; update() returns a new structure with the same V and observations.
class KnowledgeStructure {
 public:
  /// Agents default to names "1", "2", ... when `agent_names` is empty.
  KnowledgeStructure(std::shared_ptr<DdManager> manager, NodeRef law, std::vector<std::vector<VarId>> observed,
                     std::vector<std::string> agent_names = {});

  /// Builds the law from a Boolean formula in `manager`.
  static KnowledgeStructure from_formula(std::shared_ptr<DdManager> manager, const BoolFormula& law,
                                         std::vector<std::vector<VarId>> observed,
                                         std::vector<std::string> agent_names = {});

  DdManager& manager() const { return *manager_; }
  const std::shared_ptr<DdManager>& manager_ptr() const { return manager_; }
  const Vocabulary& vocabulary() const { return manager_->vocabulary(); }
  NodeRef law() const { return law_; }

  std::size_t agent_count() const { return agents_->observed.size(); }
  const std::vector<VarId>& observed(AgentId i) const { return agents_->observed.at(i.index); }
  /// V \ O_i in variable order.
  const std::vector<VarId>& unobserved(AgentId i) const { return agents_->unobserved.at(i.index); }
  const std::string& agent_name(AgentId i) const { return agents_->names.at(i.index); }
  const std::vector<std::string>& agent_names() const { return agents_->names; }
  std::optional<AgentId> find_agent(std::string_view name) const;

  /// Same V and observations, law replaced. The law must come from the same manager.
  KnowledgeStructure with_law(NodeRef law) const;

 private:
  struct Agents {
    std::vector<std::vector<VarId>> observed;
    std::vector<std::vector<VarId>> unobserved;
    std::vector<std::string> names;
  };

  struct SharedAgents {};
  KnowledgeStructure(SharedAgents, std::shared_ptr<DdManager> manager, NodeRef law,
                     std::shared_ptr<const Agents> agents)
      : manager_(std::move(manager)), law_(law), agents_(std::move(agents)) {}

  std::shared_ptr<DdManager> manager_;
  NodeRef law_;
  std::shared_ptr<const Agents> agents_;
};

/// A structure with an actual state satisfying its law.
class Scene {
 public:
  /// Throws InvalidSceneError when `actual` violates the law or has the wrong size.
  Scene(KnowledgeStructure structure, State actual);

  const KnowledgeStructure& structure() const { return structure_; }
  const State& actual() const { return actual_; }

 private:
  KnowledgeStructure structure_;
  State actual_;
};

/// Local Boolean translation. K_i f becomes forall (V \ O_i). (theta -> ||f||);
/// [!a] f becomes ||a|| -> ||f|| evaluated in the updated structure.
/// Throws VocabularyError / ValidationError on unknown atoms / agents.
NodeRef translate(const KnowledgeStructure& structure, const DelFormula& f);

/// Same V and observations, law theta & ||f||. Never fails on an unsatisfiable result.
KnowledgeStructure update(const KnowledgeStructure& structure, const DelFormula& f);

bool eval_scene(const Scene& scene, const DelFormula& f);

/// Announces f if it holds at the actual state, ~f otherwise.
Scene announce_whether(const Scene& scene, const DelFormula& f);

/// Satisfying states of the law in ascending order.
std::vector<State> states_of(const KnowledgeStructure& structure, std::size_t limit = 1U << 20);

/// |states| / 2^|V|
Rational sparsity(const KnowledgeStructure& structure);

}  // namespace deldd
