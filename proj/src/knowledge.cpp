#include "deldd/knowledge.hpp"

#include <algorithm>
#include <set>

#include "deldd/errors.hpp"

namespace deldd {

KnowledgeStructure::KnowledgeStructure(std::shared_ptr<DdManager> manager, NodeRef law,
                                       std::vector<std::vector<VarId>> observed,
                                       std::vector<std::string> agent_names)
    : manager_(std::move(manager)), law_(law) {
  if (!manager_) throw ConfigError("knowledge structure requires a manager");
  if (law.manager_id() != manager_->id()) throw ManagerMismatchError("law belongs to a different manager");
  const std::size_t n = manager_->var_count();
  if (agent_names.empty()) {
    for (std::size_t i = 0; i < observed.size(); ++i) agent_names.push_back(std::to_string(i + 1));
  }
  if (agent_names.size() != observed.size()) {
    throw ValidationError("agent names and observation lists differ in length");
  }
  if (std::set<std::string>(agent_names.begin(), agent_names.end()).size() != agent_names.size()) {
    throw ValidationError("agent names must be unique");
  }
  auto agents = std::make_shared<Agents>();
  for (auto& obs : observed) {
    std::vector<bool> seen(n, false);
    for (VarId v : obs) {
      if (v.index >= n) throw VocabularyError("observed variable index " + std::to_string(v.index) + " out of range");
      seen[v.index] = true;
    }
    std::vector<VarId> sorted_obs;
    std::vector<VarId> hidden;
    for (std::uint32_t i = 0; i < n; ++i) (seen[i] ? sorted_obs : hidden).push_back(VarId{i});
    agents->observed.push_back(std::move(sorted_obs));
    agents->unobserved.push_back(std::move(hidden));
  }
  agents->names = std::move(agent_names);
  agents_ = std::move(agents);
}

KnowledgeStructure KnowledgeStructure::from_formula(std::shared_ptr<DdManager> manager, const BoolFormula& law,
                                                    std::vector<std::vector<VarId>> observed,
                                                    std::vector<std::string> agent_names) {
  if (!manager) throw ConfigError("knowledge structure requires a manager");
  const NodeRef theta = manager->from_formula(law);
  return KnowledgeStructure(std::move(manager), theta, std::move(observed), std::move(agent_names));
}

std::optional<AgentId> KnowledgeStructure::find_agent(std::string_view name) const {
  const auto& names = agents_->names;
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return AgentId{static_cast<std::uint32_t>(it - names.begin())};
}

KnowledgeStructure KnowledgeStructure::with_law(NodeRef law) const {
  if (law.manager_id() != manager_->id()) throw ManagerMismatchError("law belongs to a different manager");
  return KnowledgeStructure(SharedAgents{}, manager_, law, agents_);
}

Scene::Scene(KnowledgeStructure structure, State actual) : structure_(std::move(structure)), actual_(std::move(actual)) {
  if (actual_.size() != structure_.vocabulary().size()) {
    throw InvalidSceneError("actual state has " + std::to_string(actual_.size()) + " variables, expected " +
                            std::to_string(structure_.vocabulary().size()));
  }
  if (!structure_.manager().evaluate(structure_.law(), actual_)) {
    throw InvalidSceneError("actual state " + actual_.to_string(structure_.vocabulary()) + " violates the state law");
  }
}

namespace {

class Translator {
 public:
  explicit Translator(const KnowledgeStructure& s) : s_(s), m_(s.manager()) {}

  NodeRef run(NodeRef law, const DelFormula& f) {
    using K = DelFormula::Kind;
    switch (f.kind()) {
      case K::Top:
        return m_.constant(true);
      case K::Bot:
        return m_.constant(false);
      case K::Atom:
        return m_.literal(f.var());
      case K::Not:
        return m_.negate(run(law, f.children()[0]));
      case K::And:
        return fold(law, f, BoolOp::And, true);
      case K::Or:
        return fold(law, f, BoolOp::Or, false);
      case K::Xor:
        return fold(law, f, BoolOp::Xor, false);
      case K::Implies:
        return m_.apply(BoolOp::Imp, run(law, f.children()[0]), run(law, f.children()[1]));
      case K::Knows:
        return knows(law, f.agent(), run(law, f.children()[0]));
      case K::KnowsWhether: {
        const NodeRef inner = run(law, f.children()[0]);
        return m_.apply(BoolOp::Or, knows(law, f.agent(), inner), knows(law, f.agent(), m_.negate(inner)));
      }
      case K::Announce: {
        const NodeRef a = run(law, f.children()[0]);
        return m_.apply(BoolOp::Imp, a, run(m_.apply(BoolOp::And, law, a), f.children()[1]));
      }
      case K::AnnounceWhether: {
        const NodeRef a = run(law, f.children()[0]);
        const NodeRef na = m_.negate(a);
        const NodeRef pos = m_.apply(BoolOp::Imp, a, run(m_.apply(BoolOp::And, law, a), f.children()[1]));
        const NodeRef neg = m_.apply(BoolOp::Imp, na, run(m_.apply(BoolOp::And, law, na), f.children()[1]));
        return m_.apply(BoolOp::And, pos, neg);
      }
    }
    return m_.constant(true);
  }

 private:
  NodeRef fold(NodeRef law, const DelFormula& f, BoolOp op, bool unit) {
    NodeRef acc = m_.constant(unit);
    for (const auto& c : f.children()) acc = m_.apply(op, acc, run(law, c));
    return acc;
  }

  NodeRef knows(NodeRef law, AgentId i, NodeRef inner) {
    return m_.forall_apply(BoolOp::Imp, law, inner, s_.unobserved(i));
  }

  const KnowledgeStructure& s_;
  DdManager& m_;
};

void validate(const KnowledgeStructure& s, const DelFormula& f) {
  if (f.var_bound() > s.vocabulary().size()) {
    throw VocabularyError("formula refers to variable index " + std::to_string(f.var_bound() - 1) +
                          " outside the vocabulary");
  }
  if (f.agent_bound() > s.agent_count()) {
    throw ValidationError("formula refers to unknown agent index " + std::to_string(f.agent_bound() - 1));
  }
}

}  // namespace

NodeRef translate(const KnowledgeStructure& structure, const DelFormula& f) {
  validate(structure, f);
  return Translator(structure).run(structure.law(), f);
}

KnowledgeStructure update(const KnowledgeStructure& structure, const DelFormula& f) {
  const NodeRef t = translate(structure, f);
  return structure.with_law(structure.manager().apply(BoolOp::And, structure.law(), t));
}

bool eval_scene(const Scene& scene, const DelFormula& f) {
  const auto& s = scene.structure();
  return s.manager().evaluate(translate(s, f), scene.actual());
}

Scene announce_whether(const Scene& scene, const DelFormula& f) {
  const DelFormula told = eval_scene(scene, f) ? f : !f;
  return Scene(update(scene.structure(), told), scene.actual());
}

std::vector<State> states_of(const KnowledgeStructure& structure, std::size_t limit) {
  return structure.manager().enumerate(structure.law(), limit);
}

Rational sparsity(const KnowledgeStructure& structure) { return structure.manager().density(structure.law()); }

}  // namespace deldd
