#include "deldd/kripke.hpp"

#include <map>

#include "deldd/errors.hpp"

namespace deldd {

KripkeModel::KripkeModel(Vocabulary vocab, std::vector<State> worlds, std::vector<std::vector<std::uint32_t>> classes)
    : vocab_(std::move(vocab)), worlds_(std::move(worlds)), classes_(std::move(classes)) {
  for (const auto& c : classes_) {
    if (c.size() != worlds_.size()) throw ValidationError("relation size differs from the number of worlds");
  }
  for (const auto& w : worlds_) {
    if (w.size() != vocab_.size()) throw ValidationError("world valuation does not match the vocabulary");
  }
}

std::optional<std::size_t> KripkeModel::find_world(const State& s) const {
  for (std::size_t w = 0; w < worlds_.size(); ++w)
    if (worlds_[w] == s) return w;
  return std::nullopt;
}

KripkeModel KripkeModel::restrict_to(const std::vector<bool>& keep) const {
  std::vector<State> worlds;
  std::vector<std::vector<std::uint32_t>> classes(classes_.size());
  for (std::size_t w = 0; w < worlds_.size(); ++w) {
    if (!keep.at(w)) continue;
    worlds.push_back(worlds_[w]);
    for (std::size_t i = 0; i < classes_.size(); ++i) classes[i].push_back(classes_[i][w]);
  }
  return KripkeModel(vocab_, std::move(worlds), std::move(classes));
}

namespace {

std::vector<bool> knows_set(const KripkeModel& m, AgentId i, const std::vector<bool>& inner) {
  if (i.index >= m.agent_count()) throw ValidationError("unknown agent index " + std::to_string(i.index));
  std::map<std::uint32_t, bool> all_true;
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    auto [it, fresh] = all_true.emplace(m.class_of(i, w), true);
    it->second = it->second && inner[w];
  }
  std::vector<bool> out(m.world_count());
  for (std::size_t w = 0; w < m.world_count(); ++w) out[w] = all_true[m.class_of(i, w)];
  return out;
}

// (M, w) |= [!a] f  iff  (M, w) |= a implies (M^a, w) |= f
std::vector<bool> announce_set(const KripkeModel& m, const std::vector<bool>& a, const DelFormula& then) {
  const std::vector<bool> inner = truth_set(m.restrict_to(a), then);
  std::vector<bool> out(m.world_count(), true);
  std::size_t k = 0;
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    if (a[w]) out[w] = inner[k++];
  }
  return out;
}

}  // namespace

std::vector<bool> truth_set(const KripkeModel& m, const DelFormula& f) {
  using K = DelFormula::Kind;
  const std::size_t n = m.world_count();
  auto child = [&](std::size_t k) { return truth_set(m, f.children()[k]); };
  std::vector<bool> out(n);
  switch (f.kind()) {
    case K::Top:
      return std::vector<bool>(n, true);
    case K::Bot:
      return std::vector<bool>(n, false);
    case K::Atom:
      if (f.var().index >= m.vocabulary().size()) throw VocabularyError("atom outside the vocabulary");
      for (std::size_t w = 0; w < n; ++w) out[w] = m.valuation(w).contains(f.var());
      return out;
    case K::Not:
      out = child(0);
      out.flip();
      return out;
    case K::And:
    case K::Or:
    case K::Xor: {
      const bool is_and = f.kind() == K::And;
      out.assign(n, is_and);
      for (std::size_t k = 0; k < f.children().size(); ++k) {
        const auto c = child(k);
        for (std::size_t w = 0; w < n; ++w) {
          if (f.kind() == K::And) out[w] = out[w] && c[w];
          else if (f.kind() == K::Or) out[w] = out[w] || c[w];
          else out[w] = out[w] != c[w];
        }
      }
      return out;
    }
    case K::Implies: {
      const auto a = child(0);
      const auto b = child(1);
      for (std::size_t w = 0; w < n; ++w) out[w] = !a[w] || b[w];
      return out;
    }
    case K::Knows:
      return knows_set(m, f.agent(), child(0));
    case K::KnowsWhether: {
      auto pos = child(0);
      auto neg = pos;
      neg.flip();
      const auto kp = knows_set(m, f.agent(), pos);
      const auto kn = knows_set(m, f.agent(), neg);
      for (std::size_t w = 0; w < n; ++w) out[w] = kp[w] || kn[w];
      return out;
    }
    case K::Announce:
      return announce_set(m, child(0), f.children()[1]);
    case K::AnnounceWhether: {
      auto a = child(0);
      const auto pos = announce_set(m, a, f.children()[1]);
      a.flip();
      const auto neg = announce_set(m, a, f.children()[1]);
      for (std::size_t w = 0; w < n; ++w) out[w] = pos[w] && neg[w];
      return out;
    }
  }
  return out;
}

bool kripke_eval(const PointedModel& pm, const DelFormula& f) {
  if (pm.point >= pm.model.world_count()) throw ValidationError("point is not a world of the model");
  return truth_set(pm.model, f)[pm.point];
}

KripkeModel announce(const KripkeModel& model, const DelFormula& f) { return model.restrict_to(truth_set(model, f)); }

KripkeModel ks_to_kripke(const KnowledgeStructure& structure, std::size_t max_vars) {
  const std::size_t n = structure.vocabulary().size();
  if (n > max_vars) {
    throw ResourceError("structure has " + std::to_string(n) + " variables; explicit models are limited to " +
                        std::to_string(max_vars));
  }
  std::vector<State> worlds = states_of(structure, std::size_t{1} << n);
  std::vector<std::vector<std::uint32_t>> classes;
  for (std::uint32_t i = 0; i < structure.agent_count(); ++i) {
    std::map<std::vector<bool>, std::uint32_t> ids;
    std::vector<std::uint32_t> cls;
    for (const auto& w : worlds) {
      std::vector<bool> seen;
      for (VarId v : structure.observed(AgentId{i})) seen.push_back(w.contains(v));
      cls.push_back(ids.emplace(seen, static_cast<std::uint32_t>(ids.size())).first->second);
    }
    classes.push_back(std::move(cls));
  }
  return KripkeModel(structure.vocabulary(), std::move(worlds), std::move(classes));
}

}  // namespace deldd
