#include "deldd/vocabulary.hpp"

#include "deldd/errors.hpp"

namespace deldd {

Vocabulary::Vocabulary(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw VocabularyError("empty variable name");
    if (!index_.emplace(names_[i], i).second) {
      throw VocabularyError("duplicate variable name '" + names_[i] + "'");
    }
  }
}

Vocabulary Vocabulary::numbered(std::string_view prefix, std::size_t count, std::size_t first) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t k = 0; k < count; ++k) names.push_back(std::string(prefix) + std::to_string(first + k));
  return Vocabulary(std::move(names));
}

const std::string& Vocabulary::name(VarId v) const {
  if (v.index >= names_.size()) throw VocabularyError("variable index " + std::to_string(v.index) + " out of range");
  return names_[v.index];
}

std::optional<VarId> Vocabulary::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return VarId{it->second};
}

VarId Vocabulary::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw VocabularyError("unknown variable '" + std::string(name) + "'");
}

State::State(std::size_t var_count, std::span<const VarId> true_vars) : bits_(var_count, false) {
  for (VarId v : true_vars) {
    if (v.index >= var_count) throw VocabularyError("state variable out of range");
    bits_[v.index] = true;
  }
}

std::vector<VarId> State::true_vars() const {
  std::vector<VarId> out;
  for (std::uint32_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(VarId{i});
  }
  return out;
}

std::string State::to_string(const Vocabulary& vocab) const {
  std::string out = "{";
  bool first = true;
  for (std::uint32_t i = 0; i < bits_.size(); ++i) {
    if (!bits_[i]) continue;
    if (!first) out += ",";
    out += vocab.name(VarId{i});
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace deldd
