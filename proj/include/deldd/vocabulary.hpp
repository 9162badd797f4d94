#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace deldd {

/// Position of a variable in the global order, 0-based.
struct VarId {
  std::uint32_t index = 0;

  friend auto operator<=>(const VarId&, const VarId&) = default;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> names);

  /// prefix + (first + k) for k in [0, count).
  static Vocabulary numbered(std::string_view prefix, std::size_t count, std::size_t first = 0);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(VarId v) const;
  const std::vector<std::string>& names() const { return names_; }

  std::optional<VarId> find(std::string_view name) const;
  /// Throws VocabularyError for unknown names.
  VarId at(std::string_view name) const;

  bool operator==(const Vocabulary& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// An assignment over a vocabulary, identified with the set of true variables.
class State {
 public:
  State() = default;
  explicit State(std::size_t var_count) : bits_(var_count, false) {}
  State(std::size_t var_count, std::span<const VarId> true_vars);

  std::size_t size() const { return bits_.size(); }
  bool contains(VarId v) const { return bits_.at(v.index); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(VarId v, bool value = true) { bits_.at(v.index) = value; }
  std::vector<VarId> true_vars() const;

  /// "{p,q}" using the vocabulary's names, in variable order.
  std::string to_string(const Vocabulary& vocab) const;

  bool operator==(const State& other) const { return bits_ == other.bits_; }
  /// Lexicographic over the bit string in variable order, false before true.
  bool operator<(const State& other) const { return bits_ < other.bits_; }

 private:
  std::vector<bool> bits_;
};

}  // namespace deldd
