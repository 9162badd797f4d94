#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deldd/puzzles.hpp"

namespace deldd {

/// One measured law. round is the announcement index, or -1 for the average row.
/// A missing size means that variant was aborted.
struct BenchRecord {
  std::size_t n = 0;
  std::optional<std::size_t> m;
  int round = 0;
  std::array<std::optional<std::uint64_t>, 6> sizes{};  // indexed like all_backends()

  bool operator==(const BenchRecord&) const = default;
};

struct BenchTable {
  bool has_m = false;
  std::vector<Backend> columns{all_backends().begin(), all_backends().end()};
  std::vector<BenchRecord> records;

  /// Ascending n, then m, then round with -1 last.
  void sort();
};

struct MeasureOptions {
  std::vector<Backend> variants{all_backends().begin(), all_backends().end()};
  /// Also rebuild T1/E0/E1 counts from the T0 pipeline by flips and compare.
  bool convert_via_t0 = false;
  std::size_t node_limit = DdManager::default_node_limit();
};

struct MeasureResult {
  std::vector<BenchRecord> records;  // rounds 0..k, then the average row
  std::vector<std::string> diagnostics;
  bool aborted = false;   // some variant hit the node limit
  bool mismatch = false;  // the T0 conversion disagreed with a native count
};

std::size_t backend_column(Backend b);

/// Nearest integer, ties up.
std::uint64_t rounded_mean(const std::vector<std::uint64_t>& values);

/// Rebuilds the instance once per variant in its own manager and records the
/// law's node count after 0, 1, ..., k announcements, plus the average row.
MeasureResult measure_instance(const PuzzleInstance& instance, std::size_t n, std::optional<std::size_t> m,
                               const MeasureOptions& options = {});

/// Header `n [m] round <columns>`, one whitespace-separated row per record; aborted cells print "nan".
std::string format_dat(const BenchTable& table);
/// Throws Error naming the path on I/O failure.
void write_dat(const BenchTable& table, const std::string& path);

}  // namespace deldd
