#include "deldd/bench.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include "deldd/errors.hpp"
#include "deldd/transform.hpp"

namespace deldd {

void BenchTable::sort() {
  auto key = [](const BenchRecord& r) {
    return std::make_tuple(r.n, r.m.value_or(0), r.round < 0 ? std::numeric_limits<int>::max() : r.round);
  };
  std::stable_sort(records.begin(), records.end(),
                   [&](const BenchRecord& a, const BenchRecord& b) { return key(a) < key(b); });
}

std::size_t backend_column(Backend b) {
  const auto& all = all_backends();
  return static_cast<std::size_t>(std::find(all.begin(), all.end(), b) - all.begin());
}

std::uint64_t rounded_mean(const std::vector<std::uint64_t>& values) {
  if (values.empty()) return 0;
  std::uint64_t sum = 0;
  for (auto v : values) sum += v;
  const std::uint64_t k = values.size();
  return (2 * sum + k) / (2 * k);
}

namespace {

std::vector<NodeRef> replay(const PuzzleInstance& instance, Backend b, std::size_t node_limit,
                            std::shared_ptr<DdManager>& manager) {
  manager = std::make_shared<DdManager>(instance.vocabulary, b, node_limit);
  std::vector<NodeRef> laws;
  for (const auto& k : run(instance, instance.build(manager))) laws.push_back(k.law());
  return laws;
}

}  // namespace

MeasureResult measure_instance(const PuzzleInstance& instance, std::size_t n, std::optional<std::size_t> m,
                               const MeasureOptions& options) {
  MeasureResult result;
  const std::size_t rounds = instance.announcements.size() + 1;
  for (std::size_t r = 0; r < rounds; ++r) result.records.push_back({n, m, static_cast<int>(r), {}});

  auto label = [&] { return "n=" + std::to_string(n) + (m ? " m=" + std::to_string(*m) : std::string()); };

  for (Backend b : options.variants) {
    const std::size_t col = backend_column(b);
    try {
      std::shared_ptr<DdManager> manager;
      const auto laws = replay(instance, b, options.node_limit, manager);
      for (std::size_t r = 0; r < rounds; ++r) result.records[r].sizes[col] = manager->node_count(laws[r]);
    } catch (const ResourceError& e) {
      result.aborted = true;
      result.diagnostics.push_back(label() + " " + std::string(b.name()) + ": aborted: " + e.what());
      for (auto& rec : result.records) rec.sizes[col].reset();
    }
  }

  if (options.convert_via_t0) {
    try {
      std::shared_ptr<DdManager> t0;
      const auto laws = replay(instance, Backend{Rule::T0, false}, options.node_limit, t0);
      for (Rule target : {Rule::T1, Rule::E0, Rule::E1}) {
        const Backend tb{target, false};
        const std::size_t col = backend_column(tb);
        for (std::size_t r = 0; r < rounds; ++r) {
          DdManager dst(instance.vocabulary, tb, options.node_limit);
          const std::uint64_t converted = dst.node_count(convert_via_t0(*t0, laws[r], dst));
          const auto native = result.records[r].sizes[col];
          if (native && *native != converted) {
            result.mismatch = true;
            result.diagnostics.push_back(label() + " round " + std::to_string(r) + " " + std::string(tb.name()) +
                                         ": native " + std::to_string(*native) + " != converted " +
                                         std::to_string(converted));
          }
        }
      }
    } catch (const ResourceError& e) {
      result.aborted = true;
      result.diagnostics.push_back(label() + " T0 conversion: aborted: " + e.what());
    }
  }

  BenchRecord avg{n, m, -1, {}};
  for (std::size_t col = 0; col < 6; ++col) {
    std::vector<std::uint64_t> values;
    for (std::size_t r = 0; r < rounds; ++r)
      if (result.records[r].sizes[col]) values.push_back(*result.records[r].sizes[col]);
    if (values.size() == rounds) avg.sizes[col] = rounded_mean(values);
  }
  result.records.push_back(avg);
  return result;
}

std::string format_dat(const BenchTable& table) {
  std::ostringstream out;
  out << "n" << (table.has_m ? " m" : "") << " round";
  for (Backend b : table.columns) out << ' ' << b.name();
  out << '\n';
  for (const auto& r : table.records) {
    out << r.n;
    if (table.has_m) out << ' ' << r.m.value_or(0);
    out << ' ' << r.round;
    for (Backend b : table.columns) {
      const auto& v = r.sizes[backend_column(b)];
      out << ' ';
      if (v) out << *v;
      else out << "nan";
    }
    out << '\n';
  }
  return out.str();
}

void write_dat(const BenchTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << format_dat(table);
  f.flush();
  if (!f) throw Error("failed writing " + path);
}

}  // namespace deldd
