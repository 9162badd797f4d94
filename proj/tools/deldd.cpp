#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "deldd/bench.hpp"
#include "deldd/errors.hpp"
#include "deldd/parser.hpp"

namespace {

using namespace deldd;

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kResource = 2;

struct CommonBench {
  std::string out = "-";
  std::string variants;
  bool convert_via_t0 = false;
  std::size_t node_limit = DdManager::default_node_limit();
};

void add_common(CLI::App* cmd, CommonBench& c) {
  cmd->add_option("--out", c.out, "output .dat file, '-' for stdout")->capture_default_str();
  cmd->add_option("--variants", c.variants, "comma-separated subset of BDD,BDDc,T0,T1,E0,E1");
  cmd->add_flag("--convert-via-t0", c.convert_via_t0, "cross-check T1/E0/E1 counts by flipping T0 diagrams");
  cmd->add_option("--node-limit", c.node_limit, "node budget per manager")->capture_default_str();
}

std::vector<Backend> parse_variants(const std::string& text) {
  if (text.empty()) return {all_backends().begin(), all_backends().end()};
  std::vector<bool> chosen(6, false);
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    chosen[backend_column(parse_backend(item))] = true;
  }
  std::vector<Backend> out;
  for (std::size_t i = 0; i < 6; ++i)
    if (chosen[i]) out.push_back(all_backends()[i]);
  if (out.empty()) throw ValidationError("--variants selects no representation");
  return out;
}

struct Job {
  PuzzleInstance instance;
  std::size_t n;
  std::optional<std::size_t> m;
};

int run_bench(const std::vector<Job>& jobs, bool has_m, const CommonBench& c,
              const std::function<void(const Job&, const KnowledgeStructure&)>& after = {}) {
  BenchTable table;
  table.has_m = has_m;
  MeasureOptions options;
  options.variants = parse_variants(c.variants);
  options.convert_via_t0 = c.convert_via_t0;
  options.node_limit = c.node_limit;
  table.columns = options.variants;
  bool aborted = false;
  bool mismatch = false;
  for (const auto& job : jobs) {
    if (!job.instance.note.empty()) std::cerr << "note: " << job.instance.note << '\n';
    const MeasureResult r = measure_instance(job.instance, job.n, job.m, options);
    for (const auto& d : r.diagnostics) std::cerr << d << '\n';
    aborted = aborted || r.aborted;
    mismatch = mismatch || r.mismatch;
    table.records.insert(table.records.end(), r.records.begin(), r.records.end());
    if (after) after(job, job.instance.build(options.variants.front()));
  }
  table.sort();
  if (c.out == "-") {
    std::cout << format_dat(table);
  } else {
    write_dat(table, c.out);
  }
  if (mismatch) return kValidation;
  return aborted ? kResource : kOk;
}

std::string format_pairs(const std::set<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  std::string s = "{";
  for (auto [x, y] : pairs) s += (s.size() > 1 ? ", (" : "(") + std::to_string(x) + "," + std::to_string(y) + ")";
  return s + "}";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision-diagram backends for symbolic epistemic model checking"};
  app.require_subcommand(1);

  CLI::App* bench = app.add_subcommand("bench", "measure law sizes per announcement for each representation");
  bench->require_subcommand(1);

  CommonBench mc_common;
  std::size_t mc_from = 5, mc_to = 40, mc_step = 5;
  std::optional<std::size_t> mc_m;
  CLI::App* mc = bench->add_subcommand("mc", "Muddy Children");
  mc->add_option("--n-from", mc_from)->capture_default_str();
  mc->add_option("--n-to", mc_to)->capture_default_str();
  mc->add_option("--step", mc_step)->capture_default_str()->check(CLI::PositiveNumber);
  mc->add_option("--m", mc_m, "number of muddy children (default: n)");
  add_common(mc, mc_common);

  CommonBench dc_common;
  std::vector<std::size_t> dc_list{3, 5, 7, 9, 11, 13};
  std::size_t dc_payer = 0;
  CLI::App* dc = bench->add_subcommand("dc", "Dining Cryptographers");
  dc->add_option("--n-list", dc_list)->delimiter(',')->capture_default_str();
  dc->add_option("--payer", dc_payer, "0 for the NSA, else the paying seat")->capture_default_str();
  add_common(dc, dc_common);

  CommonBench sap_common;
  std::size_t sap_from = 65, sap_to = 100, sap_step = 5;
  CLI::App* sap = bench->add_subcommand("sap", "Sum and Product");
  sap->add_option("--from", sap_from)->capture_default_str();
  sap->add_option("--to", sap_to)->capture_default_str();
  sap->add_option("--step", sap_step)->capture_default_str()->check(CLI::PositiveNumber);
  add_common(sap, sap_common);

  std::string rule = "eq";
  std::string file;
  CLI::App* check = app.add_subcommand("check", "evaluate the queries of a .kmodel file");
  check->add_option("--rule", rule, "eq|bddc|t0|t1|e0|e1")->capture_default_str();
  check->add_option("FILE", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kValidation;
  }

  try {
    if (mc->parsed()) {
      std::vector<Job> jobs;
      for (std::size_t n = mc_from; n <= mc_to; n += mc_step) {
        const std::size_t m = mc_m.value_or(n);
        jobs.push_back({muddy_children(n, m), n, m});
      }
      return run_bench(jobs, true, mc_common);
    }
    if (dc->parsed()) {
      std::vector<Job> jobs;
      for (std::size_t n : dc_list) jobs.push_back({dining_cryptographers(n, dc_payer), n, std::nullopt});
      return run_bench(jobs, false, dc_common);
    }
    if (sap->parsed()) {
      std::vector<Job> jobs;
      for (std::size_t b = sap_from; b <= sap_to; b += sap_step) jobs.push_back({sum_and_product(b), b, std::nullopt});
      return run_bench(jobs, false, sap_common, [](const Job& job, const KnowledgeStructure& initial) {
        const SapLayout layout(job.n);
        std::set<std::pair<std::uint64_t, std::uint64_t>> sols;
        for (const State& s : states_of(run(job.instance, initial).back())) sols.insert(layout.decode_xy(s));
        std::cerr << "bound " << job.n << ": solutions " << format_pairs(sols) << '\n';
      });
    }
    if (check->parsed()) {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw ValidationError("cannot read " + file);
      std::stringstream buf;
      buf << in.rdbuf();
      const ModelFile mf = parse_model(buf.str());
      for (const auto& line : check_file(mf, parse_backend(rule))) std::cout << line << '\n';
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << file << ":" << e.what() << '\n';
    return kValidation;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
