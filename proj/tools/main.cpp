#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tbmfg/tbmfg.hpp"

namespace {

using namespace tbmfg;

constexpr int kExitUsage = 2;
constexpr int kExitSizeGuard = 3;
constexpr int kExitMismatch = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TemporalBipartiteGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file: " + path);
  return load_edge_list(in);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file: " + path);
  return out;
}

/// One line per group: sorted original V labels, optionally followed by
/// " | " and the sorted original timestamps. Lines come out ordered by the
/// member-label sequence.
std::vector<std::string> render_groups(const TemporalBipartiteGraph& g,
                                       const std::vector<FrequencyGroup>& groups,
                                       bool with_support) {
  std::vector<std::string> lines;
  lines.reserve(groups.size());
  for (const auto& grp : groups) {
    std::ostringstream os;
    for (std::size_t i = 0; i < grp.members.size(); ++i) {
      if (i) os << ' ';
      os << g.v_label(grp.members[i]);
    }
    if (with_support) {
      os << " |";
      for (Timestamp t : grp.support) os << ' ' << g.t_value(t);
    }
    lines.push_back(os.str());
  }
  // Dense ids preserve label order, so group order already matches labels.
  return lines;
}

EnumerationResult run_algorithm(const std::string& algo, const TemporalBipartiteGraph& g,
                                const Params& p, int workers) {
  if (algo == "vfree") {
    VFreeOptions opt;
    opt.workers = workers;
    return enumerate_vfree(g, p, opt);
  }
  if (algo == "filterv") {
    EnumerateOptions opt;
    opt.workers = workers;
    return enumerate_filterv(g, p, opt);
  }
  if (algo == "bk") return enumerate_bk_baseline(g, p);
  if (algo == "oracle") {
    EnumerationResult r;
    r.groups = oracle::enumerate_bruteforce(g, p);
    return r;
  }
  throw UsageError("unknown algorithm '" + algo + "' (expected bk|filterv|vfree|oracle)");
}

struct CommonOpts {
  std::string input;
  std::uint32_t tau_u = 1, tau_v = 1, lambda = 1;
  Params params() const { return {tau_u, tau_v, lambda}; }
};

void add_param_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("input", o.input, "edge-list file (u v t per line)")->required();
  cmd->add_option("--tau-u", o.tau_u, "minimum U-side biclique size")->required();
  cmd->add_option("--tau-v", o.tau_v, "minimum group size")->required();
  cmd->add_option("--lambda", o.lambda, "minimum number of support timestamps")->required();
}

int cmd_enumerate(const CommonOpts& o, const std::string& algo, bool with_support,
                  const std::string& output, int workers) {
  TemporalBipartiteGraph g = load_graph(o.input);
  Params p = o.params();
  p.validate();
  EnumerationResult r = run_algorithm(algo, g, p, workers);
  auto lines = render_groups(g, r.groups, with_support);
  if (output.empty()) {
    for (const auto& l : lines) std::cout << l << '\n';
  } else {
    auto out = open_output(output);
    for (const auto& l : lines) out << l << '\n';
  }
  return 0;
}

int cmd_stats(const CommonOpts& o) {
  TemporalBipartiteGraph g = load_graph(o.input);
  Params p = o.params();
  p.validate();
  CoreReduction red = gf_core(g, p);
  const auto& s = red.stats;
  std::printf("before |U|=%zu |V|=%zu |E|=%llu |T|=%zu\n", s.u_before, s.v_before,
              static_cast<unsigned long long>(s.edges_before), s.t_before);
  std::printf("after  |U|=%zu |V|=%zu |E|=%llu |T|=%zu\n", s.u_after, s.v_after,
              static_cast<unsigned long long>(s.edges_after), s.t_after);
  std::printf("pruned %.2f%%\n", s.pruned_edge_percent());
  return 0;
}

int cmd_gen(const GenConfig& cfg, const std::string& output) {
  auto edges = generate_edges(cfg);
  std::ostringstream os;
  os << "# synthetic temporal bipartite graph: n_u=" << cfg.n_u << " n_v=" << cfg.n_v
     << " n_t=" << cfg.n_t << " edge_prob=" << cfg.edge_prob << " seed=" << cfg.seed;
  if (cfg.planted)
    os << " block=" << cfg.planted->n_u << "x" << cfg.planted->n_v << "@" << cfg.planted->n_t;
  os << "\n";
  for (const auto& e : edges) os << e.u << ' ' << e.v << ' ' << e.t << '\n';
  if (output.empty()) {
    std::cout << os.str();
  } else {
    auto out = open_output(output);
    out << os.str();
  }
  return 0;
}

using ResultRecord = std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>;

std::set<ResultRecord> read_result_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open result file: " + path);
  std::set<ResultRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ResultRecord rec;
    std::string members = line, support;
    if (auto bar = line.find('|'); bar != std::string::npos) {
      members = line.substr(0, bar);
      support = line.substr(bar + 1);
    }
    std::istringstream ms(members), ss(support);
    std::uint64_t x;
    while (ms >> x) rec.first.push_back(x);
    while (ss >> x) rec.second.push_back(x);
    std::string trailing;
    if (ms.clear(), ms >> trailing) throw UsageError("bad record in " + path + ": " + line);
    if (ss.clear(), ss >> trailing) throw UsageError("bad record in " + path + ": " + line);
    if (rec.first.empty()) throw UsageError("empty group line in " + path + ": " + line);
    records.insert(std::move(rec));
  }
  return records;
}

int cmd_diff(const std::string& left, const std::string& right) {
  auto a = read_result_file(left);
  auto b = read_result_file(right);
  if (a == b) return 0;
  std::cerr << "result files differ: " << left << " has " << a.size() << " records, " << right
            << " has " << b.size() << "\n";
  return 1;
}

int cmd_bench(const CommonOpts& o, std::vector<std::string> algos, int repeat, int workers) {
  TemporalBipartiteGraph g = load_graph(o.input);
  Params p = o.params();
  p.validate();
  if (repeat < 1) throw UsageError("--repeat must be >= 1");

  std::vector<std::vector<std::string>> outputs;
  std::vector<double> means;
  for (const auto& algo : algos) {
    double total_ms = 0.0;
    EnumerationResult r;
    for (int i = 0; i < repeat; ++i) {
      auto start = std::chrono::steady_clock::now();
      r = run_algorithm(algo, g, p, workers);
      auto end = std::chrono::steady_clock::now();
      total_ms += std::chrono::duration<double, std::milli>(end - start).count();
    }
    outputs.push_back(render_groups(g, r.groups, true));
    means.push_back(total_ms / repeat);
  }
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    if (outputs[i] != outputs[0]) {
      std::cerr << "output mismatch between " << algos[0] << " and " << algos[i] << "\n";
      return kExitMismatch;
    }
  }
  std::printf("%-10s %12s %8s %8s\n", "algorithm", "mean_ms", "runs", "groups");
  for (std::size_t i = 0; i < algos.size(); ++i)
    std::printf("%-10s %12.2f %8d %8zu\n", algos[i].c_str(), means[i], repeat,
                outputs[i].size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximal frequency group enumeration in temporal bipartite graphs"};
  app.require_subcommand(1);

  CommonOpts enum_opts;
  std::string enum_algo = "vfree";
  bool with_support = false;
  std::string enum_output;
  int enum_workers = 1;
  auto* c_enum = app.add_subcommand("enumerate", "enumerate all maximal frequency groups");
  add_param_flags(c_enum, enum_opts);
  c_enum->add_option("--algorithm", enum_algo, "bk|filterv|vfree|oracle");
  c_enum->add_flag("--with-support", with_support, "append support timestamps to each group");
  c_enum->add_option("--output", enum_output, "write results to a file instead of stdout");
  c_enum->add_option("--workers", enum_workers, "top-level branch workers");

  CommonOpts stats_opts;
  auto* c_stats = app.add_subcommand("stats", "report the core-filter reduction");
  add_param_flags(c_stats, stats_opts);

  GenConfig gen_cfg;
  std::string gen_output;
  std::uint32_t block_u = 0, block_v = 0, block_t = 0;
  auto* c_gen = app.add_subcommand("gen", "generate a synthetic edge list");
  c_gen->add_option("--n-u", gen_cfg.n_u, "U-side vertex count")->required();
  c_gen->add_option("--n-v", gen_cfg.n_v, "V-side vertex count")->required();
  c_gen->add_option("--n-t", gen_cfg.n_t, "timestamp count")->required();
  c_gen->add_option("--edge-prob", gen_cfg.edge_prob, "per-triple edge probability")->required();
  c_gen->add_option("--seed", gen_cfg.seed, "RNG seed");
  c_gen->add_option("--block-u", block_u, "planted block U size");
  c_gen->add_option("--block-v", block_v, "planted block V size");
  c_gen->add_option("--block-times", block_t, "timestamps carrying the planted block");
  c_gen->add_option("--output", gen_output, "write the edge list to a file");

  std::string diff_left, diff_right;
  auto* c_diff = app.add_subcommand("diff", "compare two result files as record sets");
  c_diff->add_option("left", diff_left)->required();
  c_diff->add_option("right", diff_right)->required();

  CommonOpts bench_opts;
  std::vector<std::string> bench_algos{"bk", "filterv", "vfree"};
  int bench_repeat = 3;
  int bench_workers = 1;
  auto* c_bench = app.add_subcommand("bench", "time the enumeration algorithms");
  add_param_flags(c_bench, bench_opts);
  c_bench->add_option("--algorithms", bench_algos, "algorithms to time")->delimiter(',');
  c_bench->add_option("--repeat", bench_repeat, "runs per algorithm");
  c_bench->add_option("--workers", bench_workers, "top-level branch workers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(c_enum))
      return cmd_enumerate(enum_opts, enum_algo, with_support, enum_output, enum_workers);
    if (app.got_subcommand(c_stats)) return cmd_stats(stats_opts);
    if (app.got_subcommand(c_gen)) {
      if (block_u || block_v || block_t) {
        if (!(block_u && block_v && block_t))
          throw UsageError("--block-u, --block-v and --block-times must be given together");
        gen_cfg.planted = PlantedBlock{block_u, block_v, block_t};
      }
      return cmd_gen(gen_cfg, gen_output);
    }
    if (app.got_subcommand(c_diff)) return cmd_diff(diff_left, diff_right);
    if (app.got_subcommand(c_bench))
      return cmd_bench(bench_opts, bench_algos, bench_repeat, bench_workers);
  } catch (const oracle::SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSizeGuard;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
