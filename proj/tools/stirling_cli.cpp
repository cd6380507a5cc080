// Command-line front end: counting formulas, homology of single instances,
// and batch verification runs emitting one JSON object per line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "stirling/complex.hpp"
#include "stirling/counting.hpp"
#include "stirling/error.hpp"
#include "stirling/homology.hpp"
#include "stirling/report.hpp"
#include "stirling/tree.hpp"

namespace {

using namespace stirling;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct TreeSource {
  std::string file;
  std::string inline_text;

  void attach(CLI::App* app) {
    app->add_option("--tree-file", file, "Edge-list file, one 'u v' per line");
    app->add_option("--tree", inline_text, "Inline tree, e.g. 1-2,2-3,2-4");
  }

  LabeledTree load() const {
    if (!file.empty() && !inline_text.empty()) throw ParseError("give either --tree or --tree-file, not both");
    if (!inline_text.empty()) return parse_inline_tree(inline_text);
    if (file.empty()) throw ParseError("a tree is required (--tree or --tree-file)");
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open tree file '" + file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_tree(buffer.str());
  }
};

struct CapFlags {
  std::vector<std::uint32_t> primes{2, kDefaultLargePrime};
  std::size_t max_cells = kDefaultMaxCells;
  std::size_t snf_max_cols = kDefaultSnfMaxColumns;

  void attach(CLI::App* app) {
    app->add_option("--primes", primes, "Prime fields for Betti numbers")->delimiter(',');
    app->add_option("--max-cells", max_cells, "Cell cap for enumeration");
    app->add_option("--snf-max-cols", snf_max_cols, "Column cap for Smith normal form");
  }

  VerifyOptions options() const {
    for (auto p : primes) {
      if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    }
    VerifyOptions o;
    o.primes = primes;
    o.max_cells = max_cells;
    o.snf_max_columns = snf_max_cols;
    return o;
  }
};

std::pair<int, int> parse_range(const std::string& text) {
  auto sep = text.find("..");
  std::size_t width = 2;
  if (sep == std::string::npos) {
    sep = text.find(':');
    width = 1;
  }
  try {
    if (sep == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + width))};
  } catch (const std::logic_error&) {
    throw ParseError("bad range '" + text + "', expected LO:HI");
  }
}

std::string join(const Json& array) {
  std::string out;
  for (const auto& x : array) out += (out.empty() ? "" : " ") + x.dump();
  return out;
}

void print_instance_pretty(const Json& p) {
  std::cout << "tree " << p["tree"].get<std::string>() << "  S=" << p["family"].get<std::string>()
            << "  n=" << p["n"] << "  " << p["status"].get<std::string>() << "\n";
  if (p.contains("f_vector")) std::cout << "  f-vector      " << join(p["f_vector"]) << "\n";
  if (p.contains("euler")) {
    std::cout << "  euler         enumerated " << p["euler"]["enumerated"].dump() << ", formula "
              << p["euler"]["formula"].dump() << ", from spheres " << p["euler"]["from_spheres"].dump() << "\n";
  }
  if (p.contains("expected_spheres")) {
    std::cout << "  expected      " << p["expected_spheres"].dump() << " spheres in degree "
              << p["expected_degree"].dump() << "\n";
  }
  if (p.contains("betti")) {
    for (const auto& b : p["betti"]) {
      std::cout << "  GF(" << b["p"] << ")" << std::string(b["p"].dump().size() < 6 ? 6 - b["p"].dump().size() : 0, ' ')
                << "  betti " << join(b["betti"]) << "   reduced " << join(b["reduced"]) << "\n";
    }
  }
  if (p.contains("checks")) {
    for (const auto& [name, value] : p["checks"].items()) {
      if (value.is_null()) continue;
      std::cout << "  " << (value.get<bool>() ? "ok  " : "FAIL") << "  " << name << "\n";
    }
  }
}

int cmd_count(int m, int n, bool pretty) {
  if (m < 2 || n < m) throw DomainError("count needs 2 <= m <= n");
  bool consistent = false;
  const Json report = count_report(m, n, consistent);
  if (pretty) {
    std::cout << "f(" << m << "," << n << ")   closed " << report["f_closed"].dump() << "   surjections "
              << report["f_surjection_form"].dump() << "   recursive " << report["f_recursive"].dump() << "\n";
    std::cout << "euler         " << report["euler_formula"].dump() << " (from spheres "
              << report["euler_from_spheres"].dump() << ")\n";
    std::cout << "cell counts   " << join(report["cell_counts"]) << "\n";
  } else {
    std::cout << report.dump() << "\n";
  }
  if (!consistent) {
    std::cerr << "internal error: counting routes disagree\n";
    return kExitFailure;
  }
  return 0;
}

int cmd_betti(const TreeSource& source, const std::string& spec, int n, const CapFlags& caps, bool pretty) {
  const auto tree = source.load();
  const auto family = parse_family_spec(tree, spec);
  auto options = caps.options();
  options.check_decomposition = false;
  options.homology_max_cells = options.max_cells;
  const auto report = verify_instance(family, n, options);
  if (pretty) {
    print_instance_pretty(report.payload);
  } else {
    std::cout << Json{{"payload", report.payload}, {"timings_ms", report.timings}}.dump() << "\n";
  }
  if (report.skipped) {
    std::cerr << "cap exceeded: more than " << options.max_cells << " cells\n";
    return kExitFailure;
  }
  return report.passed ? 0 : kExitFailure;
}

int cmd_verify(const SuiteRequest& request, const CapFlags& caps, std::size_t homology_cap, bool pretty) {
  auto options = caps.options();
  options.homology_max_cells = homology_cap;
  const auto result = verify_suite(request, options);
  for (const auto& inst : result.instances) {
    if (pretty) {
      print_instance_pretty(inst.payload);
    } else {
      std::cout << Json{{"payload", inst.payload}, {"timings_ms", inst.timings}}.dump() << "\n";
    }
  }
  for (const auto& summary : result.summaries) {
    if (pretty) {
      const auto& s = summary["summary"];
      std::cout << "m=" << s["m"] << " n=" << s["n"] << "  " << s["compared"] << "/" << s["trees"]
                << " trees compared  f-vectors identical " << s["f_vector_identical"].dump()
                << "  betti identical " << s["betti_identical"].dump() << "  " << s["status"].get<std::string>()
                << "\n";
    } else {
      std::cout << summary.dump() << "\n";
    }
  }
  return result.passed ? 0 : kExitFailure;
}

int cmd_decompose(const TreeSource& source, const std::string& spec, int n, std::size_t max_cells, bool pretty) {
  const auto tree = source.load();
  const auto family = parse_family_spec(tree, spec);
  const auto report = decompose_last_coordinate(family, n, max_cells);
  Json out;
  out["tree"] = tree.inline_form();
  out["family"] = family.describe();
  out["n"] = n;
  out["decomposition"] = decomposition_json(report);
  out["status"] = report.ok() ? "PASS" : "FAIL";
  if (pretty) {
    std::cout << "Str(" << out["tree"].get<std::string>() << ", " << out["family"].get<std::string>() << ", " << n
              << "): " << report.total_cells << " cells, base Str(n-1) has " << report.base_cells << "\n";
    for (const auto& p : report.vertex_pieces) {
      std::cout << "  last = v" << p.vertex << "   " << p.cells << " cells (expected " << p.expected << ")\n";
    }
    for (const auto& p : report.edge_pieces) {
      const Edge& e = tree.edge(p.edge_id);
      std::cout << "  last = e" << e.tail << "-" << e.head << "  " << p.cells << " cells, cylinder "
                << p.cylinder_cells << "\n";
    }
    std::cout << "  " << out["status"].get<std::string>() << "\n";
  } else {
    std::cout << out.dump() << "\n";
  }
  return report.ok() ? 0 : kExitFailure;
}

int cmd_valency(const TreeSource& source, int n, std::size_t max_cells, bool pretty) {
  const auto tree = source.load();
  if (n < tree.vertex_count()) throw DomainError("valency needs n >= m");
  const auto complex = enumerate_complex(SubtreeFamily::all_vertices(tree), n, max_cells);
  const auto hist = valency_histogram(complex);
  if (pretty) {
    std::cout << "valency  vertices\n";
    for (const auto& [valency, count] : hist) std::cout << valency << "\t" << count << "\n";
    return 0;
  }
  Json histogram = Json::object();
  for (const auto& [valency, count] : hist) histogram[std::to_string(valency)] = count;
  std::cout << Json{{"tree", tree.inline_form()}, {"n", n}, {"histogram", histogram}}.dump() << "\n";
  return 0;
}

int cmd_trees(int m, const std::string& format) {
  const auto trees = enumerate_trees(m);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (format == "text") {
      std::cout << "# tree " << i << "\n" << trees[i].serialize();
    } else {
      const auto code = m >= 2 ? prufer_encode(trees[i]) : std::vector<int>{};
      std::cout << Json{{"index", i}, {"prufer", code}, {"edges", trees[i].inline_form()}}.dump() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stirling complexes over labeled trees: counts, homology, verification"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable tables instead of JSON lines");

  int count_m = 0, count_n = 0;
  auto* count = app.add_subcommand("count", "f(m,n) by three formulas, Euler characteristic, cell counts");
  count->add_option("m", count_m, "Number of tree vertices")->required();
  count->add_option("n", count_n, "Number of resources")->required();

  TreeSource betti_tree;
  std::string betti_spec = "all";
  int betti_n = 0;
  CapFlags betti_caps;
  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of one Stirling complex");
  betti_tree.attach(betti_cmd);
  betti_cmd->add_option("--S", betti_spec, "all | none | 1,3,4 | {1,2},{4}");
  betti_cmd->add_option("-n,--n", betti_n, "Number of resources")->required();
  betti_caps.attach(betti_cmd);

  SuiteRequest suite;
  std::string m_range = "2:4", n_range, extra_range;
  std::size_t homology_cap = 500'000;
  CapFlags verify_caps;
  auto* verify = app.add_subcommand("verify", "Full check suite over every tree in a range");
  verify->add_option("--m", m_range, "Vertex range LO:HI");
  auto* n_opt = verify->add_option("--n", n_range, "Absolute n range LO:HI");
  verify->add_option("--extra", extra_range, "n range relative to m, LO:HI (default 0:2)")->excludes(n_opt);
  verify->add_option("--S", suite.family_spec, "Family applied to every tree");
  verify->add_option("--sample", suite.sample, "Trees sampled per m above 5");
  verify->add_option("--seed", suite.seed, "Seed for tree sampling");
  verify->add_option("--jobs", suite.jobs, "Instances run in parallel");
  verify->add_option("--homology-max-cells", homology_cap, "Above this only counts and Euler are checked");
  verify_caps.attach(verify);

  TreeSource dec_tree;
  std::string dec_spec = "all";
  int dec_n = 0;
  std::size_t dec_cap = kDefaultMaxCells;
  auto* decompose = app.add_subcommand("decompose", "Partition by last coordinate and check piece sizes");
  dec_tree.attach(decompose);
  decompose->add_option("--S", dec_spec, "Singleton family: all | 1,3,4");
  decompose->add_option("-n,--n", dec_n, "Number of resources")->required();
  decompose->add_option("--max-cells", dec_cap, "Cell cap for enumeration");

  TreeSource val_tree;
  int val_n = 0;
  std::size_t val_cap = kDefaultMaxCells;
  auto* valency = app.add_subcommand("valency", "Valency histogram of the 1-skeleton of Str(T,n)");
  val_tree.attach(valency);
  valency->add_option("-n,--n", val_n, "Number of resources")->required();
  valency->add_option("--max-cells", val_cap, "Cell cap for enumeration");

  int trees_m = 0;
  std::string trees_format = "json";
  auto* trees = app.add_subcommand("trees", "List every labeled tree on m vertices");
  trees->add_option("m", trees_m, "Number of vertices (1..8)")->required();
  trees->add_option("--format", trees_format, "json | text")->check(CLI::IsMember({"json", "text"}));

  for (auto* sub : {count, betti_cmd, verify, decompose, valency, trees}) {
    sub->add_flag("--pretty", pretty, "Human-readable tables instead of JSON lines");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every other parse failure is a usage error.
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (count->parsed()) return cmd_count(count_m, count_n, pretty);
    if (betti_cmd->parsed()) return cmd_betti(betti_tree, betti_spec, betti_n, betti_caps, pretty);
    if (verify->parsed()) {
      std::tie(suite.m_min, suite.m_max) = parse_range(m_range);
      if (!n_range.empty()) {
        suite.relative = false;
        std::tie(suite.n_min, suite.n_max) = parse_range(n_range);
      } else if (!extra_range.empty()) {
        std::tie(suite.n_min, suite.n_max) = parse_range(extra_range);
      }
      if (suite.m_min < 1 || suite.m_max > kMaxEnumeratedVertices || suite.m_min > suite.m_max) {
        throw DomainError("--m must lie within 1.." + std::to_string(kMaxEnumeratedVertices));
      }
      return cmd_verify(suite, verify_caps, homology_cap, pretty);
    }
    if (decompose->parsed()) return cmd_decompose(dec_tree, dec_spec, dec_n, dec_cap, pretty);
    if (valency->parsed()) return cmd_valency(val_tree, val_n, val_cap, pretty);
    if (trees->parsed()) return cmd_trees(trees_m, trees_format);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
