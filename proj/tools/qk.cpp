// Command-line front end: construct, certify, generate, and measure.
// Subcommand results go to stdout as JSON (gen emits the instance text
// itself unless --out redirects it); failures go to stderr as JSON with a
// stable exit code per error family.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qk/detect.hpp"
#include "qk/digraph.hpp"
#include "qk/errors.hpp"
#include "qk/generate.hpp"
#include "qk/io.hpp"
#include "qk/oracle.hpp"
#include "qk/rational.hpp"
#include "qk/solver.hpp"

using nlohmann::json;

namespace {

struct LoadedInstance {
  qk::Digraph graph;
  std::string text;  // exact bytes, reused for result keying
};

LoadedInstance read_instance(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw qk::ParseError(0, "cannot open " + path);
    buf << in.rdbuf();
  }
  std::string text = buf.str();
  return {qk::parse_instance(text), std::move(text)};
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hex16(uint64_t x) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, x >>= 4) s[i] = digits[x & 15];
  return s;
}

json set_to_json(const qk::VertexSet& s) { return json(s); }

void emit(const json& j, const std::string& results_dir, const std::string& key) {
  std::cout << j.dump(2) << "\n";
  if (!results_dir.empty()) {
    std::filesystem::create_directories(results_dir);
    std::ofstream out(std::filesystem::path(results_dir) / (hex16(fnv1a64(key)) + ".json"));
    out << j.dump(2) << "\n";
  }
}

// detect reports a failed certificate through the exit code as well.
int g_exit = 0;

qk::Strategy make_strategy(const std::string& name, const std::string& t_str, int d,
                           int exact_tail) {
  qk::Strategy s = qk::Strategy::baseline();
  if (name == "baseline") {
    s = qk::Strategy::baseline();
  } else if (name == "tratio") {
    s = qk::Strategy::tratio(qk::Rational::parse(t_str));
  } else if (name == "outdeg3") {
    s = qk::Strategy::outdeg3();
  } else if (name == "short-cycle-free") {
    s = qk::Strategy::short_cycle_free(d);
  } else if (name == "star-free") {
    s = qk::Strategy::tratio(qk::star_free_threshold(d));
  } else {
    throw qk::Error("unknown strategy: " + name);
  }
  if (exact_tail > 0) s = s.with_exact_tail(exact_tail);
  return s;
}

json phase_to_json(const qk::PhaseTrace& p) {
  return json{{"witness", p.witness},
              {"graph_order", p.graph_order},
              {"s_size", p.s_size},
              {"in_s", p.in_s},
              {"condition_held", p.condition_held},
              {"used_fallback", p.used_fallback},
              {"union_size", p.union_size},
              {"vertices_removed", p.vertices_removed},
              {"k_additions", p.k_additions},
              {"loop_iterations", p.loop_iterations},
              {"v_added", p.v_added_at_reconstruction},
              {"climb_visited", p.climb_visited},
              {"climb_stalled", p.climb_stalled}};
}

void setup_solve(CLI::App& app) {
  auto* cmd = app.add_subcommand("solve", "Construct a small quasi-kernel");
  auto path = std::make_shared<std::string>();
  auto strategy = std::make_shared<std::string>("tratio");
  auto t_str = std::make_shared<std::string>("1");
  auto d = std::make_shared<int>(0);
  auto exact_tail = std::make_shared<int>(0);
  auto trace = std::make_shared<bool>(false);
  auto results_dir = std::make_shared<std::string>();
  cmd->add_option("instance", *path, "instance file, or - for stdin")->required();
  cmd->add_option("--strategy", *strategy,
                  "baseline | tratio | outdeg3 | short-cycle-free | star-free")
      ->check(CLI::IsMember(
          {"baseline", "tratio", "outdeg3", "short-cycle-free", "star-free"}));
  cmd->add_option("--t", *t_str, "threshold for --strategy tratio, e.g. 4/3");
  cmd->add_option("--d", *d, "degree parameter for short-cycle-free / star-free");
  cmd->add_option("--exact-tail", *exact_tail,
                  "finish subgraphs of at most this order exactly (1..24)");
  cmd->add_flag("--trace", *trace, "include per-phase traces");
  cmd->add_option("--results-dir", *results_dir,
                  "also write the result JSON under a content-derived key");
  cmd->callback([=]() {
    auto inst = read_instance(*path);
    qk::Strategy s = make_strategy(*strategy, *t_str, *d, *exact_tail);
    auto t0 = std::chrono::steady_clock::now();
    qk::SolveResult res = qk::solve(inst.graph, s);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    const long long n = inst.graph.order();
    json j{{"command", "solve"},
           {"n", n},
           {"m", inst.graph.edge_count()},
           {"strategy", res.strategy.kind_name()},
           {"q", set_to_json(res.q)},
           {"q_size", res.q.size()},
           {"valid", true},
           {"bound_guaranteed", res.bound_guaranteed},
           {"tail_method", res.tail_method},
           {"fallback_phases", res.fallback_phases},
           {"wall_ms", ms}};
    if (res.strategy.kind != qk::Strategy::Kind::Baseline) {
      const qk::Rational t = res.strategy.t;
      j["t"] = t.str();
      j["bound_ratio"] = t.bound_ratio().str();
      j["bound_satisfied"] =
          (t.num + t.den) * static_cast<long long>(res.q.size()) <= t.num * n;
    }
    if (res.strategy.exact_tail) j["exact_tail"] = *res.strategy.exact_tail;
    if (*trace) {
      json phases = json::array();
      for (const auto& p : res.phases) phases.push_back(phase_to_json(p));
      j["phases"] = phases;
    }
    std::string key = inst.text + "|" + *strategy + "|" + *t_str + "|" +
                      std::to_string(*d) + "|" + std::to_string(*exact_tail);
    emit(j, *results_dir, key);
  });
}

void setup_exact(CLI::App& app) {
  auto* cmd = app.add_subcommand("exact", "Smallest quasi-kernel by exhaustive search");
  auto path = std::make_shared<std::string>();
  auto max_n = std::make_shared<int>(24);
  auto max_subsets = std::make_shared<long long>(50'000'000);
  auto time_ms = std::make_shared<long long>(120'000);
  auto kernel = std::make_shared<bool>(false);
  cmd->add_option("instance", *path, "instance file, or - for stdin")->required();
  cmd->add_option("--max-n", *max_n, "refuse instances larger than this");
  cmd->add_option("--max-subsets", *max_subsets, "search node budget");
  cmd->add_option("--time-limit-ms", *time_ms, "search time budget");
  cmd->add_flag("--kernel", *kernel, "also search for a smallest kernel");
  cmd->callback([=]() {
    auto inst = read_instance(*path);
    qk::OracleBudget budget;
    budget.max_n = *max_n;
    budget.max_subsets = *max_subsets;
    budget.time_limit = std::chrono::milliseconds(*time_ms);
    qk::VertexSet q = qk::smallest_quasi_kernel(inst.graph, budget);
    json j{{"command", "exact"},
           {"n", inst.graph.order()},
           {"m", inst.graph.edge_count()},
           {"quasi_kernel", set_to_json(q)},
           {"size", q.size()}};
    if (*kernel) {
      auto k = qk::smallest_kernel(inst.graph, budget);
      j["kernel"] = k ? json{{"exists", true}, {"set", set_to_json(*k)}, {"size", k->size()}}
                      : json{{"exists", false}};
    }
    emit(j, "", "");
  });
}

void setup_verify(CLI::App& app) {
  auto* cmd = app.add_subcommand("verify", "Check a vertex set against an instance");
  auto path = std::make_shared<std::string>();
  auto set_str = std::make_shared<std::string>();
  cmd->add_option("instance", *path, "instance file, or - for stdin")->required();
  cmd->add_option("--set", *set_str, "comma-separated vertex ids")->required();
  cmd->callback([=]() {
    auto inst = read_instance(*path);
    const qk::Digraph& g = inst.graph;
    qk::VertexSet s;
    std::istringstream ls(*set_str);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      if (tok.empty()) continue;
      s.push_back(std::stoi(tok));
    }
    s = qk::set_normalize(s);
    for (int v : s) g.require_vertex(v);

    std::vector<char> near(g.order(), 0);
    for (int v : s)
      for (int u : qk::ball2(g, v)) near[u] = 1;
    qk::VertexSet uncovered;
    for (int v = 0; v < g.order(); ++v)
      if (!near[v]) uncovered.push_back(v);

    qk::VertexSet not_dominated;
    for (int v = 0; v < g.order(); ++v) {
      if (qk::set_contains(s, v)) continue;
      bool hit = false;
      for (int w : g.in(v))
        if (qk::set_contains(s, w)) {
          hit = true;
          break;
        }
      if (!hit) not_dominated.push_back(v);
    }

    json j{{"command", "verify"},
           {"n", g.order()},
           {"set", set_to_json(s)},
           {"independent", qk::is_independent(g, s)},
           {"quasi_kernel", qk::is_quasi_kernel(g, s)},
           {"kernel", qk::is_kernel(g, s)},
           {"uncovered", set_to_json(uncovered)},
           {"not_dominated", set_to_json(not_dominated)}};
    emit(j, "", "");
  });
}

void setup_detect(CLI::App& app) {
  auto* cmd = app.add_subcommand("detect", "Certify class membership");
  auto path = std::make_shared<std::string>();
  auto cls = std::make_shared<std::string>();
  auto d = std::make_shared<int>(0);
  cmd->add_option("instance", *path, "instance file, or - for stdin")->required();
  cmd->add_option("--class", *cls,
                  "oriented | sourceless | outdeg3 | star-free | short-cycle-free")
      ->required()
      ->check(CLI::IsMember(
          {"oriented", "sourceless", "outdeg3", "star-free", "short-cycle-free"}));
  cmd->add_option("--d", *d, "degree parameter for star-free / short-cycle-free");
  cmd->callback([=]() {
    auto inst = read_instance(*path);
    qk::DigraphClass c;
    if (*cls == "oriented") c = qk::DigraphClass::Oriented;
    else if (*cls == "sourceless") c = qk::DigraphClass::Sourceless;
    else if (*cls == "outdeg3") c = qk::DigraphClass::OutDegree3;
    else if (*cls == "star-free") c = qk::DigraphClass::StarFree;
    else c = qk::DigraphClass::ShortCycleFree;
    qk::ClassCertificate cert = qk::certify(inst.graph, c, *d);
    json j{{"command", "detect"},
           {"n", inst.graph.order()},
           {"class", cert.class_name},
           {"d", cert.d},
           {"holds", cert.holds}};
    if (!cert.holds) {
      json v{{"kind", cert.violation_kind}, {"witness", json(cert.violation_witness)}};
      if (!cert.violation_pattern.empty()) v["pattern"] = cert.violation_pattern;
      j["violation"] = v;
      g_exit = 5;
    }
    emit(j, "", "");
  });
}

void setup_gen(CLI::App& app) {
  auto* cmd = app.add_subcommand("gen", "Generate an instance");
  auto spec = std::make_shared<qk::GenSpec>();
  auto seed_opt = std::make_shared<uint64_t>(0);
  auto residues_str = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--family", spec->family,
                  "cycle | c4s | rotational | paley | paley-sinks | random | "
                  "short-cycle-free | star-free")
      ->required()
      ->check(CLI::IsMember({"cycle", "c4s", "rotational", "paley", "paley-sinks",
                             "random", "short-cycle-free", "star-free"}));
  cmd->add_option("--n", spec->n, "vertex count");
  cmd->add_option("--m", spec->m, "component count for c4s");
  cmd->add_option("--d", spec->d, "degree parameter");
  cmd->add_option("--k", spec->k, "sinks per vertex for paley-sinks");
  cmd->add_option("--q", spec->q, "tournament order");
  cmd->add_option("--seed", *seed_opt, "random seed");
  cmd->add_flag("--oriented", spec->oriented, "forbid digons (random / star-free)");
  cmd->add_option("--residues", *residues_str, "comma-separated, for rotational");
  cmd->add_option("--out", *out, "write instance here; JSON metadata goes to stdout");
  cmd->callback([=]() {
    spec->seed = *seed_opt;
    std::istringstream ls(*residues_str);
    std::string tok;
    while (std::getline(ls, tok, ','))
      if (!tok.empty()) spec->residues.push_back(std::stoi(tok));
    qk::Digraph g = spec->realize();
    auto comments = spec->header_comments();
    if (out->empty()) {
      qk::serialize_instance(g, std::cout, comments);
      return;
    }
    qk::save_instance(g, *out, comments);
    json j{{"command", "gen"},
           {"family", spec->family},
           {"n", g.order()},
           {"m", g.edge_count()},
           {"path", *out}};
    emit(j, "", "");
  });
}

void setup_scan(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "scan", "Evaluate the witness condition at every vertex");
  auto path = std::make_shared<std::string>();
  auto t_str = std::make_shared<std::string>();
  auto rows = std::make_shared<bool>(false);
  cmd->add_option("instance", *path, "instance file, or - for stdin")->required();
  cmd->add_option("--t", *t_str, "threshold, e.g. 1 or 4/3")->required();
  cmd->add_flag("--rows", *rows, "include one row per vertex");
  cmd->callback([=]() {
    auto inst = read_instance(*path);
    qk::ScanReport rep =
        qk::counterexample_scan(inst.graph, qk::Rational::parse(*t_str));
    json j{{"command", "scan"},
           {"n", inst.graph.order()},
           {"t", rep.t.str()},
           {"witness_count", rep.witness_count},
           {"witness_count_posdeg", rep.witness_count_posdeg},
           {"profile_holds", rep.profile_holds},
           {"profile_holds_posdeg", rep.profile_holds_posdeg}};
    if (*rows) {
      json arr = json::array();
      for (const auto& r : rep.rows)
        arr.push_back(json{{"v", r.v},
                           {"out_degree", r.out_degree},
                           {"s_size", r.s_size},
                           {"union_size", r.union_size},
                           {"in_s", r.in_s},
                           {"holds", r.holds}});
      j["rows"] = arr;
    }
    emit(j, "", "");
  });
}

void setup_ratios(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "ratios", "Guaranteed size ratios by degree parameter");
  auto max_d = std::make_shared<int>(8);
  cmd->add_option("--max-d", *max_d, "list d = 4..max-d (plus 25, 50, 100)")
      ->check(CLI::Range(4, 1000));
  cmd->callback([=]() {
    std::vector<int> ds;
    for (int d = 4; d <= *max_d; ++d) ds.push_back(d);
    for (int d : {25, 50, 100})
      if (d > *max_d) ds.push_back(d);
    json rows = json::array();
    for (int d : ds) {
      qk::Rational sf = qk::star_free_threshold(d);
      qk::Rational sc = qk::short_cycle_threshold(d);
      rows.push_back(json{{"d", d},
                          {"star_free", {{"t", sf.str()}, {"ratio", sf.bound_ratio().str()}}},
                          {"short_cycle_free",
                           {{"t", sc.str()}, {"ratio", sc.bound_ratio().str()}}}});
    }
    emit(json{{"command", "ratios"}, {"rows", rows}}, "", "");
  });
}

struct TrialPlan {
  std::string family;
  int n = 0;
  int d = 0;
  bool oriented = false;
  uint64_t seed = 0;
};

struct TrialRow {
  TrialPlan plan;
  std::string strategy;
  qk::Rational t;
  long long q_size = 0;
  std::optional<long long> exact_size;
  bool bound_satisfied = false;
  bool bound_guaranteed = false;
  long long wall_ms = 0;
};

TrialRow run_trial(const TrialPlan& plan) {
  qk::Digraph g = [&]() {
    uint64_t seed = plan.seed;
    for (int retry = 0;; ++retry, ++seed) {
      try {
        if (plan.family == "random")
          return qk::random_sourceless(plan.n, plan.d, seed, plan.oriented);
        if (plan.family == "short-cycle-free")
          return qk::random_short_cycle_free(plan.n, plan.d, seed);
        return qk::random_star_free(plan.n, plan.d, seed, plan.oriented);
      } catch (const qk::GenerationFailedError&) {
        if (retry >= 4) throw;
      }
    }
  }();

  qk::Strategy s = qk::Strategy::baseline();
  if (plan.family == "random") s = qk::Strategy::tratio(qk::Rational(1));
  else if (plan.family == "short-cycle-free") s = qk::Strategy::short_cycle_free(plan.d);
  else s = qk::Strategy::tratio(qk::star_free_threshold(plan.d));

  auto t0 = std::chrono::steady_clock::now();
  qk::SolveResult res = qk::solve(g, s);
  TrialRow row;
  row.plan = plan;
  row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  row.strategy = s.kind_name();
  row.t = s.t;
  row.q_size = static_cast<long long>(res.q.size());
  row.bound_guaranteed = res.bound_guaranteed;
  row.bound_satisfied = (s.t.num + s.t.den) * row.q_size <=
                        s.t.num * static_cast<long long>(g.order());
  if (g.order() <= 14) {
    row.exact_size =
        static_cast<long long>(qk::smallest_quasi_kernel(g).size());
  }
  return row;
}

void setup_bounds(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "bounds", "Random-trial bound measurements over generated instances");
  auto trials = std::make_shared<int>(60);
  auto max_n = std::make_shared<int>(60);
  auto seed = std::make_shared<uint64_t>(12345);
  auto jobs = std::make_shared<int>(1);
  auto csv_path = std::make_shared<std::string>();
  cmd->add_option("--trials", *trials)->check(CLI::PositiveNumber);
  cmd->add_option("--max-n", *max_n)->check(CLI::Range(8, 100000));
  cmd->add_option("--seed", *seed, "master seed; trial seeds derive from it");
  cmd->add_option("--jobs", *jobs, "worker threads")->check(CLI::Range(1, 256));
  cmd->add_option("--csv", *csv_path, "write per-trial rows here (default stdout)");
  cmd->callback([=]() {
    // Seeds are drawn up front so --jobs never changes the trial set.
    qk::SplitMix64 rng(*seed);
    const TrialPlan shapes[] = {
        {"random", 0, 2, false, 0},          {"random", 0, 4, true, 0},
        {"short-cycle-free", 0, 2, false, 0}, {"short-cycle-free", 0, 3, false, 0},
        {"star-free", 0, 3, false, 0},        {"star-free", 0, 4, true, 0},
    };
    std::vector<TrialPlan> plans;
    plans.reserve(*trials);
    for (int i = 0; i < *trials; ++i) {
      TrialPlan p = shapes[i % 6];
      p.n = 8 + static_cast<int>(rng.next_below(*max_n - 7));
      p.seed = rng.next();
      plans.push_back(p);
    }

    std::vector<TrialRow> rows(plans.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= plans.size()) return;
        rows[i] = run_trial(plans[i]);
      }
    };
    int nthreads = std::min<int>(*jobs, static_cast<int>(plans.size()));
    if (nthreads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!csv_path->empty()) {
      file.open(*csv_path);
      if (!file) throw qk::Error("cannot write " + *csv_path);
      os = &file;
    }
    *os << "instance,family,n,d,seed,strategy,t,q_size,exact_size,"
           "scaled_num,scaled_den,bound_satisfied,bound_guaranteed,wall_ms\n";
    // Worst case of (t+1)|Q| / (t n); at most 1 exactly when every bound held.
    long long worst_num = 0, worst_den = 1;
    long long violations = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      const TrialRow& r = rows[i];
      long long num = (r.t.num + r.t.den) * r.q_size;
      long long den = r.t.num * r.plan.n;
      if (static_cast<__int128>(num) * worst_den >
          static_cast<__int128>(worst_num) * den) {
        worst_num = num;
        worst_den = den;
      }
      if (!r.bound_satisfied) ++violations;
      *os << r.plan.family << "-" << i << "," << r.plan.family << "," << r.plan.n
          << "," << r.plan.d << "," << r.plan.seed << "," << r.strategy << ","
          << r.t.str() << "," << r.q_size << ","
          << (r.exact_size ? std::to_string(*r.exact_size) : std::string()) << ","
          << num << "," << den << "," << (r.bound_satisfied ? 1 : 0) << ","
          << (r.bound_guaranteed ? 1 : 0) << "," << r.wall_ms << "\n";
    }
    if (os == &file) {
      json j{{"command", "bounds"},
             {"trials", rows.size()},
             {"csv", *csv_path},
             {"worst_scaled_ratio", qk::Rational(worst_num, worst_den).str()},
             {"bound_violations", violations}};
      emit(j, "", "");
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-kernel construction toolkit"};
  app.require_subcommand(1);
  setup_solve(app);
  setup_exact(app);
  setup_verify(app);
  setup_detect(app);
  setup_gen(app);
  setup_scan(app);
  setup_ratios(app);
  setup_bounds(app);

  auto fail = [](const char* kind, const std::exception& e, int code) {
    std::cerr << json{{"error", kind}, {"message", e.what()}}.dump() << "\n";
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const qk::ParseError& e) {
    return fail("parse", e, 2);
  } catch (const qk::NotSourcelessError& e) {
    return fail("not-sourceless", e, 3);
  } catch (const qk::BudgetExceededError& e) {
    return fail("budget-exceeded", e, 4);
  } catch (const qk::ClassViolationError& e) {
    return fail("class-violation", e, 5);
  } catch (const qk::BadResidueSetError& e) {
    return fail("generation", e, 6);
  } catch (const qk::IneligibleTournamentError& e) {
    return fail("generation", e, 6);
  } catch (const qk::InfeasibleParamsError& e) {
    return fail("generation", e, 6);
  } catch (const qk::GenerationFailedError& e) {
    return fail("generation", e, 6);
  } catch (const std::exception& e) {
    return fail("internal", e, 1);
  }
  return g_exit;
}
