// oblab: benchmarks and privacy audits for the differentially oblivious
// algorithm laboratory. Every subcommand is deterministic for a fixed seed;
// OBLAB_SEED overrides --seed when set.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "oblab/dense_tester.hpp"
#include "oblab/graphs.hpp"
#include "oblab/locate.hpp"
#include "oblab/multiquery.hpp"
#include "oblab/noise.hpp"
#include "oblab/prefix.hpp"
#include "oblab/rng.hpp"
#include "oblab/trace.hpp"
#include "oblab/verifier.hpp"

using json = nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json json_number_or_null(double v) {
  if (std::isinf(v) || std::isnan(v)) return nullptr;
  return v;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

// Fans trials over workers; each trial derives its own substream so the
// merged output is byte-identical for any worker count. Worker exceptions
// are rethrown on the calling thread.
std::string run_trials(std::size_t trials, unsigned workers,
                       const std::function<std::string(std::size_t)>& row) {
  std::vector<std::string> rows(trials);
  workers = std::max(1u, workers);
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) rows[t] = row(t);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::size_t begin = w * chunk;
          const std::size_t end = std::min(trials, begin + chunk);
          for (std::size_t t = begin; t < end; ++t) rows[t] = row(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }
  std::string out;
  for (auto& r : rows) {
    out += r;
    out += '\n';
  }
  return out;
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("OBLAB_SEED")) return std::strtoull(env, nullptr, 10);
  return cli_seed;
}

std::vector<double> load_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open data file: " + path);
  json j = json::parse(in);
  if (j.is_object() && j.contains("values")) j = j["values"];
  if (!j.is_array()) throw std::invalid_argument("data file must be a JSON array or {values:[...]}");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

oblab::DenseGraph load_dense_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  const json j = json::parse(in);
  const std::size_t n = j.at("n").get<std::size_t>();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
  return oblab::DenseGraph::from_edges(n, edges);
}

json estimate_to_json(const oblab::EpsilonEstimate& est) {
  json j;
  j["eps_hat"] = json_number_or_null(est.eps_hat);
  j["delta_used"] = est.delta_used;
  j["event_family"] = est.event_family;
  j["ci_low"] = json_number_or_null(est.ci_low);
  j["ci_high"] = json_number_or_null(est.ci_high);
  j["trials"] = est.trials;
  j["unbounded"] = std::isinf(est.ci_high);
  j["degenerate"] = est.degenerate;
  return j;
}

struct CommonOpts {
  std::uint64_t seed = 1;
  std::string output;
  unsigned parallel = 1;
  bool schema = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "Master seed (env OBLAB_SEED overrides)");
  cmd->add_option("--output,-o", o.output, "Output path; stdout when omitted");
  cmd->add_option("--parallel", o.parallel, "Worker threads for independent trials");
  cmd->add_flag("--schema", o.schema, "Print the output schema and exit");
}

bool maybe_print_schema(const CommonOpts& o, const json& schema) {
  if (!o.schema) return false;
  std::cout << schema.dump(2) << "\n";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially oblivious algorithms laboratory"};
  app.require_subcommand(1);

  // tester-bench
  auto* tester = app.add_subcommand("tester-bench", "DO dense-graph property tester benchmark");
  CommonOpts tester_o;
  std::size_t tester_n = 256, tester_trials = 1000, tester_sample = 0;
  double tester_gamma = 0.25, tester_beta = 2.0 / 3.0, tester_eps = 1.0, tester_delta = 0.05;
  std::string tester_fixture = "bipartite";
  tester->add_option("--n", tester_n, "Vertex count");
  tester->add_option("--gamma", tester_gamma, "Base tester distance parameter");
  tester->add_option("--beta", tester_beta, "Base tester success parameter");
  tester->add_option("--epsilon", tester_eps, "Privacy epsilon")->required();
  tester->add_option("--delta", tester_delta, "Privacy delta")->required();
  tester->add_option("--trials", tester_trials, "Number of runs");
  tester->add_option("--sample-size", tester_sample,
                     "Base tester sample size; 0 uses ceil((8/g^2)log2(8/g))");
  tester->add_option("--fixture", tester_fixture, "bipartite | complete | <graph.json>");
  add_common(tester, tester_o);

  // locate-bench
  auto* locate = app.add_subcommand("locate-bench", "DO predicate-location benchmark");
  CommonOpts locate_o;
  std::size_t locate_n = 1024, locate_trials = 1000;
  double locate_p = 0.25, locate_eps = 1.0, locate_delta = 0.01;
  locate->add_option("--n", locate_n, "Dataset size");
  locate->add_option("--p", locate_p, "Fraction of records satisfying the predicate");
  locate->add_option("--epsilon", locate_eps, "Privacy epsilon")->required();
  locate->add_option("--delta", locate_delta, "Privacy delta")->required();
  locate->add_option("--trials", locate_trials, "Number of runs");
  add_common(locate, locate_o);

  // search-bench
  auto* search = app.add_subcommand("search-bench", "DO noisy binary search benchmark");
  CommonOpts search_o;
  std::size_t search_n = 4096, search_trials = 1000;
  double search_eps = 2.0, search_beta = 0.01;
  bool search_exact = false;
  search->add_option("--n", search_n, "Dataset size");
  search->add_option("--epsilon", search_eps, "Privacy epsilon")->required();
  search->add_option("--beta", search_beta, "Accuracy parameter")->required();
  search->add_option("--trials", search_trials, "Number of runs");
  search->add_flag("--exact", search_exact, "Truncated-noise variant that never errs");
  add_common(search, search_o);

  // prefix
  auto* prefix = app.add_subcommand("prefix", "One DO prefix-sum query over a sorted file");
  CommonOpts prefix_o;
  std::string prefix_file;
  double prefix_a = 0.0, prefix_eps = 1.0, prefix_delta = 0.01, prefix_beta = 0.001;
  double prefix_pad_eps = 0.0;
  bool prefix_exact = false;
  std::string prefix_trace_out, prefix_projection;
  prefix->add_option("--file", prefix_file, "JSON array of sorted values")->required();
  prefix->add_option("--a", prefix_a, "Query value")->required();
  prefix->add_option("--epsilon", prefix_eps, "Search epsilon")->required();
  prefix->add_option("--delta", prefix_delta, "Padding delta")->required();
  prefix->add_option("--beta", prefix_beta, "Search accuracy")->required();
  prefix->add_option("--pad-epsilon", prefix_pad_eps, "Padding epsilon; defaults to --epsilon");
  prefix->add_flag("--exact", prefix_exact, "Truncated-noise search");
  prefix->add_option("--trace-out", prefix_trace_out, "Write the access trace as step,kind,address CSV");
  prefix->add_option("--projection", prefix_projection,
                     "Also emit the projected trace (full|addresses|length|intervals)");
  add_common(prefix, prefix_o);

  // multisearch-bench
  auto* multi = app.add_subcommand("multisearch-bench", "MultiSearch prefix-sum session");
  CommonOpts multi_o;
  std::size_t multi_n = 1024, multi_count = 100;
  double multi_eps = 1.0, multi_beta = 0.05;
  std::string multi_queries = "random";
  multi->add_option("--n", multi_n, "Dataset size (records are 1..n)");
  multi->add_option("--epsilon", multi_eps, "Total privacy budget")->required();
  multi->add_option("--beta", multi_beta, "Total accuracy parameter")->required();
  multi->add_option("--queries", multi_queries, "random | <queries.json>");
  multi->add_option("--count", multi_count, "Number of random queries");
  add_common(multi, multi_o);

  // verify
  auto* verify = app.add_subcommand("verify", "Empirical (epsilon, delta) audit of a mechanism");
  CommonOpts verify_o;
  std::string verify_target, verify_projection = "default";
  std::size_t verify_n = 256, verify_trials = 100000, verify_sample = 6;
  double verify_eps = 1.0, verify_delta = 0.01, verify_beta = 0.001;
  double verify_gamma = 0.25, verify_tbeta = 2.0 / 3.0;
  verify->add_option("--target", verify_target, "locate | search | tester")->required();
  verify->add_option("--n", verify_n, "Input size");
  verify->add_option("--epsilon", verify_eps, "Mechanism epsilon")->required();
  verify->add_option("--delta", verify_delta, "Mechanism delta")->required();
  verify->add_option("--trials", verify_trials, "Trace samples per input");
  verify->add_option("--projection", verify_projection, "Trace projection (informational)");
  verify->add_option("--beta", verify_beta, "Search accuracy (search target)");
  verify->add_option("--gamma", verify_gamma, "Base tester gamma (tester target)");
  verify->add_option("--tester-beta", verify_tbeta, "Base tester beta (tester target)");
  verify->add_option("--sample-size", verify_sample, "Base tester sample size (tester target)");
  add_common(verify, verify_o);

  // lowerbound-demo
  auto* lower = app.add_subcommand("lowerbound-demo", "Connectivity-tester distinguishing attack");
  CommonOpts lower_o;
  std::size_t lower_n = 99, lower_q = 6, lower_trials = 1000000;
  bool lower_oblivious = false;
  lower->add_option("--n", lower_n, "Vertex count (multiple of 3, >= 9)");
  lower->add_option("--q", lower_q, "Probe budget");
  lower->add_option("--trials", lower_trials, "Number of sampled (H1, H2) pairs");
  lower->add_flag("--oblivious", lower_oblivious, "Use the fixed-probe tester instead");
  add_common(lower, lower_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (tester->parsed()) {
      if (maybe_print_schema(tester_o, json{{"format", "csv"},
                                            {"columns", {"trial", "output", "probes"}}}))
        return 0;
      const std::uint64_t seed = effective_seed(tester_o.seed);
      const oblab::DoTesterParams params(tester_eps, tester_delta);
      const std::size_t sample = tester_sample != 0
                                     ? tester_sample
                                     : oblab::BaseTesterConfig::bipartiteness(tester_beta,
                                                                              tester_gamma)
                                           .sample_size;
      const oblab::BaseTesterConfig cfg(tester_beta, tester_gamma, sample);
      const bool random_fixture = tester_fixture == "bipartite";
      const oblab::DenseGraph fixed = random_fixture
                                          ? oblab::DenseGraph(1)
                                          : (tester_fixture == "complete"
                                                 ? oblab::DenseGraph::complete(tester_n)
                                                 : load_dense_graph(tester_fixture));
      std::string body = "trial,output,probes\n";
      body += run_trials(tester_trials, tester_o.parallel, [&](std::size_t t) {
        oblab::Rng rng = oblab::Rng::substream(seed, t);
        oblab::DenseGraph g = fixed.clone();
        if (random_fixture) {
          oblab::Rng graph_rng = oblab::Rng::substream(seed ^ 0x6f626c61ULL, t);
          g = oblab::DenseGraph::random_bipartite(tester_n, 0.5, graph_rng);
        }
        const auto res = oblab::do_tester(g, cfg, params, rng);
        return std::to_string(t) + "," + std::to_string(res.accept ? 1 : 0) + "," +
               std::to_string(res.probes);
      });
      write_output(tester_o.output, body);
      return 0;
    }

    if (locate->parsed()) {
      if (maybe_print_schema(locate_o,
                             json{{"format", "csv"},
                                  {"columns", {"trial", "output", "probes", "halted_at_checkpoint"}}}))
        return 0;
      const std::uint64_t seed = effective_seed(locate_o.seed);
      const oblab::LocateParams params(locate_n, locate_eps, locate_delta);
      if (locate_p < 0.0 || locate_p > 1.0)
        throw std::invalid_argument("locate-bench: --p must be in [0,1]");
      const auto ones = static_cast<std::size_t>(locate_p * static_cast<double>(locate_n));
      std::string body = "trial,output,probes,halted_at_checkpoint\n";
      body += run_trials(locate_trials, locate_o.parallel, [&](std::size_t t) {
        oblab::Rng data_rng = oblab::Rng::substream(seed ^ 0x64617461ULL, t);
        std::vector<double> data(locate_n, 0.0);
        for (auto p : data_rng.sample_distinct(static_cast<std::uint32_t>(locate_n),
                                               static_cast<std::uint32_t>(ones)))
          data[p] = 1.0;
        oblab::TracedStore<double> store(std::move(data));
        oblab::Rng rng = oblab::Rng::substream(seed, t);
        const auto res =
            oblab::do_locate(store, [](double v) { return v == 1.0; }, params, rng);
        return std::to_string(t) + "," + std::to_string(res.found ? 1 : 0) + "," +
               std::to_string(res.probes) + "," + std::to_string(res.halted_at_checkpoint ? 1 : 0);
      });
      write_output(locate_o.output, body);
      return 0;
    }

    if (search->parsed()) {
      if (maybe_print_schema(search_o, json{{"format", "csv"},
                                            {"columns", {"trial", "correct", "iterations", "probes"}}}))
        return 0;
      const std::uint64_t seed = effective_seed(search_o.seed);
      const oblab::SearchParams params(search_n, search_eps, search_beta);
      std::string body = "trial,correct,iterations,probes\n";
      body += run_trials(search_trials, search_o.parallel, [&](std::size_t t) {
        oblab::Rng data_rng = oblab::Rng::substream(seed ^ 0x736f7274ULL, t);
        std::vector<double> data(search_n);
        for (auto& v : data) v = data_rng.uniform_unit() * 1e6;
        std::sort(data.begin(), data.end());
        const double a = data_rng.uniform_unit() * 1.1e6 - 0.5e5;
        oblab::TracedStore<double> store(std::move(data));
        oblab::Rng rng = oblab::Rng::substream(seed, t);
        const auto res = oblab::do_search(store, a, params, rng, search_exact);
        const bool correct = res.index == oblab::exact_rank(store, a);
        return std::to_string(t) + "," + std::to_string(correct ? 1 : 0) + "," +
               std::to_string(res.iterations) + "," + std::to_string(res.probes);
      });
      write_output(search_o.output, body);
      return 0;
    }

    if (prefix->parsed()) {
      if (maybe_print_schema(prefix_o,
                             json{{"format", "json"},
                                  {"fields", {"index", "sum", "probes", "padded_to", "clamped",
                                              "budget"}}}))
        return 0;
      const std::uint64_t seed = effective_seed(prefix_o.seed);
      auto values = load_values(prefix_file);
      const oblab::SearchParams params(values.size(), prefix_eps, prefix_beta);
      const double pad_eps = prefix_pad_eps > 0.0 ? prefix_pad_eps : prefix_eps;
      oblab::TracedStore<double> store(std::move(values));
      oblab::Rng rng(seed);
      const auto res = oblab::do_prefix_sum(store, prefix_a, pad_eps, prefix_delta, params, rng,
                                            prefix_exact);
      json j;
      j["index"] = res.index;
      j["sum"] = res.sum;
      j["probes"] = res.probes;
      j["padded_to"] = res.padded_to;
      j["clamped"] = res.clamped;
      j["budget"] = {{"search_epsilon", prefix_eps},
                     {"pad_epsilon", pad_eps},
                     {"pad_delta", prefix_delta}};
      if (!prefix_trace_out.empty()) write_output(prefix_trace_out, store.trace().to_csv());
      if (!prefix_projection.empty()) {
        const auto tokens = oblab::project_trace(
            store.trace(), oblab::projection_from_name(prefix_projection));
        j["projection"] = {{"name", prefix_projection}, {"tokens", tokens}};
      }
      write_output(prefix_o.output, j.dump(2) + "\n");
      return 0;
    }

    if (multi->parsed()) {
      if (maybe_print_schema(multi_o,
                             json{{"format", "csv"},
                                  {"columns",
                                   {"query", "answer", "oracle", "eps_spent", "search_invoked",
                                    "M", "t"}}}))
        return 0;
      const std::uint64_t seed = effective_seed(multi_o.seed);
      std::vector<double> data(multi_n);
      for (std::size_t i = 0; i < multi_n; ++i) data[i] = static_cast<double>(i + 1);
      std::vector<double> queries;
      if (multi_queries == "random") {
        oblab::Rng qrng = oblab::Rng::substream(seed ^ 0x71727973ULL, 0);
        for (std::size_t i = 0; i < multi_count; ++i)
          queries.push_back(qrng.uniform_unit() * static_cast<double>(multi_n + 1));
      } else {
        queries = load_values(multi_queries);
      }
      oblab::MultiSearch session(data, multi_eps, multi_beta);
      oblab::Rng rng(seed);
      std::string body = "query,answer,oracle,eps_spent,search_invoked,M,t\n";
      for (const double q : queries) {
        const auto rep = session.answer_query(q, rng);
        body += format_double(q) + "," + format_double(rep.answer) + "," +
                format_double(session.oracle_prefix_sum(q)) + "," +
                format_double(rep.epsilon_spent) + "," +
                std::to_string(rep.search_invoked ? 1 : 0) + "," +
                std::to_string(rep.records_migrated) + "," + std::to_string(rep.executions) + "\n";
      }
      write_output(multi_o.output, body);
      return 0;
    }

    if (verify->parsed()) {
      if (maybe_print_schema(verify_o,
                             json{{"format", "json"},
                                  {"fields",
                                   {"eps_hat", "delta_used", "event_family", "ci_low", "ci_high",
                                    "trials", "unbounded", "degenerate"}}}))
        return 0;
      const std::uint64_t seed = effective_seed(verify_o.seed);
      oblab::EpsilonEstimate est;
      if (verify_target == "search") {
        est = oblab::audit_search(verify_n, verify_eps, verify_beta, verify_delta, verify_trials,
                                  seed, verify_o.parallel);
      } else if (verify_target == "locate") {
        est = oblab::audit_locate(verify_n, verify_eps, verify_delta, verify_trials, seed,
                                  verify_o.parallel);
      } else if (verify_target == "tester") {
        est = oblab::audit_tester(verify_n, verify_eps, verify_delta, verify_tbeta, verify_gamma,
                                  verify_sample, verify_trials, seed, verify_o.parallel);
      } else {
        throw std::invalid_argument("verify: unknown target " + verify_target);
      }
      if (est.degenerate)
        std::cerr << "warning: every run produced one token; estimate is vacuously 0\n";
      json j = estimate_to_json(est);
      j["target"] = verify_target;
      j["projection"] = est.event_family;
      write_output(verify_o.output, j.dump(2) + "\n");
      return 0;
    }

    if (lower->parsed()) {
      if (maybe_print_schema(lower_o, json{{"format", "json"},
                                           {"fields", {"n", "q", "trials", "adv_h1", "adv_h2",
                                                       "ratio", "tester"}}}))
        return 0;
      const std::uint64_t seed = effective_seed(lower_o.seed);
      const auto rep = oblab::lowerbound_demo(lower_n, lower_q, lower_trials, seed,
                                              lower_oblivious, lower_o.parallel);
      json j;
      j["n"] = rep.n;
      j["q"] = rep.probe_budget;
      j["trials"] = rep.trials;
      j["adv_h1"] = rep.adv_h1;
      j["adv_h2"] = rep.adv_h2;
      j["ratio"] = rep.ratio;
      j["tester"] = lower_oblivious ? "oblivious" : "naive";
      write_output(lower_o.output, j.dump(2) + "\n");
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
