#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "actnet/coalescence.hpp"
#include "actnet/csv.hpp"
#include "actnet/defaults.hpp"
#include "actnet/error.hpp"
#include "actnet/experiments.hpp"
#include "actnet/theory.hpp"

#ifndef ACTNET_VERSION
#define ACTNET_VERSION "unknown"
#endif

namespace actnet::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Graph randomness never shares a stream with replicate or grid indices.
constexpr std::uint64_t kGraphStream = std::uint64_t{1} << 40;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// FNV-1a, recorded so a manifest pins the exact edge-list bytes.
std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& path) : root_(path) {}

  /// `name` is a bare file name; nothing can escape the output directory.
  void write(const std::string& name, const std::string& content) {
    if (name.empty() || name.find_first_of("/\\") != std::string::npos || name == "." || name == "..") {
      throw Error("refusing to write '" + name + "' outside the output directory");
    }
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw Error("cannot create output directory '" + root_.string() + "': " + ec.message());
    const fs::path target = root_ / name;
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw Error("cannot write '" + target.string() + "'");
    written_.push_back(name);
  }

  const std::vector<std::string>& written() const noexcept { return written_; }

 private:
  fs::path root_;
  std::vector<std::string> written_;
};

struct LoadedGraph {
  Graph graph;
  json info;
};

LoadedGraph build_graph(const GraphSpec& spec) {
  LoadedGraph out;
  if (spec.kind == GraphKind::File) {
    const std::string text = read_text_file(spec.path);
    auto loaded = load_edge_list(text);
    out.graph = std::move(loaded.graph);
    out.info = {{"content_hash", content_hash(text)},
                {"duplicates_dropped", loaded.duplicates_dropped},
                {"self_loops_dropped", loaded.self_loops_dropped}};
  } else {
    RngStream rng(*spec.seed, kGraphStream);
    switch (spec.kind) {
      case GraphKind::Rrg: out.graph = gen_rrg(spec.n, spec.k, rng); break;
      case GraphKind::Wsn: out.graph = gen_wsn(spec.n, spec.k, spec.rewire, rng); break;
      case GraphKind::Ban: out.graph = gen_ban(spec.n, spec.m, rng); break;
      case GraphKind::File: break;
    }
    out.info = json::object();
  }
  out.info["vertices"] = out.graph.vertex_count();
  out.info["edges"] = out.graph.edge_count();
  out.info["mean_degree"] = out.graph.mean_degree();
  out.info["max_degree"] = out.graph.max_degree();
  return out;
}

GameParams game_params(const RunConfig& c) {
  return GameParams::donation(c.game.b, c.game.c, c.game.w, c.game.delta, c.game.v.value_or(0.0));
}

json summary_json(const SummaryStats& s) {
  return {{"mean", s.mean},
          {"variance", s.variance},
          {"skewness", s.skewness},
          {"excess_kurtosis", s.excess_kurtosis},
          {"count", s.count}};
}

std::optional<std::size_t> regular_degree(const Graph& g) {
  if (g.vertex_count() == 0) return std::nullopt;
  const std::size_t k = g.degree(0);
  for (VertexId v = 1; v < g.vertex_count(); ++v) {
    if (g.degree(v) != k) return std::nullopt;
  }
  return k;
}

json optional_critical_bc(std::size_t n, std::size_t k, theory::ActivationProbability p) {
  try {
    return theory::critical_bc(n, k, p);
  } catch (const ValidationError&) {
    return nullptr;  // cooperation cannot be favoured at this (n, k, p)
  }
}

// --- subcommands --------------------------------------------------------------

json run_generate(const LoadedGraph& g, OutputDir& dir) {
  dir.write("graph.txt", write_edge_list(g.graph));
  return {{"graph", g.info}};
}

json run_activate(const RunConfig& c, const LoadedGraph& lg, OutputDir& dir) {
  const Graph& g = lg.graph;
  const SamplingSpec sampling = sampling_of(c);
  json results = {{"graph", lg.info}};
  std::ostringstream csv;
  switch (c.harness) {
    case Harness::Size: {
      const Histogram h = collect_size_distribution(g, c.rates, sampling, RngStream(c.seed, 0));
      write_size_distribution_csv(csv, h, c.rates);
      dir.write("size_distribution.csv", csv.str());
      const auto m = theory::activated_moments(g.vertex_count(), c.rates);
      results["kl_divergence"] = kl_divergence(h, c.rates);
      results["empirical"] = summary_json(h.summary());
      results["theory"] = {{"p", theory::activation_probability(c.rates).p}, {"mean", m.mean}, {"variance", m.variance}};
      break;
    }
    case Harness::Degree: {
      const DegreeStats d = activated_degree_stats(g, c.rates, sampling, RngStream(c.seed, 0));
      CsvWriter w(csv);
      w.header({"degree", "count", "frequency"});
      for (std::size_t k = 0; k <= d.histogram.max_value(); ++k) {
        w.field(k).field(d.histogram.count(k)).field(d.histogram.frequency(k));
        w.end_row();
      }
      dir.write("degree_distribution.csv", csv.str());
      results["degree"] = summary_json(d.stats);
      break;
    }
    case Harness::Component:
    case Harness::MeanDegree: {
      const auto grid = rate_grid(c.lambdas, c.mus);
      const bool component = c.harness == Harness::Component;
      const auto rows = component ? largest_component_sweep(g, c.rates, grid, sampling, c.seed, c.workers)
                                  : mean_degree_sweep(g, c.rates, grid, sampling, c.seed, c.workers);
      const char* column = component ? "largest_component" : "mean_degree";
      write_sweep_csv(csv, rows, column);
      dir.write(component ? "component_sweep.csv" : "mean_degree_sweep.csv", csv.str());
      json points = json::array();
      for (const auto& r : rows) points.push_back({{"lambda", r.lambda}, {"mu", r.mu}, {column, r.value}});
      results["points"] = std::move(points);
      break;
    }
  }
  return results;
}

json run_fixation(const RunConfig& c, const LoadedGraph& lg, OutputDir& dir) {
  const Graph& g = lg.graph;
  const GameParams params = game_params(c);
  params.check_fitness_positive(g);
  FixationOptions options;
  options.horizon = *c.horizon;
  options.warmup = *c.warmup;
  options.workers = c.workers;

  std::vector<std::pair<Invader, const char*>> invaders;
  if (c.invader != InvaderChoice::Defector) invaders.emplace_back(Invader::Cooperator, "c");
  if (c.invader != InvaderChoice::Cooperator) invaders.emplace_back(Invader::Defector, "d");

  std::ostringstream summary;
  CsvWriter w(summary);
  w.header({"invader", "replicates", "fixations", "extinctions", "timeouts", "rho", "std_error", "ci_low", "ci_high"});
  json results = {{"graph", lg.info}, {"neutral_reference", 1.0 / static_cast<double>(g.vertex_count())}};
  for (const auto& [invader, tag] : invaders) {
    // The defector run gets its own master seed so the two estimates are independent.
    const std::uint64_t seed = c.seed + (invader == Invader::Defector ? 1 : 0);
    const auto est = estimate_fixation(g, c.rates, params, invader, *c.replicates, seed, options);
    std::ostringstream records;
    write_fixation_records_csv(records, est.records);
    dir.write(std::string("fixation_") + tag + ".csv", records.str());
    w.field(tag).field(est.replicates).field(est.fixations).field(est.extinctions).field(est.timeouts);
    w.field(est.interval.estimate).field(est.interval.std_error).field(est.interval.low).field(est.interval.high);
    w.end_row();
    results[std::string("rho_") + tag] = {{"estimate", est.interval.estimate},
                                         {"std_error", est.interval.std_error},
                                         {"ci_low", est.interval.low},
                                         {"ci_high", est.interval.high},
                                         {"fixations", est.fixations},
                                         {"extinctions", est.extinctions},
                                         {"timeouts", est.timeouts}};
  }
  dir.write("fixation_summary.csv", summary.str());
  return results;
}

json run_mutation(const RunConfig& c, const LoadedGraph& lg, OutputDir& dir) {
  const Graph& g = lg.graph;
  const GameParams params = game_params(c);
  params.check_fitness_positive(g);
  const auto m = mutation_stationary_frequency(g, c.rates, params, *c.burn_in, *c.samples, c.seed, *c.dt);
  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"mean_coop_fraction", "std_dev", "samples", "update_events", "mutation_events"});
  w.field(m.mean_coop_fraction).field(std::sqrt(m.stats.variance)).field(m.stats.count);
  w.field(m.update_events).field(m.mutation_events);
  w.end_row();
  dir.write("mutation_frequency.csv", csv.str());
  return {{"graph", lg.info},
          {"mean_coop_fraction", m.mean_coop_fraction},
          {"coop_fraction", summary_json(m.stats)},
          {"update_events", m.update_events},
          {"mutation_events", m.mutation_events}};
}

json run_theory(const RunConfig& c) {
  const auto p = theory::activation_probability(c.rates);
  const std::size_t n = c.graph.n;
  const auto m = theory::activated_moments(n, c.rates);
  json results = {{"lambda", c.rates.lambda}, {"mu", c.rates.mu}, {"p", p.p},
                  {"n", n},                   {"mean", m.mean},    {"variance", m.variance}};
  if (c.graph.k >= 1) {
    results["k"] = c.graph.k;
    results["one_step_walk"] = theory::one_step_walk_prob(c.graph.k, p);
    results["critical_bc"] = optional_critical_bc(n, c.graph.k, p);
  }
  return results;
}

json run_coalescence(const RunConfig& c, const LoadedGraph& lg, OutputDir& dir) {
  const Graph& g = lg.graph;
  if (g.vertex_count() > c.solver_bound) {
    throw SolverError("graph has " + std::to_string(g.vertex_count()) + " vertices, above the solver bound of " +
                      std::to_string(c.solver_bound));
  }
  theory::CoalescenceOptions options;
  options.convention = c.convention;
  options.max_vertices = c.solver_bound;
  const auto sol = theory::coalescence_solve(g, c.rates, options);

  std::ostringstream csv;
  CsvWriter w(csv);
  w.header({"vertex", "degree", "tau_i", "walk2_diagonal"});
  for (VertexId v = 0; v < sol.n; ++v) {
    w.field(v).field(g.degree(v)).field(sol.tau_i[v]).field(sol.walk2_diagonal[v]);
    w.end_row();
  }
  dir.write("coalescence_vertices.csv", csv.str());

  const auto first = theory::fixation_first_order(sol, c.game.b, c.game.c, c.game.w);
  json results = {{"graph", lg.info},
                  {"p", sol.p},
                  {"convention", theory::to_string(sol.convention)},
                  {"solver", sol.iterative ? "iterative" : "direct"},
                  {"tau_n", sol.tau_n},
                  {"mean_tau_i", sol.mean_tau_i},
                  {"mean_tau_i_walk2", sol.mean_tau_i_walk2},
                  {"max_residual", sol.max_residual},
                  {"first_order_crossing", theory::first_order_crossing(sol)},
                  {"rho_c", first.rho_c},
                  {"rho_d", first.rho_d}};
  if (const auto k = regular_degree(g)) {
    results["critical_bc"] = optional_critical_bc(sol.n, *k, theory::ActivationProbability::from_value(sol.p));
  } else {
    results["critical_bc"] = nullptr;
  }
  return results;
}

void print_summary(const RunConfig& c, const json& results, std::ostream& out) {
  if (c.json || c.subcommand == Subcommand::Theory) {
    out << results.dump(c.json ? -1 : 2) << '\n';
    return;
  }
  for (const auto& [key, value] : results.items()) {
    if (key == "graph" || key == "points") continue;
    out << key << ": " << value.dump() << '\n';
  }
}

// --- parsing ------------------------------------------------------------------

struct RawOptions {
  std::string graph = "rrg";
  std::string harness = "size";
  std::string invader = "both";
  std::string convention = "lazy";
  std::string manifest;
};

void add_options(CLI::App& app, RunConfig& c, RawOptions& raw) {
  app.add_option("--graph", raw.graph, "Graph generator: rrg, wsn, ban or file")->group("Graph");
  app.add_option("--n", c.graph.n, "Vertex count")->group("Graph");
  app.add_option("--k", c.graph.k, "Degree (rrg), lattice degree (wsn)")->group("Graph");
  app.add_option("--m", c.graph.m, "Edges per arrival (ban)")->group("Graph");
  app.add_option("--rewire", c.graph.rewire, "Rewiring probability (wsn)")->group("Graph");
  app.add_option("--edge-list", c.graph.path, "Edge-list file (graph = file)")->group("Graph");
  app.add_option("--graph-seed", c.graph.seed, "Graph seed (defaults to --seed)")->group("Graph");

  app.add_option("--lambda", c.rates.lambda, "Quiescent sojourn exponent (> 2)")->group("Activation");
  app.add_option("--mu", c.rates.mu, "Activated sojourn exponent (> 2)")->group("Activation");
  app.add_option("--t0", c.rates.t0, "Minimum sojourn")->group("Activation");
  app.add_option("--cap", c.rates.cap, "Sojourn truncation")->group("Activation");

  app.add_option("--b", c.game.b, "Benefit")->group("Game");
  app.add_option("--c", c.game.c, "Cost")->group("Game");
  app.add_option("--w", c.game.w, "Selection intensity")->group("Game");
  app.add_option("--delta", c.game.delta, "Update rate while activated")->group("Game");
  app.add_option("--v", c.game.v, "Mutation probability")->group("Game");

  app.add_option("--harness", raw.harness, "activate harness: size, degree, component or mean-degree")
      ->group("Harness");
  app.add_option("--burn-in", c.burn_in, "First observation time")->group("Harness");
  app.add_option("--horizon", c.horizon, "Last observation time / fixation timeout")->group("Harness");
  app.add_option("--dt", c.dt, "Observation spacing")->group("Harness");
  app.add_option("--replicates", c.replicates, "Fixation replicates per invader")->group("Harness");
  app.add_option("--samples", c.samples, "Mutation-selection samples")->group("Harness");
  app.add_option("--warmup", c.warmup, "Activation warm-up before the invader appears")->group("Harness");
  app.add_option("--invader", raw.invader, "Fixation invader: c, d or both")->group("Harness");
  app.add_option("--lambdas", c.lambdas, "Sweep grid of lambda values")->delimiter(',')->group("Harness");
  app.add_option("--mus", c.mus, "Sweep grid of mu values")->delimiter(',')->group("Harness");
  app.add_option("--convention", raw.convention, "Walk convention: lazy or no-self-loop")->group("Harness");
  app.add_option("--solver-bound", c.solver_bound, "Largest graph the coalescence solver accepts")
      ->group("Harness");

  app.add_option("--seed", c.seed, "Master seed")->group("Run");
  app.add_option("--workers", c.workers, "Worker threads (0 = all available)")->group("Run");
  app.add_option("--out-dir", c.out_dir, "Output directory")->envname("ACTNET_OUT_DIR")->group("Run");
  app.add_flag("--json", c.json, "Machine-readable stdout")->group("Run");
  app.add_option("--manifest", raw.manifest, "Re-run the config recorded in a manifest")
      ->check(CLI::ExistingFile)
      ->group("Run");
  app.set_config("--config", "", "TOML or INI file whose keys mirror the long flags")->group("Run");
}

RunConfig from_manifest(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ValidationError("manifest", std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.contains("schema") || j["schema"] != kManifestSchema) {
    throw ValidationError("manifest", std::string("manifest schema must be ") + kManifestSchema);
  }
  if (!j.contains("config")) throw ValidationError("manifest", "manifest has no config");
  return from_json(j["config"]);
}

}  // namespace

ParseResult parse_config(const std::vector<std::string>& args) {
  RunConfig c;
  RawOptions raw;
  CLI::App app("Evolutionary games on networks with power-law activation", "actnet");
  app.fallthrough();
  add_options(app, c, raw);

  std::vector<CLI::App*> subs;
  for (Subcommand s : {Subcommand::Generate, Subcommand::Activate, Subcommand::Fixation, Subcommand::MutationFreq,
                       Subcommand::Theory, Subcommand::Coalescence}) {
    subs.push_back(app.add_subcommand(std::string(to_string(s))));
  }
  subs[0]->description("Write a generated or loaded graph as an edge list");
  subs[1]->description("Activation harnesses: size, degree, component, mean-degree");
  subs[2]->description("Fixation probabilities of a single invader");
  subs[3]->description("Time-averaged cooperator fraction under mutation");
  subs[4]->description("Closed forms for the activation process (JSON)");
  subs[5]->description("Coalescence times and the first-order critical ratio");
  app.require_subcommand(0, 1);

  ParseResult result;
  if (args.size() <= 1) {
    result.exit_code = kExitUsage;
    result.message = app.help();
    return result;
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    result.message = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.message = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    const bool bad_value = dynamic_cast<const CLI::ConversionError*>(&e) != nullptr ||
                           dynamic_cast<const CLI::ValidationError*>(&e) != nullptr;
    result.exit_code = bad_value ? kExitValidation : kExitUsage;
    result.message = e.what();
    return result;
  }

  std::optional<Subcommand> chosen;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) chosen = subcommand_from_string(subs[i]->get_name());
  }

  try {
    if (!raw.manifest.empty()) {
      for (const CLI::Option* opt : app.get_options()) {
        const std::string name = opt->get_name();
        if (opt->count() == 0 || name == "--manifest" || name == "--out-dir" || name == "--workers" ||
            name == "--json" || name == "--help") {
          continue;
        }
        result.exit_code = kExitUsage;
        result.message = name + " cannot be combined with --manifest";
        return result;
      }
      RunConfig m = from_manifest(raw.manifest);
      if (chosen && *chosen != m.subcommand) {
        throw ValidationError("subcommand", "manifest records subcommand '" + std::string(to_string(m.subcommand)) +
                                                "'");
      }
      if (app.get_option("--out-dir")->count() > 0) m.out_dir = c.out_dir;
      if (app.get_option("--workers")->count() > 0) m.workers = c.workers;
      if (app.get_option("--json")->count() > 0) m.json = c.json;
      c = std::move(m);
    } else {
      if (!chosen) {
        result.exit_code = kExitUsage;
        result.message = "a subcommand is required\n" + app.help();
        return result;
      }
      c.subcommand = *chosen;
      c.graph.kind = graph_kind_from_string(raw.graph);
      c.harness = harness_from_string(raw.harness);
      c.invader = invader_from_string(raw.invader);
      c.convention = theory::walk_convention_from_string(raw.convention);
    }
    resolve(c);
    validate(c);
  } catch (const ValidationError& e) {
    result.exit_code = kExitValidation;
    result.message = "invalid " + e.key() + ": " + e.what();
    return result;
  }
  result.config = std::move(c);
  return result;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  if (c.rates.truncation_bias_warning()) {
    err << "warning: an exponent below 2.5 makes sojourn means sensitive to the cap of " << c.rates.cap << '\n';
  }

  OutputDir dir(c.out_dir);
  json results;
  if (c.subcommand == Subcommand::Theory) {
    results = run_theory(c);
  } else {
    const LoadedGraph g = build_graph(c.graph);
    switch (c.subcommand) {
      case Subcommand::Generate: results = run_generate(g, dir); break;
      case Subcommand::Activate: results = run_activate(c, g, dir); break;
      case Subcommand::Fixation: results = run_fixation(c, g, dir); break;
      case Subcommand::MutationFreq: results = run_mutation(c, g, dir); break;
      case Subcommand::Coalescence: results = run_coalescence(c, g, dir); break;
      case Subcommand::Theory: break;
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json outputs = dir.written();
  outputs.push_back("manifest.json");
  const json manifest = {{"schema", kManifestSchema},
                         {"version", ACTNET_VERSION},
                         {"defaults_version", defaults::kDefaultsVersion},
                         {"config", to_json(c)},
                         {"seed", c.seed},
                         {"wall_time_seconds", wall},
                         {"outputs", outputs},
                         {"results", results}};
  dir.write("manifest.json", manifest.dump(2) + "\n");
  print_summary(c, results, out);
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = parse_config(args);
  if (!parsed.config) {
    (parsed.exit_code == kExitOk ? out : err) << parsed.message << (parsed.message.ends_with('\n') ? "" : "\n");
    return parsed.exit_code;
  }
  try {
    return dispatch(*parsed.config, out, err);
  } catch (const ValidationError& e) {
    err << "invalid " << e.key() << ": " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace actnet::cli
