#include "config.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <string>

#include "actnet/defaults.hpp"
#include "actnet/error.hpp"

namespace actnet::cli {
namespace {

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::pair<Enum, std::string_view> (&names)[N], const char* key) {
  std::string expected;
  for (const auto& [value, name] : names) {
    if (name == text) return value;
    expected += expected.empty() ? "" : ", ";
    expected += name;
  }
  throw ValidationError(key, "unknown " + std::string(key) + " '" + std::string(text) + "' (expected one of " +
                                 expected + ")");
}

template <class Enum, std::size_t N>
std::string_view enum_name(Enum v, const std::pair<Enum, std::string_view> (&names)[N]) {
  for (const auto& [value, name] : names) {
    if (value == v) return name;
  }
  return names[0].second;
}

constexpr std::pair<Subcommand, std::string_view> kSubcommands[] = {
    {Subcommand::Generate, "generate"},         {Subcommand::Activate, "activate"},
    {Subcommand::Fixation, "fixation"},         {Subcommand::MutationFreq, "mutation-freq"},
    {Subcommand::Theory, "theory"},             {Subcommand::Coalescence, "coalescence"},
};
constexpr std::pair<Harness, std::string_view> kHarnesses[] = {
    {Harness::Size, "size"},
    {Harness::Degree, "degree"},
    {Harness::Component, "component"},
    {Harness::MeanDegree, "mean-degree"},
};
constexpr std::pair<GraphKind, std::string_view> kGraphKinds[] = {
    {GraphKind::Rrg, "rrg"},
    {GraphKind::Wsn, "wsn"},
    {GraphKind::Ban, "ban"},
    {GraphKind::File, "file"},
};
constexpr std::pair<InvaderChoice, std::string_view> kInvaders[] = {
    {InvaderChoice::Cooperator, "c"},
    {InvaderChoice::Defector, "d"},
    {InvaderChoice::Both, "both"},
};

template <class T>
void set_default(std::optional<T>& field, T value) {
  if (!field) field = value;
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

void require_rate(double x, const char* key) {
  if (!(x > 2.0)) throw ValidationError(key, std::string(key) + " values must exceed 2");
}

}  // namespace

std::string_view to_string(Subcommand s) noexcept { return enum_name(s, kSubcommands); }
std::string_view to_string(Harness h) noexcept { return enum_name(h, kHarnesses); }
std::string_view to_string(GraphKind g) noexcept { return enum_name(g, kGraphKinds); }
std::string_view to_string(InvaderChoice i) noexcept { return enum_name(i, kInvaders); }
Subcommand subcommand_from_string(std::string_view s) { return parse_enum(s, kSubcommands, "subcommand"); }
Harness harness_from_string(std::string_view s) { return parse_enum(s, kHarnesses, "harness"); }
GraphKind graph_kind_from_string(std::string_view s) { return parse_enum(s, kGraphKinds, "graph"); }
InvaderChoice invader_from_string(std::string_view s) { return parse_enum(s, kInvaders, "invader"); }

void resolve(RunConfig& c) {
  set_default(c.graph.seed, c.seed);
  switch (c.subcommand) {
    case Subcommand::Activate:
      switch (c.harness) {
        case Harness::Size:
          set_default(c.burn_in, defaults::kSizeBurnIn);
          set_default(c.horizon, defaults::kSizeHorizon);
          set_default(c.dt, defaults::kSizeDt);
          break;
        case Harness::Degree:
          set_default(c.burn_in, defaults::kDegreeBurnIn);
          set_default(c.horizon, defaults::kDegreeHorizon);
          set_default(c.dt, defaults::kDegreeDt);
          break;
        case Harness::Component:
        case Harness::MeanDegree:
          set_default(c.burn_in, defaults::kSweepBurnIn);
          set_default(c.horizon, defaults::kSweepHorizon);
          set_default(c.dt, defaults::kSweepDt);
          if (c.lambdas.empty()) c.lambdas = {c.rates.lambda};
          if (c.mus.empty()) c.mus = {c.rates.mu};
          break;
      }
      break;
    case Subcommand::Fixation:
      set_default(c.replicates, defaults::kFixationReplicates);
      set_default(c.horizon, defaults::kFixationHorizon);
      set_default(c.warmup, defaults::kFixationWarmup);
      set_default(c.game.v, 0.0);
      break;
    case Subcommand::MutationFreq:
      set_default(c.burn_in, defaults::kMutationBurnIn);
      set_default(c.samples, defaults::kMutationSamples);
      set_default(c.dt, defaults::kMutationSampleDt);
      set_default(c.game.v, defaults::kMutation);
      break;
    case Subcommand::Generate:
    case Subcommand::Theory:
    case Subcommand::Coalescence:
      break;
  }
}

void validate(const RunConfig& c) {
  c.rates.validate();

  const GraphSpec& g = c.graph;
  if (g.kind == GraphKind::File) {
    if (g.path.empty()) throw ValidationError("edge-list", "graph 'file' needs --edge-list");
  } else {
    if (g.n < 2) throw ValidationError("n", "n must be at least 2");
    if (g.kind == GraphKind::Rrg) {
      if (g.k < 1 || g.k >= g.n) throw ValidationError("k", "k must satisfy 1 <= k < n");
      if ((g.n * g.k) % 2 != 0) throw ValidationError("k", "n * k must be even for a regular graph");
    }
    if (g.kind == GraphKind::Wsn) {
      if (g.k == 0 || g.k % 2 != 0 || g.k >= g.n) throw ValidationError("k", "k must be even, positive and below n");
      if (!(g.rewire >= 0.0 && g.rewire <= 1.0)) throw ValidationError("rewire", "rewire must lie in [0, 1]");
    }
    if (g.kind == GraphKind::Ban && (g.m < 1 || g.m >= g.n)) {
      throw ValidationError("m", "m must satisfy 1 <= m < n");
    }
  }

  GameParams::donation(c.game.b, c.game.c, c.game.w, c.game.delta, c.game.v.value_or(0.0)).validate();

  if (c.burn_in && c.horizon && c.dt) sampling_of(c).validate();
  if (c.subcommand == Subcommand::Fixation) {
    if (*c.replicates < 1) throw ValidationError("replicates", "replicates must be at least 1");
    if (!(*c.horizon > 0.0)) throw ValidationError("horizon", "horizon must be positive");
    if (!(*c.warmup >= 0.0)) throw ValidationError("warmup", "warmup must be non-negative");
    if (*c.game.v != 0.0) throw ValidationError("v", "fixation requires v = 0");
  }
  if (c.subcommand == Subcommand::MutationFreq) {
    if (!(*c.burn_in >= 0.0)) throw ValidationError("burn-in", "burn-in must be non-negative");
    if (*c.samples < 1) throw ValidationError("samples", "samples must be at least 1");
    if (!(*c.dt > 0.0)) throw ValidationError("dt", "dt must be positive");
    if (!(*c.game.v > 0.0)) throw ValidationError("v", "mutation-freq requires v > 0");
  }
  for (double x : c.lambdas) require_rate(x, "lambdas");
  for (double x : c.mus) require_rate(x, "mus");
  if (c.solver_bound < 2) throw ValidationError("solver-bound", "solver bound must be at least 2");
  if (c.out_dir.empty()) throw ValidationError("out-dir", "output directory must not be empty");
}

SamplingSpec sampling_of(const RunConfig& c) {
  return {c.burn_in.value_or(0.0), c.horizon.value_or(0.0), c.dt.value_or(0.0)};
}

nlohmann::json to_json(const RunConfig& c) {
  using nlohmann::json;
  return json{
      {"subcommand", to_string(c.subcommand)},
      {"graph",
       {{"generator", to_string(c.graph.kind)},
        {"n", c.graph.n},
        {"k", c.graph.k},
        {"m", c.graph.m},
        {"rewire", c.graph.rewire},
        {"edge_list", c.graph.path},
        {"seed", optional_json(c.graph.seed)}}},
      {"rates", {{"lambda", c.rates.lambda}, {"mu", c.rates.mu}, {"t0", c.rates.t0}, {"cap", c.rates.cap}}},
      {"game",
       {{"b", c.game.b},
        {"c", c.game.c},
        {"w", c.game.w},
        {"delta", c.game.delta},
        {"v", optional_json(c.game.v)}}},
      {"harness", to_string(c.harness)},
      {"burn_in", optional_json(c.burn_in)},
      {"horizon", optional_json(c.horizon)},
      {"dt", optional_json(c.dt)},
      {"replicates", optional_json(c.replicates)},
      {"samples", optional_json(c.samples)},
      {"warmup", optional_json(c.warmup)},
      {"invader", to_string(c.invader)},
      {"lambdas", c.lambdas},
      {"mus", c.mus},
      {"convention", theory::to_string(c.convention)},
      {"solver_bound", c.solver_bound},
      {"seed", c.seed},
      {"workers", c.workers},
      {"out_dir", c.out_dir},
      {"json", c.json},
  };
}

RunConfig from_json(const nlohmann::json& j) {
  try {
    RunConfig c;
    c.subcommand = subcommand_from_string(j.at("subcommand").get<std::string>());
    const auto& g = j.at("graph");
    c.graph.kind = graph_kind_from_string(g.at("generator").get<std::string>());
    c.graph.n = g.at("n").get<std::size_t>();
    c.graph.k = g.at("k").get<std::size_t>();
    c.graph.m = g.at("m").get<std::size_t>();
    c.graph.rewire = g.at("rewire").get<double>();
    c.graph.path = g.at("edge_list").get<std::string>();
    c.graph.seed = optional_from<std::uint64_t>(g, "seed");
    const auto& r = j.at("rates");
    c.rates.lambda = r.at("lambda").get<double>();
    c.rates.mu = r.at("mu").get<double>();
    c.rates.t0 = r.at("t0").get<double>();
    c.rates.cap = r.at("cap").get<double>();
    const auto& game = j.at("game");
    c.game.b = game.at("b").get<double>();
    c.game.c = game.at("c").get<double>();
    c.game.w = game.at("w").get<double>();
    c.game.delta = game.at("delta").get<double>();
    c.game.v = optional_from<double>(game, "v");
    c.harness = harness_from_string(j.at("harness").get<std::string>());
    c.burn_in = optional_from<double>(j, "burn_in");
    c.horizon = optional_from<double>(j, "horizon");
    c.dt = optional_from<double>(j, "dt");
    c.replicates = optional_from<std::uint64_t>(j, "replicates");
    c.samples = optional_from<std::uint64_t>(j, "samples");
    c.warmup = optional_from<double>(j, "warmup");
    c.invader = invader_from_string(j.at("invader").get<std::string>());
    c.lambdas = j.at("lambdas").get<std::vector<double>>();
    c.mus = j.at("mus").get<std::vector<double>>();
    c.convention = theory::walk_convention_from_string(j.at("convention").get<std::string>());
    c.solver_bound = j.at("solver_bound").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.workers = j.at("workers").get<unsigned>();
    c.out_dir = j.at("out_dir").get<std::string>();
    c.json = j.at("json").get<bool>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("manifest", std::string("malformed run config: ") + e.what());
  }
}

}  // namespace actnet::cli
