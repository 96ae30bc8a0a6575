#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "actnet/coalescence.hpp"
#include "actnet/experiments.hpp"
#include "actnet/game.hpp"
#include "actnet/graph.hpp"
#include "actnet/sampling.hpp"

namespace actnet::cli {

inline constexpr const char* kManifestSchema = "actnet-run/1";

enum class Subcommand { Generate, Activate, Fixation, MutationFreq, Theory, Coalescence };
enum class Harness { Size, Degree, Component, MeanDegree };
enum class GraphKind { Rrg, Wsn, Ban, File };
enum class InvaderChoice { Cooperator, Defector, Both };

struct GraphSpec {
  GraphKind kind = GraphKind::Rrg;
  std::size_t n = 1000;
  std::size_t k = 8;
  std::size_t m = 4;
  double rewire = 0.4;
  std::string path;  // edge list for GraphKind::File
  std::optional<std::uint64_t> seed;  // defaults to the master seed

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

struct GameSpec {
  double b = 12.0;
  double c = 1.0;
  double w = 0.01;
  double delta = 1.0;
  std::optional<double> v;  // 0 for fixation, positive for mutation-freq

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

/// Every knob of a run. Optional fields are filled by resolve() with the
/// subcommand-specific defaults; a resolved config has no empty optionals.
struct RunConfig {
  Subcommand subcommand = Subcommand::Theory;
  GraphSpec graph;
  ActivationRates rates;
  GameSpec game;

  Harness harness = Harness::Size;
  std::optional<double> burn_in;
  std::optional<double> horizon;
  std::optional<double> dt;
  std::optional<std::uint64_t> replicates;
  std::optional<std::uint64_t> samples;
  std::optional<double> warmup;
  InvaderChoice invader = InvaderChoice::Both;
  std::vector<double> lambdas;  // sweep grids; empty = the single configured rate
  std::vector<double> mus;
  theory::WalkConvention convention = theory::WalkConvention::Lazy;
  std::size_t solver_bound = 500;

  std::uint64_t seed = 20240601;
  unsigned workers = 0;
  std::string out_dir = "actnet-out";
  bool json = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string_view to_string(Subcommand s) noexcept;
std::string_view to_string(Harness h) noexcept;
std::string_view to_string(GraphKind g) noexcept;
std::string_view to_string(InvaderChoice i) noexcept;
Subcommand subcommand_from_string(std::string_view s);
Harness harness_from_string(std::string_view s);
GraphKind graph_kind_from_string(std::string_view s);
InvaderChoice invader_from_string(std::string_view s);

/// Fills unset optionals with the protocol defaults of the subcommand.
void resolve(RunConfig& config);

/// Throws ValidationError naming the offending key. Call after resolve().
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
RunConfig from_json(const nlohmann::json& j);

/// Sampling spec of the activate and mutation harnesses.
SamplingSpec sampling_of(const RunConfig& config);

}  // namespace actnet::cli
