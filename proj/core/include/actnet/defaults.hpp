#pragma once

// Protocol defaults for every harness. Bump kDefaultsVersion whenever a value
// changes; the version is recorded in each run manifest.

#include <array>
#include <cstddef>
#include <cstdint>

namespace actnet::defaults {

inline constexpr const char* kDefaultsVersion = "1";

// Sojourn laws.
inline constexpr double kLambda = 3.5;
inline constexpr double kMu = 2.6;
inline constexpr double kT0 = 1.0;
inline constexpr double kCap = 1.0e4;

// Size distribution: sample N1(t) for t in [50, 600]. A fine dt approximates
// the continuous time average.
inline constexpr double kSizeBurnIn = 50.0;
inline constexpr double kSizeHorizon = 600.0;
inline constexpr double kSizeDt = 0.01;

// Degree distributions: every 10 time units after t = 20, until t = 200.
inline constexpr double kDegreeBurnIn = 30.0;
inline constexpr double kDegreeHorizon = 200.0;
inline constexpr double kDegreeDt = 10.0;

// Mean degree and largest component: t in [50, 150].
inline constexpr double kSweepBurnIn = 50.0;
inline constexpr double kSweepHorizon = 150.0;
inline constexpr double kSweepDt = 1.0;

inline constexpr std::array<double, 3> kRateGrid{2.6, 3.5, 6.4};

// Game.
inline constexpr double kB = 12.0;
inline constexpr double kC = 1.0;
inline constexpr double kSelection = 0.01;
inline constexpr double kDelta = 1.0;
inline constexpr double kMutation = 0.1;
inline constexpr double kFixationHorizon = 1.0e5;
inline constexpr double kFixationWarmup = 50.0;
inline constexpr std::uint64_t kFixationReplicates = 2000;

// Mutation-selection: 10^4 samples after the burn-in.
inline constexpr double kMutationBurnIn = 1000.0;
inline constexpr std::uint64_t kMutationSamples = 10000;
inline constexpr double kMutationSampleDt = 1.0;

// Generators.
inline constexpr std::size_t kVertices = 1000;
inline constexpr std::size_t kDegree = 8;
inline constexpr double kRewire = 0.4;

inline constexpr std::uint64_t kSeed = 20240601;

}  // namespace actnet::defaults
