#pragma once

// Monte Carlo checks of the cone and recovery formulas. Gaussian draws are
// promoted to the exact dyadic rationals they represent; every geometric
// decision after that is an exact rational computation.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rlah/rational.hpp"
#include "rlah/simplex.hpp"

namespace rlah {

inline constexpr int kMcMaxN = 24;
inline constexpr long long kMcMaxSubsets = 1000000;

struct WalkSample {
  int d = 0;
  int n = 0;
  std::vector<RationalVector> increments;
  std::vector<RationalVector> partial_sums;  // S_1 .. S_n
};

// One Gaussian walk, no genericity check.
WalkSample draw_walk(int d, int n, std::mt19937_64& rng);
// Every min(d, n)-subset of the partial sums is linearly independent.
bool in_general_position(const WalkSample& sample);
// Redraws until in general position; redraws are added to `rejects`.
WalkSample draw_generic_walk(int d, int n, std::mt19937_64& rng, long long& rejects);

// Certificate u with u.S_i = 0 on A and u.S_j <= -1 off A, if any.
// Indices in A are 0-based.
std::optional<RationalVector> face_certificate(const WalkSample& sample, const std::vector<int>& A);
bool is_k_face(const WalkSample& sample, const std::vector<int>& A);

enum class ConeShape { Pointed, ProperNonPointed, FullSpace };
const char* to_string(ConeShape shape);
ConeShape classify_cone(const WalkSample& sample);

// f_k of the cone. k = 0 counts the apex, present iff the cone is pointed.
long long count_faces(const WalkSample& sample, int k);

struct McEstimate {
  int d = 0, n = 0, k = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  long long rejects = 0;
  double elapsed_ms = 0.0;
  // k = 0 runs only: how many trials fell in each ConeShape.
  long long pointed = 0, proper_non_pointed = 0, full_space = 0;
};

// Independent stream for trial `trial` of a run seeded with `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// threads = 0 uses the hardware concurrency.
McEstimate estimate_expected_faces(int d, int n, int k, int trials, std::uint64_t seed,
                                   unsigned threads = 0);

enum class AmplitudeRule { Unit, Random };

struct RecoveryInstance {
  int n = 0, d = 0, k = 0;
  std::vector<int> jump_positions;  // 1-based, increasing
  RationalVector amplitudes;
  RationalVector signal;
  RationalMatrix G;  // d x n
};

RecoveryInstance make_recovery_instance(int d, int n, std::vector<int> jump_positions,
                                        RationalVector amplitudes, RationalMatrix G);
// Redraws G until it has full row rank; redraws are added to `rejects`.
RecoveryInstance draw_recovery_instance(int d, int n, int k, AmplitudeRule rule,
                                        std::mt19937_64& rng, long long& rejects);
bool is_unique_recovery(const RecoveryInstance& inst);

McEstimate estimate_recovery_probability(int d, int n, int k, AmplitudeRule rule, int trials,
                                         std::uint64_t seed, unsigned threads = 0);

}  // namespace rlah
