#pragma once

// Pricing for a single decomposition whose customers are all separated.
//
// Scenario I prices non-skeleton edges: each subtree is active or inactive,
// and every active subtree is solved as a single-source instance rooted at its
// contracted skeleton part. Scenario II prices skeleton edges only: segment
// totals are guessed from a geometric grid and each segment receives one of
// four assignments that preserve its guessed total exactly. Randomized mode
// samples one outcome; derandomized mode enumerates the sample space.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "tollbooth/decomposition.hpp"
#include "tollbooth/model.hpp"

namespace tollbooth {

enum class Mode { kRandomized, kDerandomized };

struct SolverConfig {
  std::uint64_t max_guesses = 1'000'000;
  std::uint64_t max_choices = 1'000'000;
  // Outcomes sampled (best kept) when an enumeration exceeds its cap.
  int fallback_trials = 64;
  bool allow_fallback = true;
  std::uint64_t seed = 0;
  // Receives one statistics line per batch of guesses. Optional.
  std::function<void(std::string_view)> progress;
};

// {0} together with 2^l * b_max / (4nm) for 0 <= l <= floor(log2(4nm^2)).
struct GammaGrid {
  std::vector<Rational> values;  // ascending, values[0] == 0
  Rational b_max;
  int n = 0;
  int m = 0;

  // Largest grid value not exceeding x (0 below the smallest positive value).
  const Rational& floor(const Rational& x) const;
  bool contains(const Rational& x) const;
};

// Throws ValidationError for n < 1, m < 1 or b_max < 0. b_max == 0 gives {0}.
GammaGrid build_gamma_grid(int n, int m, const Rational& b_max);

enum class Selector : std::uint8_t { kFirstEdge, kLastEdge, kLeftRooted, kRightRooted };

using SegmentGuess = std::vector<Rational>;         // one total per segment
using AssignmentChoice = std::vector<Selector>;     // one selector per segment
using CoinVector = std::vector<char>;               // one active flag per subtree

// True when no single subtree holds every edge of the path.
bool is_separated(std::span<const EdgeId> path, const Decomposition& decomposition);

PricingScheme scenario1(const Instance& sub, const Decomposition& decomposition,
                        const SkeletonInfo& skeleton, const CoinVector& active);

// Throws InvariantViolation if a leftover edge price would be negative.
PricingScheme scenario2(const Instance& sub, const Decomposition& decomposition,
                        const SkeletonInfo& skeleton, const SegmentGuess& guess,
                        const AssignmentChoice& choice);

enum class Scenario { kOne, kTwo };

struct DecompositionResult {
  PricingScheme scheme;
  Rational revenue;
  Scenario winner = Scenario::kOne;
  Rational scenario1_revenue;
  std::optional<Rational> scenario2_revenue;  // absent when the skeleton has no edge
  std::uint64_t guesses_examined = 0;
  std::uint64_t outcomes_examined = 0;
  bool fallback_used = false;
};

// Requires every customer of `sub` to be separated by the decomposition.
DecompositionResult solve_decomposition(const Instance& sub, const Decomposition& decomposition,
                                        Mode mode, const SolverConfig& config = {});

// Exact mean revenue over the uniform sample space: all coin vectors for
// Scenario I, or all assignment choices for a fixed guess in Scenario II.
// Throws CapExceededError if the space exceeds config.max_choices.
Rational expected_revenue(const Instance& sub, const Decomposition& decomposition,
                          Scenario scenario, const SegmentGuess* guess = nullptr,
                          const SolverConfig& config = {});

// max over every guess of the Scenario II expectation. Throws CapExceededError
// if the guess count exceeds config.max_guesses.
Rational best_guess_expected_revenue(const Instance& sub, const Decomposition& decomposition,
                                     const SolverConfig& config = {});

}  // namespace tollbooth
