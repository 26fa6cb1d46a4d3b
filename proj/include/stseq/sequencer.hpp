#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stseq/design.hpp"

// Sequencing construction and verification.
//
// A sequencing is ell-good when no ell consecutive positions contain a block,
// i.e. every block's positional span (max position - min position, 1-based)
// is at least ell. greedy_3good and greedy_4good build such sequencings
// constructively; exhaustive_search decides existence outright at small
// orders.

namespace stseq {

enum class PolicyMode { lex_smallest, seeded_random };

// Fixes every free choice a greedy construction makes. lex_smallest scans
// candidate points in increasing index; seeded_random scans a freshly
// shuffled order at each step. Output is deterministic per (system, policy).
struct GreedyPolicy {
  PolicyMode mode = PolicyMode::lex_smallest;
  std::uint64_t seed = 0;

  static GreedyPolicy lex() { return {PolicyMode::lex_smallest, 0}; }
  static GreedyPolicy random(std::uint64_t seed) {
    return {PolicyMode::seeded_random, seed};
  }
};

// nullopt = GOOD. Otherwise the violation with the smallest window_start,
// tie-broken by lexicographically smallest witness block.
// Throws std::invalid_argument on non-permutation input or ell outside
// [3, v].
std::optional<Violation> verify_ell_good(const TripleSystem& system,
                                         const Sequencing& seq, int ell);

// Builds a 3-good sequencing of a validated STS or PSTS with v > 5:
// start a b c d e with {b,c,e} a block (so e = third(b, c)), extend greedily
// avoiding third(x_{i-2}, x_{i-1}), place the forced last point, and swap
// x_1 with x_v if the final window closed a block. A blockless system
// returns the policy's base permutation directly. Throws on v <= 5 or an
// invalid system.
Sequencing greedy_3good(const TripleSystem& system, const GreedyPolicy& policy);

// Look-ahead points y_1..y_m pinned at positions 14, 16, ..., 2m+12
// (1-based): the thirds of all pairs among x_1..x_11 at distance <= 3 that
// are not themselves among x_1..x_11, in ascending point order.
struct PreplacementPlan {
  std::vector<Point> lookahead;

  int m() const { return static_cast<int>(lookahead.size()); }
  // 1-based position of y_j (j in [1, m]).
  static int position_of(int j) { return 2 * j + 12; }
};

// How the last three unplaced points alpha_1..alpha_3 were folded in.
// beta/gamma/delta/epsilon/eta are the thirds that the final six positions
// must dodge; chi = x_kappa is the early point moved to position v-2 and
// replaced by alpha_1.
struct EndgameState {
  Point alpha1 = kNoPoint, alpha2 = kNoPoint, alpha3 = kNoPoint;
  Point beta1 = kNoPoint, beta2 = kNoPoint, beta3 = kNoPoint;
  Point gamma = kNoPoint, delta = kNoPoint, epsilon = kNoPoint,
        eta = kNoPoint;
  Point chi = kNoPoint;
  int kappa = 0;  // 1-based, in [1, 8]
};

struct Greedy4Result {
  enum class Status { found, insufficient_order };

  Status status = Status::insufficient_order;
  std::optional<Sequencing> seq;
  PreplacementPlan plan;               // populated when stage 1 ran
  std::optional<EndgameState> endgame; // populated on found

  bool found() const { return status == Status::found; }
};

// Builds a 4-good sequencing of a validated STS. Reports insufficient_order
// when v < 2m + 18 for the actual look-ahead count m (always the case below
// v = 18; guaranteed to pass for v > 71 since m <= 27). Any dead end past
// that gate is a logic error and throws with a state dump. The returned
// sequencing is re-checked with verify_ell_good before returning.
Greedy4Result greedy_4good(const TripleSystem& system,
                           const GreedyPolicy& policy);

// Re-checks the final six positions of a 4-good sequencing independently of
// the construction: none of the 10 triples that fit inside a 4-window of the
// last six positions may be a block. Returns the offending triple if any.
std::optional<Block> endgame_triple_check(const TripleSystem& system,
                                          const Sequencing& seq);

struct ExhaustiveResult {
  enum class Outcome { found, none_exists, budget_exhausted };

  Outcome outcome = Outcome::none_exists;
  std::optional<Sequencing> seq;  // set iff outcome == found
  std::uint64_t nodes = 0;        // accepted placements explored
};

// Depth-first search over positions in order, candidate values in increasing
// index; a partial assignment is pruned as soon as some block fits inside
// the last ell placed positions. Finds the lexicographically first ell-good
// sequencing, proves none exists, or stops after budget nodes (budget 0 =
// unlimited). Reversal symmetry (a sequencing is ell-good iff its reversal
// is) is deliberately not exploited: it would break the lexicographically-
// first contract.
ExhaustiveResult exhaustive_search(const TripleSystem& system, int ell,
                                   std::uint64_t budget = 0);

// Same tree walk with the candidate order of each position shuffled by a
// seeded RNG: a cheap random-restart probe for ell-good sequencings when the
// full tree is out of reach. Returns the first hit within the node budget.
std::optional<Sequencing> randomized_search(const TripleSystem& system,
                                            int ell, std::uint64_t seed,
                                            std::uint64_t budget);

}  // namespace stseq
