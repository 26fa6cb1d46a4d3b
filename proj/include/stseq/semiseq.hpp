#pragma once

#include <optional>
#include <vector>

#include "stseq/design.hpp"

// Window partition checks: can t consecutive points of a sequencing be
// split into t/3 disjoint blocks? A sequencing is w-semi-good when the
// answer is no for every window of every length t == 0 (mod 3), t <= w.
// At w = 3 this coincides with the 3-good property.

namespace stseq {

// An ordered window of t distinct points, t a positive multiple of 3.
struct PartitionQuery {
  std::vector<Point> window;

  int t() const { return static_cast<int>(window.size()); }
};

// Exact decision by backtracking over blocks containing the smallest
// uncovered point. Returns the t/3 witness blocks (disjoint, covering the
// window exactly) or nullopt when no partition exists. Throws
// std::invalid_argument when t is not a positive multiple of 3 or the
// window has repeats.
std::optional<std::vector<Block>> window_partitionable(
    const TripleSystem& system, const PartitionQuery& query);

// nullopt = GOOD: no window of t consecutive positions, t in {3, 6, ..., w},
// can be partitioned into blocks. Otherwise the first violation in
// (t, window_start) lexicographic order. Requires 3 <= w < v and a
// permutation sequencing.
std::optional<Violation> is_w_semi(const TripleSystem& system,
                                   const Sequencing& seq, int w);

// Empirical check of the implication "(2u+1)-good implies 3u-semi-good" on
// one instance. Requires the input to verify as (2u+1)-good. A returned
// violation would be a counterexample to the implication; callers are
// expected to persist it verbatim.
struct TheoremCheck {
  bool pass = false;
  std::optional<Violation> counterexample;
};

TheoremCheck check_theorem_2u1(const TripleSystem& system,
                               const Sequencing& seq, int u);

}  // namespace stseq
