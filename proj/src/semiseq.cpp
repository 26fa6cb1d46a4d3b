#include "stseq/semiseq.hpp"

#include <algorithm>
#include <stdexcept>

#include "stseq/sequencer.hpp"

namespace stseq {
namespace {

// Blocks indexed by smallest member, for the partition backtracking.
struct BlocksByPoint {
  explicit BlocksByPoint(const TripleSystem& system) : by_point(system.v) {
    for (const Block& blk : system.blocks)
      for (Point p : blk.pts) by_point[p].push_back(blk);
  }

  std::vector<std::vector<Block>> by_point;
};

// Repeatedly cover the smallest remaining point with some block lying
// wholly inside the remaining set.
bool partition_rec(const BlocksByPoint& index, std::vector<bool>& remaining,
                   int remaining_count, std::vector<Block>& witness) {
  if (remaining_count == 0) return true;
  Point lowest = kNoPoint;
  for (Point p = 0; p < static_cast<Point>(remaining.size()); ++p) {
    if (remaining[p]) {
      lowest = p;
      break;
    }
  }
  for (const Block& blk : index.by_point[lowest]) {
    if (!remaining[blk.pts[0]] || !remaining[blk.pts[1]] ||
        !remaining[blk.pts[2]])
      continue;
    for (Point p : blk.pts) remaining[p] = false;
    witness.push_back(blk);
    if (partition_rec(index, remaining, remaining_count - 3, witness))
      return true;
    witness.pop_back();
    for (Point p : blk.pts) remaining[p] = true;
  }
  return false;
}

std::optional<std::vector<Block>> partition_window(
    const BlocksByPoint& index, int v, const std::vector<Point>& window) {
  std::vector<bool> remaining(v, false);
  for (Point p : window) remaining[p] = true;
  std::vector<Block> witness;
  witness.reserve(window.size() / 3);
  if (partition_rec(index, remaining, static_cast<int>(window.size()),
                    witness))
    return witness;
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Block>> window_partitionable(
    const TripleSystem& system, const PartitionQuery& query) {
  const int t = query.t();
  if (t < 3 || t % 3 != 0)
    throw std::invalid_argument(
        "window_partitionable: t must be a positive multiple of 3");
  std::vector<bool> seen(system.v, false);
  for (Point p : query.window) {
    if (p < 0 || p >= system.v)
      throw std::invalid_argument("window_partitionable: point out of range");
    if (seen[p])
      throw std::invalid_argument("window_partitionable: repeated point");
    seen[p] = true;
  }
  const BlocksByPoint index(system);
  return partition_window(index, system.v, query.window);
}

std::optional<Violation> is_w_semi(const TripleSystem& system,
                                   const Sequencing& seq, int w) {
  const int v = system.v;
  if (!is_permutation_of(seq.order, v))
    throw std::invalid_argument("is_w_semi: not a permutation");
  if (w < 3 || w >= v)
    throw std::invalid_argument("is_w_semi: w must be in [3, v)");

  const BlocksByPoint index(system);
  std::vector<Point> window;
  for (int t = 3; t <= w; t += 3) {
    window.resize(t);
    for (int start = 0; start + t <= v; ++start) {
      std::copy_n(seq.order.begin() + start, t, window.begin());
      if (auto witness = partition_window(index, v, window)) {
        return Violation{ViolationKind::window_partition, start + 1, t,
                         std::move(*witness)};
      }
    }
  }
  return std::nullopt;
}

TheoremCheck check_theorem_2u1(const TripleSystem& system,
                               const Sequencing& seq, int u) {
  if (u < 1) throw std::invalid_argument("check_theorem_2u1: u must be >= 1");
  if (verify_ell_good(system, seq, 2 * u + 1))
    throw std::invalid_argument(
        "check_theorem_2u1: input sequencing is not (2u+1)-good");
  TheoremCheck check;
  check.counterexample = is_w_semi(system, seq, 3 * u);
  check.pass = !check.counterexample.has_value();
  return check;
}

}  // namespace stseq
