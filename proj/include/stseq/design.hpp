#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Core types for (partial) Steiner triple systems: points, blocks, the
// third-point lookup table, sequencings and property violations. Everything
// here is a plain value type; systems and tables are immutable once built and
// safe to share across threads.

namespace stseq {

// Points are 0-based indices into [0, v).
using Point = std::int32_t;
inline constexpr Point kNoPoint = -1;

// A 3-subset of points, stored in strictly increasing order.
struct Block {
  std::array<Point, 3> pts{kNoPoint, kNoPoint, kNoPoint};

  Block() = default;
  // Canonicalizes (sorts); throws std::invalid_argument on repeated points.
  Block(Point a, Point b, Point c);

  bool contains(Point x) const {
    return pts[0] == x || pts[1] == x || pts[2] == x;
  }

  auto operator<=>(const Block&) const = default;
};

std::string to_string(const Block& b);

enum class SystemKind { sts, psts };

const char* to_string(SystemKind kind);

// A (partial) Steiner triple system: v points and a list of blocks.
// Invariants (checked by validate, not by construction):
//   - every unordered pair of points occurs in at most one block;
//   - kind == sts additionally requires every pair covered, v == 1,3 (mod 6)
//     and exactly v(v-1)/6 blocks.
struct TripleSystem {
  int v = 0;
  SystemKind kind = SystemKind::psts;
  std::vector<Block> blocks;

  bool operator==(const TripleSystem&) const = default;
};

enum class FaultKind {
  point_out_of_range,   // block mentions a point outside [0, v)
  duplicate_pair,       // pair occurs in two blocks
  uncovered_pair,       // sts only: pair occurs in no block
  block_count_mismatch, // sts only: |blocks| != v(v-1)/6
  order_not_admissible, // sts only: v != 1,3 (mod 6)
};

struct ValidationFault {
  FaultKind kind;
  Point a = kNoPoint;  // offending pair, when applicable
  Point b = kNoPoint;
  std::int64_t expected = 0;  // for block_count_mismatch
  std::int64_t actual = 0;

  std::string describe() const;
};

// Empty result means the system satisfies the invariants of its declared
// kind. Faults are data, not errors: an invalid system is a legitimate
// object to hold (the test corpus ships one on purpose).
std::vector<ValidationFault> validate(const TripleSystem& system);

inline bool is_valid(const TripleSystem& system) {
  return validate(system).empty();
}

// Throws std::invalid_argument describing the first fault if invalid.
void require_valid(const TripleSystem& system, const char* who);

// Dense v x v lookup for third(x, y) = z iff {x, y, z} is a block.
// kNoPoint on the diagonal and on pairs covered by no block.
class ThirdTable {
 public:
  // Throws std::invalid_argument if some pair occurs in two blocks.
  explicit ThirdTable(const TripleSystem& system);

  int order() const { return v_; }

  Point third(Point x, Point y) const {
    return cells_[static_cast<std::size_t>(x) * v_ + y];
  }

  bool is_block(Point x, Point y, Point z) const {
    return x != y && z != kNoPoint && third(x, y) == z;
  }

  // Off-diagonal kNoPoint entries; 0 for a full STS.
  std::int64_t uncovered_ordered_pairs() const;

 private:
  int v_ = 0;
  std::vector<Point> cells_;
};

inline ThirdTable build_third_table(const TripleSystem& system) {
  return ThirdTable(system);
}

// Provenance carried alongside a sequencing; round-trips through files.
struct SequencingMeta {
  std::string method;  // "greedy3-lex", "greedy4-random", "exhaustive", ...
  int ell = 0;         // target window length; 0 = unspecified
  std::optional<std::uint64_t> seed;

  bool operator==(const SequencingMeta&) const = default;
};

// A permutation of the points of one system.
struct Sequencing {
  std::vector<Point> order;
  SequencingMeta meta;

  bool operator==(const Sequencing&) const = default;
};

// True iff order is a permutation of [0, v).
bool is_permutation_of(const std::vector<Point>& order, int v);

enum class ViolationKind { window_block, window_partition };

// Witness that a sequencing fails a property.
//   window_block:     witness is one block inside the window of window_len
//                     consecutive positions starting at window_start.
//   window_partition: witness blocks are disjoint and exactly cover the
//                     window's point set.
// window_start is 1-based, matching the x_1..x_v convention used in output.
struct Violation {
  ViolationKind kind = ViolationKind::window_block;
  int window_start = 0;
  int window_len = 0;
  std::vector<Block> witness;
};

std::string to_string(const Violation& violation);

}  // namespace stseq
