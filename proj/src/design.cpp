#include "stseq/design.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stseq {

Block::Block(Point a, Point b, Point c) : pts{a, b, c} {
  std::sort(pts.begin(), pts.end());
  if (pts[0] == pts[1] || pts[1] == pts[2]) {
    throw std::invalid_argument("block has repeated points: " +
                                to_string(*this));
  }
}

std::string to_string(const Block& b) {
  std::ostringstream os;
  os << '{' << b.pts[0] << ' ' << b.pts[1] << ' ' << b.pts[2] << '}';
  return os.str();
}

const char* to_string(SystemKind kind) {
  return kind == SystemKind::sts ? "sts" : "psts";
}

std::string ValidationFault::describe() const {
  std::ostringstream os;
  switch (kind) {
    case FaultKind::point_out_of_range:
      os << "point " << a << " out of range [0, v)";
      break;
    case FaultKind::duplicate_pair:
      os << "pair {" << a << "," << b << "} occurs in two blocks";
      break;
    case FaultKind::uncovered_pair:
      os << "pair {" << a << "," << b << "} occurs in no block";
      break;
    case FaultKind::block_count_mismatch:
      os << "sts must have " << expected << " blocks, found " << actual;
      break;
    case FaultKind::order_not_admissible:
      os << "no sts of order " << actual << " exists (v % 6 must be 1 or 3)";
      break;
  }
  return os.str();
}

std::vector<ValidationFault> validate(const TripleSystem& system) {
  std::vector<ValidationFault> faults;
  const int v = system.v;
  if (v < 1) {
    faults.push_back({FaultKind::point_out_of_range, kNoPoint, kNoPoint});
    return faults;
  }

  bool in_range = true;
  for (const Block& blk : system.blocks) {
    for (Point p : blk.pts) {
      if (p < 0 || p >= v) {
        faults.push_back({FaultKind::point_out_of_range, p, kNoPoint});
        in_range = false;
      }
    }
  }
  if (!in_range) return faults;  // pair bookkeeping needs in-range points

  // cover[x*v+y] counts blocks containing the pair {x, y}, x < y.
  std::vector<std::uint8_t> cover(static_cast<std::size_t>(v) * v, 0);
  auto bump = [&](Point x, Point y) {
    std::uint8_t& c = cover[static_cast<std::size_t>(x) * v + y];
    if (c < 2) ++c;
    return c;
  };
  for (const Block& blk : system.blocks) {
    const auto [a, b, c] = blk.pts;
    if (bump(a, b) == 2)
      faults.push_back({FaultKind::duplicate_pair, a, b});
    if (bump(a, c) == 2)
      faults.push_back({FaultKind::duplicate_pair, a, c});
    if (bump(b, c) == 2)
      faults.push_back({FaultKind::duplicate_pair, b, c});
  }

  if (system.kind == SystemKind::sts) {
    if (v % 6 != 1 && v % 6 != 3) {
      faults.push_back(
          {FaultKind::order_not_admissible, kNoPoint, kNoPoint, 0, v});
    }
    const std::int64_t expected = static_cast<std::int64_t>(v) * (v - 1) / 6;
    const std::int64_t actual = static_cast<std::int64_t>(system.blocks.size());
    if (actual != expected) {
      faults.push_back({FaultKind::block_count_mismatch, kNoPoint, kNoPoint,
                        expected, actual});
    }
    for (Point x = 0; x < v; ++x) {
      for (Point y = x + 1; y < v; ++y) {
        if (cover[static_cast<std::size_t>(x) * v + y] == 0) {
          faults.push_back({FaultKind::uncovered_pair, x, y});
        }
      }
    }
  }
  return faults;
}

void require_valid(const TripleSystem& system, const char* who) {
  const auto faults = validate(system);
  if (!faults.empty()) {
    std::ostringstream os;
    os << who << ": invalid " << to_string(system.kind) << "(" << system.v
       << "): " << faults.front().describe();
    if (faults.size() > 1) os << " (+" << faults.size() - 1 << " more)";
    throw std::invalid_argument(os.str());
  }
}

ThirdTable::ThirdTable(const TripleSystem& system)
    : v_(system.v),
      cells_(static_cast<std::size_t>(system.v) * system.v, kNoPoint) {
  auto set = [&](Point x, Point y, Point z) {
    Point& cell = cells_[static_cast<std::size_t>(x) * v_ + y];
    if (cell != kNoPoint) {
      throw std::invalid_argument("third table: pair {" + std::to_string(x) +
                                  "," + std::to_string(y) +
                                  "} occurs in two blocks");
    }
    cell = z;
  };
  for (const Block& blk : system.blocks) {
    const auto [a, b, c] = blk.pts;
    if (a < 0 || c >= v_) {
      throw std::invalid_argument("third table: block " + to_string(blk) +
                                  " out of range");
    }
    set(a, b, c);
    set(b, a, c);
    set(a, c, b);
    set(c, a, b);
    set(b, c, a);
    set(c, b, a);
  }
}

std::int64_t ThirdTable::uncovered_ordered_pairs() const {
  std::int64_t n = 0;
  for (Point x = 0; x < v_; ++x)
    for (Point y = 0; y < v_; ++y)
      if (x != y && third(x, y) == kNoPoint) ++n;
  return n;
}

bool is_permutation_of(const std::vector<Point>& order, int v) {
  if (static_cast<int>(order.size()) != v) return false;
  std::vector<bool> seen(v, false);
  for (Point p : order) {
    if (p < 0 || p >= v || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

std::string to_string(const Violation& violation) {
  std::ostringstream os;
  if (violation.kind == ViolationKind::window_block) {
    os << "block " << to_string(violation.witness.front())
       << " inside window [" << violation.window_start << ", "
       << violation.window_start + violation.window_len - 1 << "]";
  } else {
    os << "window [" << violation.window_start << ", "
       << violation.window_start + violation.window_len - 1
       << "] partitions into blocks";
    for (const Block& b : violation.witness) os << ' ' << to_string(b);
  }
  return os.str();
}

}  // namespace stseq
