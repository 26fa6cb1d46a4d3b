#include "stseq/sequencer.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace stseq {
namespace {

// Serves candidate orders for greedy choices. lex_smallest hands out the
// identity order every step; seeded_random reshuffles per step.
class CandidateScan {
 public:
  CandidateScan(int v, const GreedyPolicy& policy) : order_(v) {
    std::iota(order_.begin(), order_.end(), 0);
    if (policy.mode == PolicyMode::seeded_random) rng_.emplace(policy.seed);
  }

  const std::vector<Point>& next() {
    if (rng_) std::shuffle(order_.begin(), order_.end(), *rng_);
    return order_;
  }

  std::size_t pick(std::size_t n) {
    if (!rng_ || n <= 1) return 0;
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(*rng_);
  }

 private:
  std::vector<Point> order_;
  std::optional<std::mt19937_64> rng_;
};

SequencingMeta make_meta(const char* base, int ell,
                         const GreedyPolicy& policy) {
  SequencingMeta meta;
  meta.ell = ell;
  if (policy.mode == PolicyMode::seeded_random) {
    meta.method = std::string(base) + "-random";
    meta.seed = policy.seed;
  } else {
    meta.method = std::string(base) + "-lex";
  }
  return meta;
}

std::string dump_partial(const std::vector<Point>& slot, int upto) {
  std::ostringstream os;
  for (int i = 0; i < upto; ++i) {
    if (i) os << ' ';
    if (slot[i] == kNoPoint)
      os << '.';
    else
      os << slot[i];
  }
  return os.str();
}

}  // namespace

std::optional<Violation> verify_ell_good(const TripleSystem& system,
                                         const Sequencing& seq, int ell) {
  const int v = system.v;
  if (!is_permutation_of(seq.order, v))
    throw std::invalid_argument(
        "verify_ell_good: sequencing is not a permutation of the points");
  if (ell < 3 || ell > v)
    throw std::invalid_argument("verify_ell_good: ell must be in [3, v]");

  std::vector<int> pos(v);  // 1-based positions
  for (int i = 0; i < v; ++i) pos[seq.order[i]] = i + 1;

  bool have = false;
  int best_start = 0;
  Block best_block;
  for (const Block& blk : system.blocks) {
    const int p0 = pos[blk.pts[0]], p1 = pos[blk.pts[1]], p2 = pos[blk.pts[2]];
    const int mn = std::min({p0, p1, p2});
    const int mx = std::max({p0, p1, p2});
    if (mx - mn >= ell) continue;  // span large enough: no ell-window holds it
    const int start = std::max(1, mx - ell + 1);
    if (!have || start < best_start ||
        (start == best_start && blk < best_block)) {
      have = true;
      best_start = start;
      best_block = blk;
    }
  }
  if (!have) return std::nullopt;
  return Violation{ViolationKind::window_block, best_start, ell, {best_block}};
}

Sequencing greedy_3good(const TripleSystem& system,
                        const GreedyPolicy& policy) {
  require_valid(system, "greedy_3good");
  const int v = system.v;
  if (v <= 5)
    throw std::invalid_argument("greedy_3good: requires v > 5, got v = " +
                                std::to_string(v));

  CandidateScan scan(v, policy);
  const SequencingMeta meta = make_meta("greedy3", 3, policy);

  if (system.blocks.empty()) {
    // No block to seed the start with; any permutation is vacuously 3-good.
    return Sequencing{scan.next(), meta};
  }

  const ThirdTable table(system);

  // Start a b c d e with {b, c, e} a block, so e = third(b, c).
  Block blk;
  if (policy.mode == PolicyMode::lex_smallest) {
    blk = *std::min_element(system.blocks.begin(), system.blocks.end());
  } else {
    blk = system.blocks[scan.pick(system.blocks.size())];
  }
  const Point b = blk.pts[0], c = blk.pts[1], e = blk.pts[2];
  Point a = kNoPoint, d = kNoPoint;
  for (Point cand : scan.next()) {
    if (!blk.contains(cand)) {
      a = cand;
      break;
    }
  }
  for (Point cand : scan.next()) {
    if (cand != a && !blk.contains(cand)) {
      d = cand;
      break;
    }
  }

  std::vector<Point> x{a, b, c, d, e};
  x.reserve(v);
  std::vector<bool> used(v, false);
  used[a] = used[b] = used[c] = used[d] = used[e] = true;

  for (int i = 5; i < v - 1; ++i) {
    const Point avoid = table.third(x[i - 2], x[i - 1]);
    Point chosen = kNoPoint;
    for (Point cand : scan.next()) {
      if (!used[cand] && cand != avoid) {
        chosen = cand;
        break;
      }
    }
    if (chosen == kNoPoint)  // impossible: at most i+1 <= v-1 exclusions
      throw std::logic_error("greedy_3good: no candidate at position " +
                             std::to_string(i + 1) + "; prefix " +
                             dump_partial(x, i));
    x.push_back(chosen);
    used[chosen] = true;
  }
  for (Point p = 0; p < v; ++p) {
    if (!used[p]) {
      x.push_back(p);
      break;
    }
  }
  if (table.is_block(x[v - 3], x[v - 2], x[v - 1])) std::swap(x[0], x[v - 1]);

  Sequencing out{std::move(x), meta};
  if (auto bad = verify_ell_good(system, out, 3)) {
    throw std::logic_error("greedy_3good: output failed verification: " +
                           to_string(*bad));
  }
  return out;
}

namespace {

// Shared machinery for the 4-good construction. Positions are 0-based here;
// all reporting converts back to 1-based.
class Greedy4Builder {
 public:
  Greedy4Builder(const TripleSystem& system, const GreedyPolicy& policy)
      : table_(system),
        v_(system.v),
        scan_(system.v, policy),
        slot_(system.v, kNoPoint),
        used_(system.v, false),
        banned_(system.v, false) {}

  // Bans, for position p, the third of every assigned pair that shares a
  // window of four consecutive positions with p. With no later positions
  // assigned this is exactly the backward greedy constraint; with
  // pre-placed look-ahead points it also breaks every triple the new value
  // could complete around them.
  void collect_banned(int p) {
    std::fill(banned_.begin(), banned_.end(), false);
    const int lo = std::max(0, p - 3);
    const int hi = std::min(v_ - 1, p + 3);
    for (int q = lo; q <= hi; ++q) {
      if (q == p || slot_[q] == kNoPoint) continue;
      for (int r = q + 1; r <= hi; ++r) {
        if (r == p || slot_[r] == kNoPoint) continue;
        if (std::max({p, q, r}) - std::min({p, q, r}) > 3) continue;
        const Point t = table_.third(slot_[q], slot_[r]);
        if (t != kNoPoint) banned_[t] = true;
      }
    }
  }

  void fill(int p) {
    collect_banned(p);
    for (Point cand : scan_.next()) {
      if (used_[cand] || banned_[cand]) continue;
      slot_[p] = cand;
      used_[cand] = true;
      return;
    }
    std::ostringstream os;
    os << "greedy_4good: stuck at position " << p + 1 << " of " << v_
       << "; prefix [" << dump_partial(slot_, v_) << "]";
    throw std::logic_error(os.str());
  }

  void preplace(int p, Point value) {
    slot_[p] = value;
    used_[value] = true;
  }

  std::vector<Point> unused_points() const {
    std::vector<Point> out;
    for (Point p = 0; p < v_; ++p)
      if (!used_[p]) out.push_back(p);
    return out;
  }

  const ThirdTable& table() const { return table_; }
  std::vector<Point>& slots() { return slot_; }
  Point at(int p) const { return slot_[p]; }

 private:
  ThirdTable table_;
  int v_;
  CandidateScan scan_;
  std::vector<Point> slot_;
  std::vector<bool> used_;
  std::vector<bool> banned_;
};

}  // namespace

Greedy4Result greedy_4good(const TripleSystem& system,
                           const GreedyPolicy& policy) {
  require_valid(system, "greedy_4good");
  if (system.kind != SystemKind::sts)
    throw std::invalid_argument("greedy_4good: requires a full sts");
  const int v = system.v;

  Greedy4Result result;
  // 2m + 18 >= 18 for any m, so orders below 18 can never pass the gate.
  if (v < 18) return result;

  Greedy4Builder builder(system, policy);
  const ThirdTable& table = builder.table();

  // Stage 1: the first 11 points under the plain 4-good constraint.
  for (int p = 0; p < 11; ++p) builder.fill(p);

  // Look-ahead set: thirds of close pairs among the first 11 that are not
  // themselves among the first 11. Ascending order keeps runs reproducible.
  std::vector<bool> in_prefix(v, false);
  for (int i = 0; i < 11; ++i) in_prefix[builder.at(i)] = true;
  std::vector<Point> lookahead;
  for (int i = 0; i < 11; ++i) {
    for (int j = i + 1; j <= std::min(10, i + 3); ++j) {
      const Point t = table.third(builder.at(i), builder.at(j));
      if (t != kNoPoint && !in_prefix[t]) lookahead.push_back(t);
    }
  }
  std::sort(lookahead.begin(), lookahead.end());
  lookahead.erase(std::unique(lookahead.begin(), lookahead.end()),
                  lookahead.end());
  result.plan.lookahead = lookahead;
  const int m = result.plan.m();
  if (m > 27)  // 10 + 9 + 8 close pairs bound the set size
    throw std::logic_error("greedy_4good: lookahead count " +
                           std::to_string(m) + " exceeds 27");

  // The first 2m+12 positions must stay clear of the last six.
  if (v < 2 * m + 18) return result;

  // Stage 2 pre-placement: y_j at 1-based position 2j+12.
  for (int j = 1; j <= m; ++j)
    builder.preplace(PreplacementPlan::position_of(j) - 1, lookahead[j - 1]);

  // Stages 2-3: fill the gaps and continue greedily through x_{v-3}.
  for (int p = 11; p <= v - 4; ++p) {
    if (builder.at(p) == kNoPoint) builder.fill(p);
  }

  // Endgame: fold in the three leftover points.
  const std::vector<Point> leftovers = builder.unused_points();
  if (leftovers.size() != 3)
    throw std::logic_error("greedy_4good: expected 3 unplaced points, got " +
                           std::to_string(leftovers.size()));
  const Point xm5 = builder.at(v - 6);  // x_{v-5} in 1-based terms
  const Point xm4 = builder.at(v - 5);
  const Point xm3 = builder.at(v - 4);

  EndgameState eg;
  eg.beta1 = table.third(xm5, xm4);
  eg.beta2 = table.third(xm5, xm3);
  eg.beta3 = table.third(xm4, xm3);
  if (eg.beta1 == eg.beta2 || eg.beta1 == eg.beta3 || eg.beta2 == eg.beta3)
    throw std::logic_error("greedy_4good: beta points not distinct");

  // Order the leftovers so that alpha2 != beta3 and x_{v-3} is not the
  // third of {alpha2, alpha3}. Pair uniqueness guarantees some ordering
  // works; take the first in permutation order.
  std::array<Point, 3> alphas{leftovers[0], leftovers[1], leftovers[2]};
  bool ordered = false;
  std::array<Point, 3> perm = alphas;
  std::sort(perm.begin(), perm.end());
  do {
    if (perm[1] != eg.beta3 && table.third(perm[1], perm[2]) != xm3) {
      ordered = true;
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!ordered)
    throw std::logic_error(
        "greedy_4good: no admissible ordering of the leftover points");
  eg.alpha1 = perm[0];
  eg.alpha2 = perm[1];
  eg.alpha3 = perm[2];

  eg.gamma = table.third(eg.alpha2, xm3);
  eg.delta = table.third(eg.alpha2, xm4);
  eg.epsilon = table.third(eg.alpha3, xm3);
  eg.eta = table.third(eg.alpha2, eg.alpha3);

  // chi = x_kappa, the first of x_1..x_8 clear of the seven derived points.
  const std::array<Point, 7> derived{eg.beta1, eg.beta2,  eg.beta3, eg.gamma,
                                     eg.delta, eg.epsilon, eg.eta};
  for (int k = 0; k < 8; ++k) {
    const Point cand = builder.at(k);
    if (std::find(derived.begin(), derived.end(), cand) == derived.end()) {
      eg.kappa = k + 1;
      eg.chi = cand;
      break;
    }
  }
  if (eg.kappa == 0)
    throw std::logic_error(
        "greedy_4good: all of x_1..x_8 collide with derived points");

  std::vector<Point>& slots = builder.slots();
  slots[v - 3] = eg.chi;
  slots[v - 2] = eg.alpha2;
  slots[v - 1] = eg.alpha3;
  slots[eg.kappa - 1] = eg.alpha1;

  Sequencing seq{slots, make_meta("greedy4", 4, policy)};
  if (auto bad = verify_ell_good(system, seq, 4)) {
    throw std::logic_error("greedy_4good: output failed verification: " +
                           to_string(*bad) + "; sequencing [" +
                           dump_partial(seq.order, v) + "]");
  }
  if (auto blk = endgame_triple_check(system, seq)) {
    throw std::logic_error("greedy_4good: endgame triple " + to_string(*blk) +
                           " is a block");
  }
  result.status = Greedy4Result::Status::found;
  result.seq = std::move(seq);
  result.endgame = eg;
  return result;
}

std::optional<Block> endgame_triple_check(const TripleSystem& system,
                                          const Sequencing& seq) {
  const int v = system.v;
  if (v < 6)
    throw std::invalid_argument("endgame_triple_check: requires v >= 6");
  if (!is_permutation_of(seq.order, v))
    throw std::invalid_argument("endgame_triple_check: not a permutation");

  std::vector<Block> sorted_blocks(system.blocks);
  std::sort(sorted_blocks.begin(), sorted_blocks.end());

  // All triples of the last six positions that fit in a 4-window: exactly
  // the index triples of span <= 3, ten of them.
  const auto* tail = seq.order.data() + (v - 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      for (int k = j + 1; k < 6 && k - i <= 3; ++k) {
        const Block probe(tail[i], tail[j], tail[k]);
        if (std::binary_search(sorted_blocks.begin(), sorted_blocks.end(),
                               probe))
          return probe;
      }
    }
  }
  return std::nullopt;
}

namespace {

// One DFS serves both the exhaustive and the randomized searches; they
// differ only in candidate order.
class WindowSearch {
 public:
  WindowSearch(const TripleSystem& system, int ell, std::uint64_t budget,
               std::mt19937_64* rng)
      : table_(system),
        v_(system.v),
        ell_(ell),
        budget_(budget),
        rng_(rng),
        x_(system.v, kNoPoint),
        used_(system.v, false),
        banned_(system.v, std::vector<char>(system.v, 0)),
        order_(system.v, std::vector<Point>(system.v)) {
    for (auto& ord : order_) std::iota(ord.begin(), ord.end(), 0);
  }

  ExhaustiveResult run() {
    ExhaustiveResult result;
    const bool found = dfs(0);
    result.nodes = nodes_;
    if (found) {
      result.outcome = ExhaustiveResult::Outcome::found;
      result.seq = Sequencing{x_, SequencingMeta{"exhaustive", ell_, {}}};
    } else {
      result.outcome = budget_hit_
                           ? ExhaustiveResult::Outcome::budget_exhausted
                           : ExhaustiveResult::Outcome::none_exists;
    }
    return result;
  }

 private:
  bool dfs(int p) {
    if (p == v_) return true;

    // Values that would close a block within the trailing ell-window.
    // Each depth owns its banned array: deeper calls must not clobber the
    // bans still guarding this loop.
    std::vector<char>& banned = banned_[p];
    std::fill(banned.begin(), banned.end(), 0);
    const int lo = std::max(0, p - ell_ + 1);
    for (int q = lo; q < p; ++q) {
      for (int r = q + 1; r < p; ++r) {
        const Point t = table_.third(x_[q], x_[r]);
        if (t != kNoPoint) banned[t] = 1;
      }
    }

    std::vector<Point>& ord = order_[p];
    if (rng_) std::shuffle(ord.begin(), ord.end(), *rng_);
    for (Point cand : ord) {
      if (used_[cand] || banned[cand]) continue;
      if (budget_ != 0 && nodes_ >= budget_) {
        budget_hit_ = true;
        return false;
      }
      ++nodes_;
      x_[p] = cand;
      used_[cand] = true;
      if (dfs(p + 1)) return true;
      used_[cand] = false;
      x_[p] = kNoPoint;
      if (budget_hit_) return false;
    }
    return false;
  }

  ThirdTable table_;
  int v_;
  int ell_;
  std::uint64_t budget_;
  std::mt19937_64* rng_;
  std::vector<Point> x_;
  std::vector<bool> used_;
  std::vector<std::vector<char>> banned_;
  std::vector<std::vector<Point>> order_;
  std::uint64_t nodes_ = 0;
  bool budget_hit_ = false;
};

}  // namespace

ExhaustiveResult exhaustive_search(const TripleSystem& system, int ell,
                                   std::uint64_t budget) {
  require_valid(system, "exhaustive_search");
  if (ell < 3 || ell > system.v)
    throw std::invalid_argument("exhaustive_search: ell must be in [3, v]");
  return WindowSearch(system, ell, budget, nullptr).run();
}

std::optional<Sequencing> randomized_search(const TripleSystem& system,
                                            int ell, std::uint64_t seed,
                                            std::uint64_t budget) {
  require_valid(system, "randomized_search");
  if (ell < 3 || ell > system.v)
    throw std::invalid_argument("randomized_search: ell must be in [3, v]");
  std::mt19937_64 rng(seed);
  ExhaustiveResult result = WindowSearch(system, ell, budget, &rng).run();
  if (result.outcome != ExhaustiveResult::Outcome::found) return std::nullopt;
  result.seq->meta.method = "random-restart";
  result.seq->meta.seed = seed;
  return std::move(result.seq);
}

}  // namespace stseq
