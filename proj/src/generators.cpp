#include "stseq/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace stseq {

TripleSystem fano() {
  TripleSystem system{7, SystemKind::sts, {}};
  for (Point i = 0; i < 7; ++i)
    system.blocks.emplace_back(i, (i + 1) % 7, (i + 3) % 7);
  std::sort(system.blocks.begin(), system.blocks.end());
  return system;
}

TripleSystem bose(int n) {
  if (n < 1) throw std::invalid_argument("bose: n must be >= 1");
  const int q = 2 * n + 1;  // odd group order
  // Point (i, j), i in Z_q, j in {0,1,2}.
  auto pt = [&](int i, int j) { return static_cast<Point>(3 * i + j); };
  // Idempotent commutative quasigroup on Z_q: halving, since 2(n+1) = 1 mod q.
  auto law = [&](int x, int y) {
    return static_cast<int>((static_cast<long>(x + y) * (n + 1)) % q);
  };

  TripleSystem system{6 * n + 3, SystemKind::sts, {}};
  for (int i = 0; i < q; ++i)
    system.blocks.emplace_back(pt(i, 0), pt(i, 1), pt(i, 2));
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      for (int k = 0; k < 3; ++k)
        system.blocks.emplace_back(pt(i, k), pt(j, k),
                                   pt(law(i, j), (k + 1) % 3));
  std::sort(system.blocks.begin(), system.blocks.end());
  return system;
}

TripleSystem skolem(int n) {
  if (n < 1) throw std::invalid_argument("skolem: n must be >= 1");
  const int q = 2 * n;  // quasigroup order; symbols 1..2n, residues mod 2n
  // Point (i, j), i in {1..2n}, j in {1,2,3}; the extra point is v-1.
  auto pt = [&](int i, int j) {
    return static_cast<Point>(3 * (i - 1) + (j - 1));
  };
  const Point infinity = static_cast<Point>(6 * n);

  // Half-idempotent commutative quasigroup: x*y = relabel((x+y) mod 2n),
  // where relabel fixes the diagonal so that i*i = i for i <= n and
  // (n+i)*(n+i) = i. Even residues 2i map to i; odd residues take the
  // leftover symbols n+1..2n in order.
  std::vector<int> relabel(q);
  for (int i = 1; i <= n; ++i) relabel[(2 * i) % q] = i;
  {
    int next = n + 1;
    for (int r = 1; r < q; r += 2) relabel[r] = next++;
  }
  auto law = [&](int x, int y) { return relabel[(x + y) % q]; };

  TripleSystem system{6 * n + 1, SystemKind::sts, {}};
  for (int i = 1; i <= n; ++i)
    system.blocks.emplace_back(pt(i, 1), pt(i, 2), pt(i, 3));
  for (int i = 1; i <= n; ++i) {
    system.blocks.emplace_back(infinity, pt(n + i, 1), pt(i, 2));
    system.blocks.emplace_back(infinity, pt(n + i, 2), pt(i, 3));
    system.blocks.emplace_back(infinity, pt(n + i, 3), pt(i, 1));
  }
  for (int i = 1; i <= q; ++i)
    for (int j = i + 1; j <= q; ++j)
      for (int k = 1; k <= 3; ++k)
        system.blocks.emplace_back(pt(i, k), pt(j, k),
                                   pt(law(i, j), k % 3 + 1));
  std::sort(system.blocks.begin(), system.blocks.end());
  return system;
}

TripleSystem random_psts(int v, std::int64_t target_blocks,
                         std::uint64_t seed) {
  if (v < 1) throw std::invalid_argument("random_psts: v must be >= 1");
  if (target_blocks < 0)
    throw std::invalid_argument("random_psts: target_blocks must be >= 0");

  TripleSystem system{v, SystemKind::psts, {}};
  if (target_blocks == 0 || v < 3) return system;

  std::vector<Block> candidates;
  candidates.reserve(static_cast<std::size_t>(v) * (v - 1) * (v - 2) / 6);
  for (Point a = 0; a < v; ++a)
    for (Point b = a + 1; b < v; ++b)
      for (Point c = b + 1; c < v; ++c) candidates.emplace_back(a, b, c);

  std::mt19937_64 rng(seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);

  std::vector<bool> covered(static_cast<std::size_t>(v) * v, false);
  auto pair_covered = [&](Point x, Point y) -> std::vector<bool>::reference {
    return covered[static_cast<std::size_t>(x) * v + y];
  };
  for (const Block& blk : candidates) {
    const auto [a, b, c] = blk.pts;
    if (pair_covered(a, b) || pair_covered(a, c) || pair_covered(b, c))
      continue;
    pair_covered(a, b) = pair_covered(a, c) = pair_covered(b, c) = true;
    system.blocks.push_back(blk);
    if (static_cast<std::int64_t>(system.blocks.size()) == target_blocks)
      break;
  }
  std::sort(system.blocks.begin(), system.blocks.end());
  return system;
}

}  // namespace stseq
