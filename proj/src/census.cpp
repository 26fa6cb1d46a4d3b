#include "stseq/census.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "stseq/sequencer.hpp"

namespace stseq {
namespace {

constexpr int kFactorialCapLimit = 20;  // 21! overflows std::uint64_t

// Reusable bitset over window starts.
class WindowMask {
 public:
  explicit WindowMask(int windows) : words_((windows + 63) / 64, 0) {}

  void clear() { std::fill(words_.begin(), words_.end(), 0); }
  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }

  template <typename F>
  void for_each_set(F&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        fn(static_cast<int>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Marks every 1-based window start i whose ell-window contains a block, for
// the permutation whose 1-based positions are in pos[]. Bit i-1 of the mask.
void mark_forbidden_windows(const TripleSystem& system,
                            const std::vector<int>& pos, int ell,
                            WindowMask& mask) {
  const int v = system.v;
  mask.clear();
  for (const Block& blk : system.blocks) {
    const int p0 = pos[blk.pts[0]], p1 = pos[blk.pts[1]], p2 = pos[blk.pts[2]];
    const int mn = std::min({p0, p1, p2});
    const int mx = std::max({p0, p1, p2});
    if (mx - mn >= ell) continue;
    const int lo = std::max(1, mx - ell + 1);
    const int hi = std::min(mn, v - ell + 1);
    for (int i = lo; i <= hi; ++i) mask.set(i - 1);
  }
}

void accumulate(CensusReport& report, const WindowMask& mask) {
  if (mask.any()) ++report.total_forbidden;
  mask.for_each_set([&](int bit) { ++report.per_i_forbidden[bit]; });
}

void check_census_args(const TripleSystem& system, int ell) {
  require_valid(system, "census");
  if (ell < 3 || ell > system.v)
    throw std::invalid_argument("census: ell must be in [3, v]");
}

double rate_stderr(double p, std::uint64_t samples) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

}  // namespace

std::uint64_t factorial_u64(int n) {
  if (n < 0 || n > kFactorialCapLimit)
    throw std::invalid_argument("factorial_u64: n must be in [0, 20]");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::optional<OverlapCertificate> find_overlap_certificate(
    const TripleSystem& system) {
  std::vector<Block> blocks(system.blocks);
  std::sort(blocks.begin(), blocks.end());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      Point common = kNoPoint;
      int shared = 0;
      for (Point p : blocks[i].pts) {
        if (blocks[j].contains(p)) {
          common = p;
          ++shared;
        }
      }
      if (shared != 1) continue;
      OverlapCertificate cert;
      cert.first = blocks[i];
      cert.second = blocks[j];
      std::array<Point, 2> ab{}, de{};
      int na = 0, nd = 0;
      for (Point p : blocks[i].pts)
        if (p != common) ab[na++] = p;
      for (Point p : blocks[j].pts)
        if (p != common) de[nd++] = p;
      cert.prefix = {ab[0], ab[1], common, de[0], de[1]};
      return cert;
    }
  }
  return std::nullopt;
}

CensusReport census_exact(const TripleSystem& system, int ell, int cap) {
  check_census_args(system, ell);
  if (cap > kFactorialCapLimit)
    throw std::invalid_argument("census_exact: cap must be <= 20 to keep "
                                "64-bit counts exact");
  const int v = system.v;
  if (v > cap)
    throw std::invalid_argument("census_exact: v = " + std::to_string(v) +
                                " exceeds cap " + std::to_string(cap));

  CensusReport report;
  report.mode = CensusReport::Mode::exact;
  report.v = v;
  report.ell = ell;
  report.total_permutations = factorial_u64(v);
  report.per_i_forbidden.assign(v - ell + 1, 0);
  report.certificate = find_overlap_certificate(system);

  WindowMask mask(report.windows());
  std::vector<Point> perm(v);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> pos(v);
  do {
    for (int i = 0; i < v; ++i) pos[perm[i]] = i + 1;
    mark_forbidden_windows(system, pos, ell, mask);
    accumulate(report, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));

  report.good_count = report.total_permutations - report.total_forbidden;
  return report;
}

CensusReport census_sample(const TripleSystem& system, int ell,
                           std::uint64_t samples, std::uint64_t seed) {
  check_census_args(system, ell);
  if (samples < 1)
    throw std::invalid_argument("census_sample: samples must be >= 1");
  const int v = system.v;

  CensusReport report;
  report.mode = CensusReport::Mode::monte_carlo;
  report.v = v;
  report.ell = ell;
  report.samples = samples;
  report.seed = seed;
  report.per_i_forbidden.assign(v - ell + 1, 0);
  report.certificate = find_overlap_certificate(system);

  WindowMask mask(report.windows());
  std::mt19937_64 rng(seed);
  std::vector<Point> perm(v);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> pos(v);
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < v; ++i) pos[perm[i]] = i + 1;
    mark_forbidden_windows(system, pos, ell, mask);
    accumulate(report, mask);
  }
  return report;
}

std::uint64_t count_good_by_verifier(const TripleSystem& system, int ell,
                                     int cap) {
  check_census_args(system, ell);
  const int v = system.v;
  if (cap > kFactorialCapLimit || v > cap)
    throw std::invalid_argument("count_good_by_verifier: cap exceeded");

  std::uint64_t good = 0;
  Sequencing seq;
  seq.order.resize(v);
  std::iota(seq.order.begin(), seq.order.end(), 0);
  do {
    if (!verify_ell_good(system, seq, ell)) ++good;
  } while (std::next_permutation(seq.order.begin(), seq.order.end()));
  return good;
}

std::uint64_t CensusReport::per_i_sum() const {
  std::uint64_t sum = 0;
  for (std::uint64_t c : per_i_forbidden) sum += c;
  return sum;
}

double CensusReport::per_i_estimate(int i) const {
  const std::uint64_t denom =
      mode == Mode::exact ? total_permutations : samples;
  return static_cast<double>(per_i_forbidden.at(i - 1)) /
         static_cast<double>(denom);
}

double CensusReport::per_i_stderr(int i) const {
  const std::uint64_t denom =
      mode == Mode::exact ? total_permutations : samples;
  return rate_stderr(per_i_estimate(i), denom);
}

double CensusReport::forbidden_estimate() const {
  const std::uint64_t denom =
      mode == Mode::exact ? total_permutations : samples;
  return static_cast<double>(total_forbidden) / static_cast<double>(denom);
}

double CensusReport::forbidden_stderr() const {
  const std::uint64_t denom =
      mode == Mode::exact ? total_permutations : samples;
  return rate_stderr(forbidden_estimate(), denom);
}

std::string to_text(const CensusReport& r) {
  std::ostringstream os;
  if (r.mode == CensusReport::Mode::exact) {
    os << "exact census, v=" << r.v << ", ell=" << r.ell << "\n";
    os << "  permutations " << r.total_permutations << "\n";
    os << "  forbidden    " << r.total_forbidden << "\n";
    os << "  good         " << r.good_count << "\n";
    os << "  per-window forbidden counts (window start i = 1.."
       << r.windows() << "):\n";
    for (int i = 1; i <= r.windows(); ++i)
      os << "    i=" << i << "  " << r.per_i_forbidden[i - 1] << "\n";
    os << "  union bound: sum(per-i) = " << r.per_i_sum()
       << (r.total_forbidden < r.per_i_sum() ? " > " : " = ")
       << r.total_forbidden << " = |forbidden|"
       << (r.total_forbidden < r.per_i_sum() ? " (strict)" : "") << "\n";
  } else {
    os << "monte carlo census, v=" << r.v << ", ell=" << r.ell
       << ", samples=" << r.samples << ", seed=" << r.seed << "\n";
    os << "  Pr[forbidden] ~ " << r.forbidden_estimate() << " +- "
       << r.forbidden_stderr() << "\n";
    os << "  per-window rates (window start i = 1.." << r.windows() << "):\n";
    for (int i = 1; i <= r.windows(); ++i)
      os << "    i=" << i << "  " << r.per_i_estimate(i) << " +- "
         << r.per_i_stderr(i) << "\n";
  }
  if (r.certificate) {
    const auto& c = *r.certificate;
    os << "  overlap certificate: blocks " << to_string(c.first) << " and "
       << to_string(c.second) << "; any permutation with prefix";
    for (Point p : c.prefix) os << ' ' << p;
    os << " is forbidden at windows 1 and 3\n";
  }
  return os.str();
}

std::string to_kv(const CensusReport& r) {
  std::ostringstream os;
  os << "mode="
     << (r.mode == CensusReport::Mode::exact ? "exact" : "monte_carlo")
     << "\n";
  os << "v=" << r.v << "\n";
  os << "ell=" << r.ell << "\n";
  os << "windows=" << r.windows() << "\n";
  if (r.mode == CensusReport::Mode::exact) {
    os << "total_permutations=" << r.total_permutations << "\n";
    os << "total_forbidden=" << r.total_forbidden << "\n";
    os << "good_count=" << r.good_count << "\n";
  } else {
    os << "samples=" << r.samples << "\n";
    os << "seed=" << r.seed << "\n";
    os << "forbidden_hits=" << r.total_forbidden << "\n";
    os << "forbidden_estimate=" << r.forbidden_estimate() << "\n";
    os << "forbidden_stderr=" << r.forbidden_stderr() << "\n";
  }
  os << "per_i_forbidden=";
  for (int i = 0; i < r.windows(); ++i) {
    if (i) os << ',';
    os << r.per_i_forbidden[i];
  }
  os << "\n";
  if (r.certificate) {
    os << "certificate_prefix=";
    for (int i = 0; i < 5; ++i) {
      if (i) os << ',';
      os << r.certificate->prefix[i];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace stseq
