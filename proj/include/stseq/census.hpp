#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stseq/design.hpp"

// Permutation census: how many sequencings of a design are i-forbidden
// (some block inside the window of ell consecutive positions starting at i),
// how many are forbidden at all, and how many are ell-good. Exact mode walks
// all v! permutations; monte_carlo estimates the same rates from seeded
// uniform samples. For an STS at ell = 3 the exact per-i count is v!/(v-2).

namespace stseq {

// Two blocks sharing exactly one point, arranged as a 5-point prefix
// a b c d e with {a,b,c} and {c,d,e} blocks: every permutation starting
// this way is both 1-forbidden and 3-forbidden, witnessing that the union
// bound over windows is strict.
struct OverlapCertificate {
  Block first;
  Block second;
  std::array<Point, 5> prefix{};
};

std::optional<OverlapCertificate> find_overlap_certificate(
    const TripleSystem& system);

struct CensusReport {
  enum class Mode { exact, monte_carlo };

  Mode mode = Mode::exact;
  int v = 0;
  int ell = 3;
  // exact: v! (0 in monte_carlo mode, where v! may not fit 64 bits).
  std::uint64_t total_permutations = 0;
  // Indexed by window start i in [1, v-ell+1]; exact counts or sample hits.
  std::vector<std::uint64_t> per_i_forbidden;
  std::uint64_t total_forbidden = 0;
  std::uint64_t good_count = 0;  // exact mode only
  std::uint64_t samples = 0;     // monte_carlo mode only
  std::uint64_t seed = 0;        // monte_carlo mode only
  std::optional<OverlapCertificate> certificate;

  int windows() const { return static_cast<int>(per_i_forbidden.size()); }
  std::uint64_t per_i_sum() const;

  // Sample-rate helpers (monte_carlo); i is the 1-based window start.
  double per_i_estimate(int i) const;
  double per_i_stderr(int i) const;
  double forbidden_estimate() const;
  double forbidden_stderr() const;
};

// Exact census over all v! permutations in lexicographic order. Counters
// stay exact: requires v <= cap and cap <= 20 (20! is the largest factorial
// a 64-bit counter can hold). Throws on cap violations or ell outside
// [3, v].
CensusReport census_exact(const TripleSystem& system, int ell = 3,
                          int cap = 9);

// Monte Carlo estimate from `samples` seeded uniform permutations.
CensusReport census_sample(const TripleSystem& system, int ell,
                           std::uint64_t samples, std::uint64_t seed);

// Independent recount for cross-checking census_exact: walks the same
// permutations but classifies each with verify_ell_good. Deliberately slow
// and separate from the span bookkeeping above.
std::uint64_t count_good_by_verifier(const TripleSystem& system, int ell,
                                     int cap = 9);

std::uint64_t factorial_u64(int n);  // requires n <= 20

// Human-readable and machine-readable (key=value lines) renderings.
std::string to_text(const CensusReport& report);
std::string to_kv(const CensusReport& report);

}  // namespace stseq
