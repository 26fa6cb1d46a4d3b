#pragma once

#include <cstdint>

#include "stseq/design.hpp"

// Instance generators. Every function returns a system that passes validate
// for its declared kind; bose and skolem together cover all admissible STS
// orders (v == 3 and v == 1 mod 6 respectively).

namespace stseq {

// The STS(7): cyclic development of {0, 1, 3} mod 7.
TripleSystem fano();

// Bose construction, order v = 6n + 3 (n >= 1).
TripleSystem bose(int n);

// Skolem construction, order v = 6n + 1 (n >= 1).
TripleSystem skolem(int n);

// Seeded random partial system: shuffle all candidate triples, greedily keep
// those that collide with no already-covered pair, stop after target_blocks
// accepted. May fall short of the target; the achieved count is simply
// result.blocks.size(). Deterministic for a fixed (v, target_blocks, seed).
TripleSystem random_psts(int v, std::int64_t target_blocks,
                         std::uint64_t seed);

}  // namespace stseq
