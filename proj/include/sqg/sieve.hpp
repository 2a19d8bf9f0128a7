// Copyright 2026 The sqg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Squarefree sieve.
//
// SegmentBitmap holds one block [base, base + length) of squarefree flags,
// packed into 64-bit words least-significant-bit first: bit i of the block
// lives in word i / 64 at position i % 64.
//
// Binary dump layout (all little-endian):
//   8 bytes  base
//   4 bytes  length
//   ceil(length / 64) x 8 bytes  words

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace sqg {

uint64_t isqrt(uint64_t n);

// All primes p <= limit.
struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint32_t> primes;

    explicit PrimeTable(uint64_t limit);
};

std::vector<uint32_t> primes_up_to(uint64_t limit);

// Primes in [lo, hi).
std::vector<uint32_t> primes_in(uint64_t lo, uint64_t hi);

// Trial division only; shares nothing with the sieve so it can check it.
// Throws std::domain_error for n = 0.
bool is_squarefree_oracle(uint64_t n);

class SegmentBitmap {
public:
    // All bits start set.
    SegmentBitmap(uint64_t base, uint32_t length);

    uint64_t base() const { return base_; }
    uint32_t length() const { return length_; }
    uint64_t last() const { return base_ + length_ - 1; }

    bool test(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void clear(uint32_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

    bool contains(uint64_t n) const { return n >= base_ && n - base_ < length_; }
    // n must lie inside the block.
    bool is_squarefree(uint64_t n) const;

    std::span<const uint64_t> words() const { return words_; }

    // Set bits in the whole block, and in [base, n].
    uint64_t count() const;
    uint64_t count_through(uint64_t n) const;

    void write(std::ostream& out) const;
    static SegmentBitmap read(std::istream& in);

    bool operator==(const SegmentBitmap&) const = default;

private:
    uint64_t base_;
    uint32_t length_;
    std::vector<uint64_t> words_;
};

// Strikes multiples of p^2 for every prime p <= sqrt(base + length - 1).
// Throws std::domain_error for length = 0 or base = 0, and
// std::invalid_argument when the prime table does not reach the square root.
SegmentBitmap sieve_segment(uint64_t base, uint32_t length, const PrimeTable& primes);
SegmentBitmap sieve_segment(uint64_t base, uint32_t length);

// Largest squarefree integer <= n (n >= 1). Sieves a 512-wide window below n
// and doubles it until a squarefree integer turns up.
uint64_t largest_squarefree_at_most(uint64_t n, const PrimeTable& primes);

struct GapRecord {
    uint64_t prev = 0;
    uint64_t next = 0;
    uint64_t gap = 0;

    auto operator<=>(const GapRecord&) const = default;
};

struct SieveOptions {
    uint32_t segment_size = 1u << 16;
    unsigned threads = 1;
};

// Calls `sink` with consecutive batches of gap records covering every pair of
// consecutive squarefree integers with x_lo < next <= x_hi, in increasing order
// of next. Segments are sieved by up to `threads` workers and consumed strictly
// in base order, so the emitted sequence does not depend on threads or
// segment_size.
void for_each_gap(uint64_t x_lo, uint64_t x_hi, const SieveOptions& options,
                  const std::function<void(std::span<const GapRecord>)>& sink);

std::vector<GapRecord> gap_stream(uint64_t x_lo, uint64_t x_hi, uint32_t segment_size);
std::vector<GapRecord> gap_stream(uint64_t x_lo, uint64_t x_hi, const SieveOptions& options);

}  // namespace sqg
