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

#include "sqg/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

namespace sqg {

uint64_t isqrt(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && (r > UINT32_MAX || r * r > n)) --r;
    while (r < UINT32_MAX && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<uint32_t> primes_up_to(uint64_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2) return primes;
    if (limit > UINT32_MAX) throw std::invalid_argument("primes_up_to: limit exceeds 32 bits");

    std::vector<bool> composite(limit + 1, false);
    for (uint64_t p = 2; p * p <= limit; ++p) {
        if (composite[p]) continue;
        for (uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    for (uint64_t p = 2; p <= limit; ++p)
        if (!composite[p]) primes.push_back(static_cast<uint32_t>(p));
    return primes;
}

std::vector<uint32_t> primes_in(uint64_t lo, uint64_t hi) {
    if (hi <= lo || hi < 3) return {};
    auto all = primes_up_to(hi - 1);
    auto first = std::lower_bound(all.begin(), all.end(), lo);
    return {first, all.end()};
}

PrimeTable::PrimeTable(uint64_t limit_) : limit(limit_), primes(primes_up_to(limit_)) {}

bool is_squarefree_oracle(uint64_t n) {
    if (n == 0) throw std::domain_error("is_squarefree_oracle: n must be >= 1");
    // Divide out each factor as it is found; a repeated factor means a square.
    uint64_t m = n;
    for (uint64_t d = 2; d <= m / d; ++d) {
        if (m % d != 0) continue;
        m /= d;
        if (m % d == 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// SegmentBitmap

SegmentBitmap::SegmentBitmap(uint64_t base, uint32_t length)
    : base_(base), length_(length), words_((static_cast<uint64_t>(length) + 63) / 64, ~uint64_t{0}) {
    if (length == 0) throw std::domain_error("SegmentBitmap: length must be >= 1");
    if (base == 0) throw std::domain_error("SegmentBitmap: base must be >= 1");
    if (base - 1 > std::numeric_limits<uint64_t>::max() - length)
        throw std::domain_error("SegmentBitmap: block exceeds 64-bit range");
    // Keep the padding bits of the last word clear so words() is canonical.
    if (uint32_t tail = length & 63; tail != 0) words_.back() = (uint64_t{1} << tail) - 1;
}

bool SegmentBitmap::is_squarefree(uint64_t n) const {
    if (!contains(n)) throw std::out_of_range("SegmentBitmap: value outside block");
    return test(static_cast<uint32_t>(n - base_));
}

uint64_t SegmentBitmap::count() const {
    uint64_t total = 0;
    for (uint64_t w : words_) total += std::popcount(w);
    return total;
}

uint64_t SegmentBitmap::count_through(uint64_t n) const {
    if (n < base_) return 0;
    if (n >= last()) return count();
    uint64_t bits = n - base_ + 1;
    uint64_t total = 0;
    uint64_t full = bits / 64;
    for (uint64_t w = 0; w < full; ++w) total += std::popcount(words_[w]);
    if (uint64_t rem = bits % 64; rem != 0) total += std::popcount(words_[full] & ((uint64_t{1} << rem) - 1));
    return total;
}

namespace {

void put_le(std::ostream& out, uint64_t v, int bytes) {
    char buf[8];
    for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, bytes);
}

uint64_t get_le(std::istream& in, int bytes) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), bytes)) throw std::runtime_error("SegmentBitmap: truncated dump");
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<uint64_t>(buf[i]) << (8 * i);
    return v;
}

}  // namespace

void SegmentBitmap::write(std::ostream& out) const {
    put_le(out, base_, 8);
    put_le(out, length_, 4);
    for (uint64_t w : words_) put_le(out, w, 8);
}

SegmentBitmap SegmentBitmap::read(std::istream& in) {
    uint64_t base = get_le(in, 8);
    auto length = static_cast<uint32_t>(get_le(in, 4));
    SegmentBitmap bm(base, length);
    for (auto& w : bm.words_) w = get_le(in, 8);
    return bm;
}

// ---------------------------------------------------------------------------
// Sieving

SegmentBitmap sieve_segment(uint64_t base, uint32_t length, const PrimeTable& table) {
    SegmentBitmap bm(base, length);
    const uint64_t last = bm.last();
    if (table.limit < isqrt(last)) throw std::invalid_argument("sieve_segment: prime table too short");

    for (uint32_t p : table.primes) {
        const uint64_t p2 = uint64_t{p} * p;
        if (p2 > last) break;
        uint64_t first = (base / p2) * p2;
        if (first < base) first += p2;
        for (uint64_t i = first - base; i < length; i += p2) bm.clear(static_cast<uint32_t>(i));
    }
    return bm;
}

SegmentBitmap sieve_segment(uint64_t base, uint32_t length) {
    if (length == 0) throw std::domain_error("sieve_segment: length must be >= 1");
    if (base == 0) throw std::domain_error("sieve_segment: base must be >= 1");
    return sieve_segment(base, length, PrimeTable(isqrt(base + (length - 1))));
}

uint64_t largest_squarefree_at_most(uint64_t n, const PrimeTable& primes) {
    if (n == 0) throw std::domain_error("largest_squarefree_at_most: n must be >= 1");
    uint64_t window = 512;
    for (;;) {
        uint64_t lo = n > window ? n - window + 1 : 1;
        auto bm = sieve_segment(lo, static_cast<uint32_t>(n - lo + 1), primes);
        for (uint64_t m = n + 1; m-- > lo;)
            if (bm.is_squarefree(m)) return m;
        // 1 is squarefree, so the window always succeeds once it reaches 1.
        window *= 2;
    }
}

namespace {

void collect_gaps(const SegmentBitmap& bm, uint64_t& prev, std::vector<GapRecord>& out) {
    auto words = bm.words();
    for (size_t w = 0; w < words.size(); ++w) {
        uint64_t bits = words[w];
        while (bits != 0) {
            int b = std::countr_zero(bits);
            bits &= bits - 1;
            uint64_t n = bm.base() + w * 64 + static_cast<uint64_t>(b);
            out.push_back({prev, n, n - prev});
            prev = n;
        }
    }
}

}  // namespace

void for_each_gap(uint64_t x_lo, uint64_t x_hi, const SieveOptions& options,
                  const std::function<void(std::span<const GapRecord>)>& sink) {
    if (x_lo < 1 || x_lo >= x_hi) throw std::domain_error("for_each_gap: need 1 <= x_lo < x_hi");
    if (options.segment_size < 64) throw std::domain_error("for_each_gap: segment_size must be >= 64");
    const unsigned threads = std::max(1u, options.threads);

    const PrimeTable primes(isqrt(x_hi));
    uint64_t prev = largest_squarefree_at_most(x_lo, primes);

    const uint64_t seg = options.segment_size;
    std::vector<GapRecord> batch;
    uint64_t start = x_lo + 1;
    while (start <= x_hi) {
        std::vector<uint64_t> bases;
        for (unsigned k = 0; k < threads && start <= x_hi; ++k) {
            bases.push_back(start);
            start = (x_hi - start < seg) ? x_hi + 1 : start + seg;
        }
        auto length_of = [&](uint64_t b) { return static_cast<uint32_t>(std::min<uint64_t>(seg, x_hi - b + 1)); };

        std::vector<std::optional<SegmentBitmap>> blocks(bases.size());
        {
            std::vector<std::jthread> workers;
            for (size_t k = 1; k < bases.size(); ++k)
                workers.emplace_back([&, k] { blocks[k].emplace(sieve_segment(bases[k], length_of(bases[k]), primes)); });
            blocks[0].emplace(sieve_segment(bases[0], length_of(bases[0]), primes));
        }

        for (const auto& bm : blocks) {
            batch.clear();
            collect_gaps(*bm, prev, batch);
            if (!batch.empty()) sink(batch);
        }
    }
}

std::vector<GapRecord> gap_stream(uint64_t x_lo, uint64_t x_hi, const SieveOptions& options) {
    std::vector<GapRecord> out;
    for_each_gap(x_lo, x_hi, options, [&](std::span<const GapRecord> b) { out.insert(out.end(), b.begin(), b.end()); });
    return out;
}

std::vector<GapRecord> gap_stream(uint64_t x_lo, uint64_t x_hi, uint32_t segment_size) {
    return gap_stream(x_lo, x_hi, SieveOptions{segment_size, 1});
}

}  // namespace sqg
