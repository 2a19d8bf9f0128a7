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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace sqg {

// Evaluates fn(0..n-1) on up to `threads` workers. Results land in index
// order, so the output never depends on scheduling.
template <class Fn>
auto parallel_map(size_t n, unsigned threads, Fn fn) -> std::vector<std::invoke_result_t<Fn, size_t>> {
    using R = std::invoke_result_t<Fn, size_t>;
    std::vector<R> out(n);
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
        for (size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    const unsigned extra = static_cast<unsigned>(std::min<size_t>(std::max(1u, threads), n == 0 ? 1 : n)) - 1;
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < extra; ++t) pool.emplace_back(work);
        work();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace sqg
