// SPDX-License-Identifier: Apache-2.0
#include "lqg/common.hpp"

#include <algorithm>

namespace lqg {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned max_threads) {
    if (count == 0) return;
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    hw = std::max(1u, std::min<unsigned>(hw, static_cast<unsigned>(count)));
    if (hw == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(hw);
    const std::size_t chunk = (count + hw - 1) / hw;
    for (unsigned t = 0; t < hw; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace lqg
