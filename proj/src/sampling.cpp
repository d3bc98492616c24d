#include "mlg/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace mlg {

std::size_t Box::pointCount() const {
    std::size_t count = 1;
    for (std::size_t i = 0; i < axes.size(); ++i) count *= static_cast<std::size_t>(grid);
    return count;
}

double Box::spacing(int axis) const {
    const auto& [lo, hi] = axes[static_cast<std::size_t>(axis)];
    return (hi - lo) / (grid - 1);
}

namespace {

std::vector<Point> latticeRange(const Box& box, int first, int last) {
    const int n = box.dim();
    std::vector<Point> pts;
    if (last < first) return pts;
    std::vector<int> idx(static_cast<std::size_t>(n), first);
    for (;;) {
        Point p(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            const auto& [lo, hi] = box.axes[static_cast<std::size_t>(a)];
            const int i = idx[static_cast<std::size_t>(a)];
            // Endpoints are reproduced exactly.
            p[static_cast<std::size_t>(a)] = i == box.grid - 1 ? hi : lo + (hi - lo) * i / (box.grid - 1);
        }
        pts.push_back(std::move(p));
        int a = n - 1;
        while (a >= 0 && ++idx[static_cast<std::size_t>(a)] > last) {
            idx[static_cast<std::size_t>(a)] = first;
            --a;
        }
        if (a < 0) return pts;
    }
}

}  // namespace

std::vector<Point> Box::lattice() const { return latticeRange(*this, 0, grid - 1); }

std::vector<Point> Box::interior(int margin) const { return latticeRange(*this, margin, grid - 1 - margin); }

unsigned workerCount() {
    if (const char* env = std::getenv("MLG_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallelFor(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(workerCount(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failureMutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failureMutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace mlg
