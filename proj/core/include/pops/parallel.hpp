// SPDX-License-Identifier: Apache-2.0
//
// pops: ping-pong optimized pulse shaping for multicarrier waveforms
// Copyright (C) 2026 The pops authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef POPS_PARALLEL_HPP
#define POPS_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pops
{

// Worker count: POPS_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
inline int thread_count()
{
    if (const char *env = std::getenv("POPS_THREADS"))
    {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return int(std::min(v, 1024L));
    }
    return int(std::max(1u, std::thread::hardware_concurrency()));
}

// Calls fn(i) for i in [0, count). Work is split into contiguous blocks, one per
// worker; callers write results by index so the output does not depend on the
// number of threads. The first exception thrown by any call is rethrown.
template <typename Fn>
void parallel_for(long count, Fn &&fn, int threads = 0)
{
    if (count <= 0)
        return;
    const long workers = std::min<long>(count, threads > 0 ? threads : thread_count());
    if (workers <= 1)
    {
        for (long i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (long w = 0; w < workers; ++w)
    {
        const long lo = count * w / workers;
        const long hi = count * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            try
            {
                for (long i = lo; i < hi; ++i)
                    fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace pops

#endif
