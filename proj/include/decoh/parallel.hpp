//---------------------------------------------------------------------------//
//! \file decoh/parallel.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace decoh
{
//---------------------------------------------------------------------------//
/*!
 * Call fn(i) for i in [0, n) on up to \c threads workers.
 *
 * Each index is visited exactly once; results written by index are
 * therefore independent of the thread count. After all workers finish, the
 * exception from the lowest failing index is rethrown.
 */
template<class F>
void parallel_for(std::size_t n, int threads, F&& fn)
{
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::size_t error_index = n;
    std::mutex error_lock;
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < threads; ++w)
        {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++)
                {
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(error_lock);
                        if (i < error_index)
                        {
                            error_index = i;
                            error = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (error)
        std::rethrow_exception(error);
}

}  // namespace decoh
