#include "ssvcg/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ssvcg {

std::size_t worker_count()
{
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (char const *env = std::getenv("SSVCG_THREADS"))
  {
    try
    {
      long const cap = std::stol(env);
      if (cap >= 1)
      {
        workers = std::min(workers, static_cast<std::size_t>(cap));
      }
    }
    catch (std::exception const &)
    {
      // unparsable value: keep the hardware default
    }
  }
  return workers;
}

void parallel_for(std::size_t count, std::function<void(std::size_t)> const &body)
{
  std::size_t const workers = std::min(worker_count(), std::max<std::size_t>(count / 64, 1));
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
    {
      body(i);
    }
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  std::size_t const chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w)
  {
    std::size_t const begin = w * chunk;
    std::size_t const end = std::min(count, begin + chunk);
    if (begin >= end)
    {
      break;
    }
    threads.emplace_back([&, begin, end] {
      try
      {
        for (std::size_t i = begin; i < end; ++i)
        {
          body(i);
        }
      }
      catch (...)
      {
        std::lock_guard lock(failure_mutex);
        if (!failure)
        {
          failure = std::current_exception();
        }
      }
    });
  }
  threads.clear();
  if (failure)
  {
    std::rethrow_exception(failure);
  }
}

}  // namespace ssvcg
