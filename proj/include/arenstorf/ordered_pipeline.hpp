#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace arenstorf {

/// Runs `produce(i)` for i in [0, count) on up to `workers` threads and hands
/// every result to `consume(i, result)` on the calling thread in ascending i.
/// At most `window` results are in flight at once. `consume` returns false to
/// stop early; outstanding work is drained and discarded.
///
/// The consumer sees exactly the sequence a single-threaded loop would, so any
/// order-sensitive reduction done in `consume` is independent of `workers`.
template <class Produce, class Consume>
void ordered_for_each(std::size_t count, unsigned workers, Produce&& produce, Consume&& consume,
                      std::size_t window = 0) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      if (!consume(i, produce(i))) return;
    }
    return;
  }
  if (window == 0) window = 2 * static_cast<std::size_t>(workers);

  using Result = decltype(produce(std::size_t{}));
  std::mutex mu;
  std::condition_variable produced;
  std::condition_variable consumed;
  std::map<std::size_t, Result> ready;
  std::size_t next_claim = 0;
  std::size_t next_consume = 0;
  bool stop = false;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      std::size_t index;
      {
        std::unique_lock lock(mu);
        consumed.wait(lock, [&] { return stop || next_claim >= count || next_claim < next_consume + window; });
        if (stop || next_claim >= count) return;
        index = next_claim++;
      }
      std::optional<Result> result;
      try {
        result.emplace(produce(index));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
        produced.notify_all();
        consumed.notify_all();
        return;
      }
      std::lock_guard lock(mu);
      ready.emplace(index, std::move(*result));
      produced.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);

  auto shutdown = [&] {
    {
      std::lock_guard lock(mu);
      stop = true;
    }
    consumed.notify_all();
    for (auto& t : pool) t.join();
  };

  try {
    while (next_consume < count) {
      Result item;
      {
        std::unique_lock lock(mu);
        produced.wait(lock, [&] { return error || ready.count(next_consume) != 0; });
        if (error) break;
        auto node = ready.extract(next_consume);
        item = std::move(node.mapped());
      }
      bool keep_going = consume(next_consume, std::move(item));
      {
        std::lock_guard lock(mu);
        ++next_consume;
      }
      consumed.notify_all();
      if (!keep_going) break;
    }
  } catch (...) {
    shutdown();
    throw;
  }
  shutdown();
  if (error) std::rethrow_exception(error);
}

}  // namespace arenstorf
