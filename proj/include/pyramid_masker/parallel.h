// Copyright 2026 The Pyramid Masker Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PYRAMID_MASKER_PARALLEL_H_
#define PYRAMID_MASKER_PARALLEL_H_

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace pyramid_masker {

// Runs `transform` over the items returned by `produce` on `workers` threads
// and hands the results to `consume` in input order, on the calling thread.
// At most `max_in_flight` items are between production and consumption, so
// memory stays O(max_in_flight). `consume` returns false to stop early. The
// first exception thrown by any callback is rethrown after all threads join.
//
//   produce:   std::optional<Input>()        -- called from one thread
//   transform: Output(Input&)                -- called concurrently
//   consume:   bool(Output&&)
template <typename Input, typename Produce, typename Transform,
          typename Consume>
void RunOrdered(int workers, size_t max_in_flight, Produce&& produce,
                Transform&& transform, Consume&& consume) {
  using Output = std::invoke_result_t<Transform&, Input&>;
  if (workers <= 1) {
    while (std::optional<Input> item = produce()) {
      if (!consume(transform(*item))) return;
    }
    return;
  }
  if (max_in_flight == 0) max_in_flight = 1;

  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::pair<size_t, Input>> jobs;
  std::map<size_t, Output> done;
  size_t produced = 0;
  size_t consumed = 0;
  bool input_done = false;
  bool stop = false;
  std::exception_ptr error;

  const auto fail = [&](std::exception_ptr e) {
    if (!error) error = e;
    stop = true;
    cv.notify_all();
  };

  const auto work = [&] {
    std::unique_lock<std::mutex> lock(mu);
    while (true) {
      cv.wait(lock, [&] { return stop || !jobs.empty() || input_done; });
      if (stop) return;
      if (jobs.empty()) return;  // input_done and nothing left
      std::pair<size_t, Input> job = std::move(jobs.front());
      jobs.pop_front();
      lock.unlock();
      std::optional<Output> out;
      std::exception_ptr e;
      try {
        out.emplace(transform(job.second));
      } catch (...) {
        e = std::current_exception();
      }
      lock.lock();
      if (e) {
        fail(e);
        return;
      }
      done.emplace(job.first, std::move(*out));
      cv.notify_all();
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int i = 0; i < workers; ++i) threads.emplace_back(work);

  std::thread producer([&] {
    while (true) {
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock,
                [&] { return stop || produced - consumed < max_in_flight; });
        if (stop) return;
      }
      std::optional<Input> item;
      try {
        item = produce();
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        fail(std::current_exception());
        return;
      }
      std::lock_guard<std::mutex> lock(mu);
      if (!item) {
        input_done = true;
        cv.notify_all();
        return;
      }
      jobs.emplace_back(produced++, std::move(*item));
      cv.notify_all();
    }
  });

  {
    std::unique_lock<std::mutex> lock(mu);
    while (true) {
      cv.wait(lock, [&] {
        return stop || done.contains(consumed) ||
               (input_done && consumed == produced);
      });
      if (stop) break;
      auto it = done.find(consumed);
      if (it == done.end()) {  // all input consumed
        stop = true;
        cv.notify_all();
        break;
      }
      Output out = std::move(it->second);
      done.erase(it);
      lock.unlock();
      bool keep_going = true;
      std::exception_ptr e;
      try {
        keep_going = consume(std::move(out));
      } catch (...) {
        e = std::current_exception();
      }
      lock.lock();
      ++consumed;
      if (e) {
        fail(e);
        break;
      }
      if (!keep_going) {
        stop = true;
        cv.notify_all();
        break;
      }
      cv.notify_all();
    }
  }

  producer.join();
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_PARALLEL_H_
