#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qd::detail {

// Calls fn(i) for i in [0, n). Each index writes only its own slot, so the
// outcome does not depend on scheduling. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn)
{
	workers = std::min(workers, n);
	if (workers <= 1) {
		for (std::size_t i = 0; i < n; ++i)
			fn(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::exception_ptr error;
	std::mutex error_mutex;
	auto work = [&] {
		constexpr std::size_t chunk = 64;
		while (true) {
			std::size_t start = next.fetch_add(chunk);
			if (start >= n)
				return;
			try {
				for (std::size_t i = start; i < std::min(n, start + chunk); ++i)
					fn(i);
			} catch (...) {
				std::lock_guard lock(error_mutex);
				if (!error)
					error = std::current_exception();
				next = n;
				return;
			}
		}
	};
	std::vector<std::thread> pool;
	for (std::size_t w = 1; w < workers; ++w)
		pool.emplace_back(work);
	work();
	for (auto& t : pool)
		t.join();
	if (error)
		std::rethrow_exception(error);
}

} // namespace qd::detail
