#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pfwin {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Malformed arguments: negative degrees, bad weights, unparsable expressions.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// An identity that must hold by construction failed; signals a convention bug.
class InconsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline std::string to_string(const Int &v) { return v.str(); }

// Results are written by index, so output order never depends on scheduling.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, unsigned jobs, F &&fn) {
  std::vector<R> out(count);
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  auto worker = [&](unsigned slot) {
    try {
      for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
    } catch (...) {
      errors[slot] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(count));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker, t);
  for (auto &th : pool) th.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

} // namespace pfwin
