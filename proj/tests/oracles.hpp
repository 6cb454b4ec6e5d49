#pragma once

// Reference computations for the tests. These avoid the library's own
// code paths on purpose: closed formulas, brute-force counts, signed
// Weyl polynomials.

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_int choose(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  cpp_int num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

/// Weyl's product evaluated on an arbitrary (not necessarily dominant)
/// weight. By the alternating-sum form of Weyl's character formula this
/// is the Euler characteristic of the corresponding homogeneous bundle.
inline cpp_int signed_weyl(const std::vector<int> &w) {
  cpp_rational p = 1;
  const long n = static_cast<long>(w.size());
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) p *= cpp_rational(w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(j)] + (j - i), j - i);
  return numerator(p);
}

/// dim Sigma^{(a,b)} C^7 by two-row Jacobi-Trudi: h_a h_b - h_{a+1} h_{b-1}.
inline cpp_int two_row_dim7(long a, long b) {
  auto h = [](long k) { return k < 0 ? cpp_int(0) : choose(k + 6, 6); };
  return h(a) * h(b) - h(a + 1) * h(b - 1);
}

/// Standard Young tableaux of a two-row shape (a, b), a >= b, by path counting.
inline cpp_int two_row_syt(long a, long b) {
  std::vector<std::vector<cpp_int>> f(static_cast<std::size_t>(a + 1), std::vector<cpp_int>(static_cast<std::size_t>(b + 1)));
  f[0][0] = 1;
  for (long i = 0; i <= a; ++i)
    for (long j = 0; j <= std::min(i, b); ++j) {
      if (i == 0 && j == 0) continue;
      cpp_int v = 0;
      if (i > 0 && j <= i - 1) v += f[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
      if (j > 0) v += f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
      f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  return f[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

} // namespace oracle
