// Timing comparison between the serial reference kernels and the OpenMP
// entry points. Equality of outputs is covered by the unit tests; this tool
// only reports throughput.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tcgan/kernels.hpp"
#include "tcgan/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> random_vec(std::size_t n, tcgan::Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

template <typename F>
double time_ms(F&& fn, int reps) {
  fn();  // warm up
  const auto start = Clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-24s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially\n");
#endif

  tcgan::Rng rng(7);

  {
    const std::size_t m = 384, k = 384, n = 384;
    const auto a = random_vec(m * k, rng);
    const auto b = random_vec(k * n, rng);
    std::vector<double> c(m * n);
    const double s = time_ms(
        [&] { tcgan::kernels::serial::matmul_nn(a.data(), b.data(), c.data(), m, k, n); },
        5);
    const double p = time_ms(
        [&] { tcgan::kernels::matmul_nn(a.data(), b.data(), c.data(), m, k, n); },
        5);
    report("matmul_nn 384^3", s, p);
  }
  {
    const std::size_t n = 2048, m = 2048, d = 8;
    const auto xs = random_vec(n * d, rng);
    const auto ys = random_vec(m * d, rng);
    std::vector<double> out(n * m);
    const double s = time_ms(
        [&] {
          tcgan::kernels::serial::pairwise_sqdist(xs.data(), n, ys.data(), m, d,
                                                  out.data());
        },
        5);
    const double p = time_ms(
        [&] {
          tcgan::kernels::pairwise_sqdist(xs.data(), n, ys.data(), m, d,
                                          out.data());
        },
        5);
    report("pairwise_sqdist 2048^2", s, p);
  }
  {
    const std::size_t n = 2048, m = 2048, d = 8;
    const auto xs = random_vec(n * d, rng);
    const auto ys = random_vec(m * d, rng);
    std::vector<double> out(n * m);
    const double s = time_ms(
        [&] {
          tcgan::kernels::serial::polynomial_gram3(xs.data(), n, ys.data(), m, d,
                                                   out.data());
        },
        5);
    const double p = time_ms(
        [&] {
          tcgan::kernels::polynomial_gram3(xs.data(), n, ys.data(), m, d,
                                           out.data());
        },
        5);
    report("polynomial_gram3 2048^2", s, p);
  }
  return 0;
}
