#include "tcgan/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace tcgan::kernels {

namespace {

// Work threshold below which a parallel region is not worth its overhead.
constexpr std::size_t kParallelMinWork = 1u << 15;

inline void matmul_nn_row(const double* a, const double* b, double* c,
                          std::size_t i, std::size_t k, std::size_t n,
                          bool acc) {
  const double* ai = a + i * k;
  double* ci = c + i * n;
  if (!acc) std::fill(ci, ci + n, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    const double aip = ai[p];
    const double* bp = b + p * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
  }
}

inline void matmul_nt_row(const double* a, const double* b, double* c,
                          std::size_t i, std::size_t k, std::size_t n,
                          bool acc) {
  const double* ai = a + i * k;
  double* ci = c + i * n;
  for (std::size_t j = 0; j < n; ++j) {
    const double* bj = b + j * k;
    double sum = 0.0;
    for (std::size_t p = 0; p < k; ++p) sum += ai[p] * bj[p];
    ci[j] = acc ? ci[j] + sum : sum;
  }
}

inline void matmul_tn_row(const double* a, const double* b, double* c,
                          std::size_t i, std::size_t m, std::size_t k,
                          std::size_t n, bool acc) {
  // c row i (of the m x n output), a stored [k x m], b stored [k x n]
  double* ci = c + i * n;
  if (!acc) std::fill(ci, ci + n, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    const double api = a[p * m + i];
    const double* bp = b + p * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += api * bp[j];
  }
}

inline void sqdist_row(const double* xs, const double* ys, double* out,
                       std::size_t i, std::size_t m, std::size_t d) {
  const double* xi = xs + i * d;
  double* oi = out + i * m;
  for (std::size_t j = 0; j < m; ++j) {
    const double* yj = ys + j * d;
    double sum = 0.0;
    for (std::size_t q = 0; q < d; ++q) {
      const double diff = xi[q] - yj[q];
      sum += diff * diff;
    }
    oi[j] = sum;
  }
}

inline void gram3_row(const double* xs, const double* ys, double* out,
                      std::size_t i, std::size_t m, std::size_t d) {
  const double* xi = xs + i * d;
  double* oi = out + i * m;
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t j = 0; j < m; ++j) {
    const double* yj = ys + j * d;
    double dot = 0.0;
    for (std::size_t q = 0; q < d; ++q) dot += xi[q] * yj[q];
    const double t = dot * inv_d + 1.0;
    oi[j] = t * t * t;
  }
}

}  // namespace

void matmul_nn(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n, bool acc) {
  if (m * k * n >= kParallelMinWork) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
      matmul_nn_row(a, b, c, static_cast<std::size_t>(i), k, n, acc);
  } else {
    for (std::size_t i = 0; i < m; ++i) matmul_nn_row(a, b, c, i, k, n, acc);
  }
}

void matmul_nt(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n, bool acc) {
  if (m * k * n >= kParallelMinWork) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
      matmul_nt_row(a, b, c, static_cast<std::size_t>(i), k, n, acc);
  } else {
    for (std::size_t i = 0; i < m; ++i) matmul_nt_row(a, b, c, i, k, n, acc);
  }
}

void matmul_tn(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n, bool acc) {
  if (m * k * n >= kParallelMinWork) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
      matmul_tn_row(a, b, c, static_cast<std::size_t>(i), m, k, n, acc);
  } else {
    for (std::size_t i = 0; i < m; ++i) matmul_tn_row(a, b, c, i, m, k, n, acc);
  }
}

void pairwise_sqdist(const double* xs, std::size_t n, const double* ys,
                     std::size_t m, std::size_t d, double* out) {
  if (n * m * d >= kParallelMinWork) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
      sqdist_row(xs, ys, out, static_cast<std::size_t>(i), m, d);
  } else {
    for (std::size_t i = 0; i < n; ++i) sqdist_row(xs, ys, out, i, m, d);
  }
}

void polynomial_gram3(const double* xs, std::size_t n, const double* ys,
                      std::size_t m, std::size_t d, double* out) {
  if (n * m * d >= kParallelMinWork) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
      gram3_row(xs, ys, out, static_cast<std::size_t>(i), m, d);
  } else {
    for (std::size_t i = 0; i < n; ++i) gram3_row(xs, ys, out, i, m, d);
  }
}

namespace serial {

void matmul_nn(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n, bool acc) {
  for (std::size_t i = 0; i < m; ++i) matmul_nn_row(a, b, c, i, k, n, acc);
}

void matmul_nt(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n, bool acc) {
  for (std::size_t i = 0; i < m; ++i) matmul_nt_row(a, b, c, i, k, n, acc);
}

void matmul_tn(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n, bool acc) {
  for (std::size_t i = 0; i < m; ++i) matmul_tn_row(a, b, c, i, m, k, n, acc);
}

void pairwise_sqdist(const double* xs, std::size_t n, const double* ys,
                     std::size_t m, std::size_t d, double* out) {
  for (std::size_t i = 0; i < n; ++i) sqdist_row(xs, ys, out, i, m, d);
}

void polynomial_gram3(const double* xs, std::size_t n, const double* ys,
                      std::size_t m, std::size_t d, double* out) {
  for (std::size_t i = 0; i < n; ++i) gram3_row(xs, ys, out, i, m, d);
}

}  // namespace serial

}  // namespace tcgan::kernels
