#pragma once

#include <cstddef>

namespace tcgan::kernels {

// Data-parallel inner loops shared by the autodiff ops and the metrics.
// The default entry points parallelize over output rows with OpenMP; every
// output element is produced by one thread with a fixed inner summation
// order, so results are bit-identical for any thread count. The serial
// twins in kernels::serial run the same per-row routines and are kept as
// the reference implementation for the equality tests and the benchmark.

// c[m x n] = a[m x k] * b[k x n], accumulating into c when acc is set
void matmul_nn(const double* a, const double* b, double* c,
               std::size_t m, std::size_t k, std::size_t n, bool acc = false);

// c[m x n] = a[m x k] * b^T, with b stored [n x k]
void matmul_nt(const double* a, const double* b, double* c,
               std::size_t m, std::size_t k, std::size_t n, bool acc = false);

// c[m x n] = a^T * b, with a stored [k x m] and b stored [k x n]
void matmul_tn(const double* a, const double* b, double* c,
               std::size_t m, std::size_t k, std::size_t n, bool acc = false);

// out[n x m], squared Euclidean distances between rows of xs and ys
void pairwise_sqdist(const double* xs, std::size_t n, const double* ys,
                     std::size_t m, std::size_t d, double* out);

// out[n x m], polynomial kernel (x.y/d + 1)^3 between rows of xs and ys
void polynomial_gram3(const double* xs, std::size_t n, const double* ys,
                      std::size_t m, std::size_t d, double* out);

namespace serial {

void matmul_nn(const double* a, const double* b, double* c,
               std::size_t m, std::size_t k, std::size_t n, bool acc = false);
void matmul_nt(const double* a, const double* b, double* c,
               std::size_t m, std::size_t k, std::size_t n, bool acc = false);
void matmul_tn(const double* a, const double* b, double* c,
               std::size_t m, std::size_t k, std::size_t n, bool acc = false);
void pairwise_sqdist(const double* xs, std::size_t n, const double* ys,
                     std::size_t m, std::size_t d, double* out);
void polynomial_gram3(const double* xs, std::size_t n, const double* ys,
                      std::size_t m, std::size_t d, double* out);

}  // namespace serial

}  // namespace tcgan::kernels
