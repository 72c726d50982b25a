#ifndef HW_KERNELS_HPP
#define HW_KERNELS_HPP

// Data-parallel inner loops with serial reference implementations. The
// parallel variants write disjoint outputs per element and keep every
// per-element accumulation sequential, so their results are bit-identical
// to the serial references for any thread count. tools/bench_kernels
// compares the two.

#include <cstddef>

namespace hw::kernels {

// out[r] = dot(matrix row r, query) in double precision.
void cosine_scan_serial(const float* matrix, std::size_t rows, std::size_t dim,
                        const float* query, double* out);
void cosine_scan(const float* matrix, std::size_t rows, std::size_t dim, const float* query,
                 double* out);

// labels[i] = argmin_k squared_distance(point i, centroid k); ties to the
// lowest centroid index.
void assign_points_serial(const float* points, std::size_t n, std::size_t dim,
                          const float* centroids, std::size_t k, int* labels);
void assign_points(const float* points, std::size_t n, std::size_t dim, const float* centroids,
                   std::size_t k, int* labels);

double dot(const float* a, const float* b, std::size_t dim);
double squared_distance(const float* a, const float* b, std::size_t dim);

}  // namespace hw::kernels

#endif
