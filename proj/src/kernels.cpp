#include "hw/kernels.hpp"

#include <cstdint>

namespace hw::kernels {

double dot(const float* a, const float* b, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

double squared_distance(const float* a, const float* b, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return acc;
}

void cosine_scan_serial(const float* matrix, std::size_t rows, std::size_t dim,
                        const float* query, double* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = dot(matrix + r * dim, query, dim);
}

void cosine_scan(const float* matrix, std::size_t rows, std::size_t dim, const float* query,
                 double* out) {
  const std::int64_t n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r)
    out[r] = dot(matrix + static_cast<std::size_t>(r) * dim, query, dim);
}

namespace {

inline int nearest_centroid(const float* point, std::size_t dim, const float* centroids,
                            std::size_t k) {
  int best = 0;
  double best_dist = squared_distance(point, centroids, dim);
  for (std::size_t c = 1; c < k; ++c) {
    double d = squared_distance(point, centroids + c * dim, dim);
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

void assign_points_serial(const float* points, std::size_t n, std::size_t dim,
                          const float* centroids, std::size_t k, int* labels) {
  for (std::size_t i = 0; i < n; ++i)
    labels[i] = nearest_centroid(points + i * dim, dim, centroids, k);
}

void assign_points(const float* points, std::size_t n, std::size_t dim, const float* centroids,
                   std::size_t k, int* labels) {
  const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i)
    labels[i] = nearest_centroid(points + static_cast<std::size_t>(i) * dim, dim, centroids, k);
}

}  // namespace hw::kernels
