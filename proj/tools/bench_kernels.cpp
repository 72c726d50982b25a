// Compares the serial reference kernels against the OpenMP variants and
// checks that their outputs match bit for bit.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hw/kernels.hpp"
#include "hw/kmeans.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<float> random_matrix(std::size_t rows, std::size_t dim, std::uint64_t seed) {
  hw::SplitMix64 rng(seed);
  std::vector<float> out(rows * dim);
  for (auto& x : out) x = static_cast<float>(rng.next_double() * 2.0 - 1.0);
  return out;
}

template <typename F>
double time_best_of(int repeats, F&& f) {
  double best = 1e100;
  for (int i = 0; i < repeats; ++i) {
    auto start = Clock::now();
    f();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both variants run serially\n");
#endif

  const std::size_t rows = 200000, dim = 100;
  auto matrix = random_matrix(rows, dim, 1);
  auto query = random_matrix(1, dim, 2);

  std::vector<double> out_serial(rows), out_parallel(rows);
  double t_serial = time_best_of(5, [&] {
    hw::kernels::cosine_scan_serial(matrix.data(), rows, dim, query.data(), out_serial.data());
  });
  double t_parallel = time_best_of(5, [&] {
    hw::kernels::cosine_scan(matrix.data(), rows, dim, query.data(), out_parallel.data());
  });
  bool same = std::memcmp(out_serial.data(), out_parallel.data(), rows * sizeof(double)) == 0;
  std::printf("cosine_scan   %zux%zu: serial %.4fs  parallel %.4fs  speedup %.2fx  %s\n", rows,
              dim, t_serial, t_parallel, t_serial / t_parallel, same ? "bitwise-equal" : "MISMATCH");

  const std::size_t n = 100000, k = 64;
  auto points = random_matrix(n, dim, 3);
  auto centroids = random_matrix(k, dim, 4);
  std::vector<int> labels_serial(n), labels_parallel(n);
  double a_serial = time_best_of(5, [&] {
    hw::kernels::assign_points_serial(points.data(), n, dim, centroids.data(), k,
                                      labels_serial.data());
  });
  double a_parallel = time_best_of(5, [&] {
    hw::kernels::assign_points(points.data(), n, dim, centroids.data(), k,
                               labels_parallel.data());
  });
  same = std::memcmp(labels_serial.data(), labels_parallel.data(), n * sizeof(int)) == 0;
  std::printf("assign_points %zux%zu@%zu: serial %.4fs  parallel %.4fs  speedup %.2fx  %s\n", n,
              dim, k, a_serial, a_parallel, a_serial / a_parallel,
              same ? "bitwise-equal" : "MISMATCH");
  return 0;
}
