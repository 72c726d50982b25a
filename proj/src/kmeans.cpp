#include "hw/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hw/error.hpp"
#include "hw/kernels.hpp"

namespace hw {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
  std::uint64_t threshold = -bound % bound;
  while (true) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 rng(seed ^ (0x632be59bd9b4e019ULL + salt * 0x9e3779b97f4a7c15ULL));
  return rng.next();
}

namespace {

// k-means++: first centroid uniform, then points weighted by squared
// distance to the nearest chosen centroid.
std::vector<std::vector<float>> seed_centroids(const std::vector<LabeledPoint>& points,
                                               std::size_t k, std::size_t dim, SplitMix64& rng) {
  std::vector<std::vector<float>> centroids;
  centroids.reserve(k);
  std::size_t first = static_cast<std::size_t>(rng.next_below(points.size()));
  centroids.push_back(points[first].vec);

  std::vector<double> dist(points.size());
  while (centroids.size() < k) {
    const float* last = centroids.back().data();
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double d = kernels::squared_distance(points[i].vec.data(), last, dim);
      if (centroids.size() == 1 || d < dist[i]) dist[i] = d;
      total += dist[i];
    }
    std::size_t pick;
    if (total <= 0.0) {
      // All remaining points coincide with chosen centroids.
      pick = static_cast<std::size_t>(rng.next_below(points.size()));
    } else {
      double target = rng.next_double() * total;
      double acc = 0.0;
      pick = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        acc += dist[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    }
    centroids.push_back(points[pick].vec);
  }
  return centroids;
}

}  // namespace

std::vector<KMeansCluster> kmeans(const std::vector<LabeledPoint>& points, std::size_t k,
                                  std::uint64_t seed) {
  if (k == 0 || k > points.size())
    throw Error("kmeans: k = " + std::to_string(k) + " with " + std::to_string(points.size()) +
                " points");
  std::size_t dim = points[0].vec.size();
  for (const auto& p : points)
    if (p.vec.size() != dim)
      throw DimensionError("kmeans: point '" + p.symbol + "' has dimension " +
                           std::to_string(p.vec.size()) + ", expected " + std::to_string(dim));

  std::vector<float> flat(points.size() * dim);
  for (std::size_t i = 0; i < points.size(); ++i)
    std::copy(points[i].vec.begin(), points[i].vec.end(), flat.begin() + i * dim);

  SplitMix64 rng(seed);
  std::vector<std::vector<float>> centroids = seed_centroids(points, k, dim, rng);
  std::vector<float> flat_centroids(k * dim);
  std::vector<int> labels(points.size(), 0);

  constexpr int kMaxIterations = 100;
  constexpr double kShiftEpsilon = 1e-6;

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    for (std::size_t c = 0; c < k; ++c)
      std::copy(centroids[c].begin(), centroids[c].end(), flat_centroids.begin() + c * dim);

    kernels::assign_points(flat.data(), points.size(), dim, flat_centroids.data(), k,
                           labels.data());

    // Centroid update stays serial so summation order is fixed.
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto& sum = sums[labels[i]];
      const float* p = flat.data() + i * dim;
      for (std::size_t d = 0; d < dim; ++d) sum[d] += p[d];
      counts[labels[i]]++;
    }

    // Repair empty clusters by stealing the point farthest from its
    // centroid (ties to the lowest point index).
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t steal = 0;
      double worst = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (counts[labels[i]] <= 1) continue;  // do not empty another cluster
        double d = kernels::squared_distance(flat.data() + i * dim,
                                             flat_centroids.data() + labels[i] * dim, dim);
        if (d > worst) {
          worst = d;
          steal = i;
        }
      }
      auto& from = sums[labels[steal]];
      const float* p = flat.data() + steal * dim;
      for (std::size_t d = 0; d < dim; ++d) {
        from[d] -= p[d];
        sums[c][d] += p[d];
      }
      counts[labels[steal]]--;
      counts[c] = 1;
      labels[steal] = static_cast<int>(c);
    }

    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      double delta = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        double next = sums[c][d] / static_cast<double>(counts[c]);
        double diff = next - static_cast<double>(centroids[c][d]);
        delta += diff * diff;
        centroids[c][d] = static_cast<float>(next);
      }
      shift = std::max(shift, std::sqrt(delta));
    }
    if (shift < kShiftEpsilon) break;
  }

  // Final assignment against the converged centroids.
  for (std::size_t c = 0; c < k; ++c)
    std::copy(centroids[c].begin(), centroids[c].end(), flat_centroids.begin() + c * dim);
  kernels::assign_points(flat.data(), points.size(), dim, flat_centroids.data(), k, labels.data());

  std::vector<KMeansCluster> out(k);
  for (std::size_t i = 0; i < points.size(); ++i)
    out[labels[i]].members.push_back(points[i].symbol);
  for (auto& cluster : out) std::sort(cluster.members.begin(), cluster.members.end());

  // Final assignment can in principle re-empty a cluster repaired in the
  // last iteration; keep the partition total by reusing the repair rule.
  for (std::size_t c = 0; c < k; ++c) {
    if (!out[c].members.empty()) continue;
    std::size_t steal_from = 0;
    for (std::size_t other = 0; other < k; ++other)
      if (out[other].members.size() > out[steal_from].members.size()) steal_from = other;
    out[c].members.push_back(out[steal_from].members.back());
    out[steal_from].members.pop_back();
  }
  return out;
}

}  // namespace hw
