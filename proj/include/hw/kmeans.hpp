#ifndef HW_KMEANS_HPP
#define HW_KMEANS_HPP

// Seeded, deterministic k-means over unit vectors: k-means++ initialization,
// Lloyd iterations with squared Euclidean distance (cosine-order equivalent
// on unit vectors), empty clusters repaired by stealing the point farthest
// from its centroid. Identical input and seed give identical clusters on any
// thread count; the RNG is self-contained so results do not depend on the
// standard library either.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hw {

struct LabeledPoint {
  std::string symbol;
  std::vector<float> vec;
};

struct KMeansCluster {
  std::vector<std::string> members;  // sorted lexicographically
};

std::vector<KMeansCluster> kmeans(const std::vector<LabeledPoint>& points, std::size_t k,
                                  std::uint64_t seed);

// splitmix64; used wherever the artifact needs seeded randomness.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound) by rejection; bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace hw

#endif
