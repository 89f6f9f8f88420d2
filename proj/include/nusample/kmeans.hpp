#pragma once

#include <cstdint>
#include <vector>

#include "nusample/matrix.hpp"

namespace nusample {

struct KMeansConfig {
    std::size_t max_iters = 300;
    double tol = 1e-4;  // stop when no centroid moves farther than this
};

struct KMeansModel {
    Matrix centroids;  // k x m
    std::vector<std::size_t> assignment;
    std::size_t iterations_run = 0;
    double inertia = 0.0;
    std::vector<double> inertia_history;  // after each assignment step
};

/// Lloyd's algorithm with k-means++ seeding. An empty cluster is re-seeded
/// at the point farthest from its current centroid.
KMeansModel kmeans(const Matrix& points, std::size_t k, std::uint64_t seed, const KMeansConfig& cfg = {});

}  // namespace nusample
