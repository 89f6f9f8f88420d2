#include "nusample/kmeans.hpp"

#include <cmath>
#include <limits>

#include "nusample/error.hpp"
#include "nusample/rng.hpp"
#include "nusample/simd.hpp"

namespace nusample {

namespace {

// k-means++: first centre uniform, then proportional to squared distance to
// the nearest chosen centre.
Matrix seed_plus_plus(const Matrix& x, std::size_t k, Rng& rng) {
    const auto& kern = simd::kernels();
    const std::size_t n = x.rows(), m = x.cols();
    Matrix c(k, m);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::size_t pick = rng.below(n);
    for (std::size_t j = 0; j < k; ++j) {
        std::copy(x.row(pick).begin(), x.row(pick).end(), c.row(j).begin());
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], kern.squared_distance(x.row(i).data(), c.row(j).data(), m));
            total += d2[i];
        }
        if (j + 1 == k) break;
        if (total <= 0.0) {  // every point already sits on a centre
            pick = rng.below(n);
            continue;
        }
        double target = rng.uniform() * total;
        pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
            target -= d2[i];
            if (target < 0.0) {
                pick = i;
                break;
            }
        }
    }
    return c;
}

double assign(const Matrix& x, const Matrix& c, std::vector<std::size_t>& a, std::vector<double>& d2) {
    const auto& kern = simd::kernels();
    double inertia = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t j = 0; j < c.rows(); ++j) {
            const double d = kern.squared_distance(x.row(i).data(), c.row(j).data(), x.cols());
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        a[i] = arg;
        d2[i] = best;
        inertia += best;
    }
    return inertia;
}

}  // namespace

KMeansModel kmeans(const Matrix& points, std::size_t k, std::uint64_t seed, const KMeansConfig& cfg) {
    if (points.empty()) throw Error(ErrorKind::empty_input, "kmeans: no points");
    if (k < 1 || k > points.rows())
        throw Error(ErrorKind::bad_k, "kmeans: k=" + std::to_string(k) + " for " + std::to_string(points.rows()) +
                                          " points");
    if (cfg.max_iters < 1) throw Error(ErrorKind::config, "kmeans: max_iters must be >= 1");

    const std::size_t n = points.rows(), m = points.cols();
    Rng rng(derive_seed(seed, 0x6b6d));
    KMeansModel model;
    model.centroids = seed_plus_plus(points, k, rng);
    model.assignment.assign(n, 0);
    std::vector<double> d2(n);

    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        model.inertia = assign(points, model.centroids, model.assignment, d2);
        model.inertia_history.push_back(model.inertia);
        model.iterations_run = it + 1;

        Matrix next(k, m);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto dst = next.row(model.assignment[i]);
            auto src = points.row(i);
            for (std::size_t c = 0; c < m; ++c) dst[c] += src[c];
            ++counts[model.assignment[i]];
        }
        std::vector<bool> taken(n, false);
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] > 0) {
                for (auto& v : next.row(j)) v /= static_cast<double>(counts[j]);
                continue;
            }
            // empty cluster: steal the worst-fitted point not already used
            std::size_t far = n;
            for (std::size_t i = 0; i < n; ++i)
                if (!taken[i] && (far == n || d2[i] > d2[far])) far = i;
            taken[far] = true;
            d2[far] = 0.0;
            std::copy(points.row(far).begin(), points.row(far).end(), next.row(j).begin());
        }

        double shift = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            shift = std::max(shift, simd::squared_distance(next.row(j), model.centroids.row(j)));
        model.centroids = std::move(next);
        if (std::sqrt(shift) < cfg.tol) break;
    }
    // final assignment against the returned centroids
    model.inertia = assign(points, model.centroids, model.assignment, d2);
    model.inertia_history.push_back(model.inertia);
    return model;
}

}  // namespace nusample
