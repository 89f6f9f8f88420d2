#include "nusample/neighbors.hpp"

#include <algorithm>
#include <numeric>

#include "nusample/error.hpp"
#include "nusample/simd.hpp"

namespace nusample {

NeighborQuery::NeighborQuery(const Matrix& data, std::vector<std::size_t> reference_rows)
    : data_(&data), rows_(std::move(reference_rows)) {
    for (auto r : rows_)
        if (r >= data.rows()) throw Error(ErrorKind::shape, "NeighborQuery: reference row out of range");
}

NeighborQuery::NeighborQuery(const Matrix& data) : data_(&data), rows_(data.rows()) {
    std::iota(rows_.begin(), rows_.end(), std::size_t{0});
}

std::vector<Neighbor> NeighborQuery::scan(std::span<const double> q, std::optional<std::size_t> exclude) const {
    if (q.size() != data_->cols()) throw Error(ErrorKind::shape, "NeighborQuery: query width mismatch");
    const auto& k = simd::kernels();
    std::vector<Neighbor> all;
    all.reserve(rows_.size());
    for (auto r : rows_) {
        if (exclude && r == *exclude) continue;
        all.push_back({r, k.squared_distance(q.data(), data_->row(r).data(), q.size())});
    }
    return all;
}

std::vector<Neighbor> NeighborQuery::nearest(std::span<const double> q, std::size_t k,
                                             std::optional<std::size_t> exclude) const {
    auto all = scan(q, exclude);
    if (k < 1 || k > all.size())
        throw Error(ErrorKind::bad_k, "nearest: k=" + std::to_string(k) + " with " + std::to_string(all.size()) +
                                          " candidate neighbors");
    auto closer = [](const Neighbor& a, const Neighbor& b) { return a.dist != b.dist ? a.dist < b.dist : a.id < b.id; };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), closer);
    all.resize(k);
    return all;
}

std::vector<Neighbor> NeighborQuery::farthest(std::span<const double> q, std::size_t k) const {
    auto all = scan(q, std::nullopt);
    if (k < 1 || k > all.size())
        throw Error(ErrorKind::bad_k, "farthest: k=" + std::to_string(k) + " with " + std::to_string(all.size()) +
                                          " candidate neighbors");
    auto farther = [](const Neighbor& a, const Neighbor& b) { return a.dist != b.dist ? a.dist > b.dist : a.id < b.id; };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), farther);
    all.resize(k);
    return all;
}

}  // namespace nusample
