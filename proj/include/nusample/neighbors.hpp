#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nusample/matrix.hpp"

namespace nusample {

struct Neighbor {
    std::size_t id;  // row index into the reference matrix
    double dist;     // squared Euclidean
};

/// Brute-force k-NN over a subset of a matrix's rows. Results are ordered by
/// (distance, id) so ties always resolve to the lower row index, independent
/// of scan order.
class NeighborQuery {
public:
    NeighborQuery(const Matrix& data, std::vector<std::size_t> reference_rows);

    /// Reference set = every row of `data`.
    explicit NeighborQuery(const Matrix& data);

    std::size_t size() const noexcept { return rows_.size(); }
    std::span<const std::size_t> reference_rows() const noexcept { return rows_; }

    /// k nearest reference rows to q, optionally skipping one row id (the
    /// query's own row). Requires 1 <= k <= available references.
    std::vector<Neighbor> nearest(std::span<const double> q, std::size_t k,
                                  std::optional<std::size_t> exclude = std::nullopt) const;

    /// k farthest reference rows, farthest first (ties: lower id first).
    std::vector<Neighbor> farthest(std::span<const double> q, std::size_t k) const;

private:
    std::vector<Neighbor> scan(std::span<const double> q, std::optional<std::size_t> exclude) const;

    const Matrix* data_;
    std::vector<std::size_t> rows_;
};

}  // namespace nusample
