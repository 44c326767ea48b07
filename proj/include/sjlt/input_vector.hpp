#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sjlt/error.hpp"

namespace sjlt {

struct SparseEntry {
    std::uint64_t index = 0;
    double value = 0.0;
};

// A vector in R^u, stored dense or as (index, value) pairs with strictly
// increasing indices. Both representations embed identically, bit for bit.
class InputVector {
public:
    InputVector() = default;

    static InputVector dense(Eigen::VectorXd values) {
        for (Eigen::Index i = 0; i < values.size(); ++i)
            if (!std::isfinite(values[i]))
                throw DataError("input vector: non-finite value at index " +
                                std::to_string(i));
        InputVector v;
        v.dim_ = static_cast<std::uint64_t>(values.size());
        v.dense_ = std::move(values);
        v.is_dense_ = true;
        return v;
    }

    static InputVector sparse(std::uint64_t dim, std::vector<SparseEntry> entries) {
        std::uint64_t prev = 0;
        bool first = true;
        for (const auto& e : entries) {
            if (e.index >= dim)
                throw DataError("input vector: sparse index " +
                                std::to_string(e.index) + " >= dimension " +
                                std::to_string(dim));
            if (!first && e.index <= prev)
                throw DataError("input vector: sparse indices must be strictly increasing");
            if (!std::isfinite(e.value))
                throw DataError("input vector: non-finite value at index " +
                                std::to_string(e.index));
            prev = e.index;
            first = false;
        }
        InputVector v;
        v.dim_ = dim;
        v.entries_ = std::move(entries);
        v.is_dense_ = false;
        return v;
    }

    std::uint64_t dim() const { return dim_; }
    bool is_dense() const { return is_dense_; }
    const Eigen::VectorXd& dense_values() const { return dense_; }
    const std::vector<SparseEntry>& entries() const { return entries_; }

    double squared_norm() const {
        if (is_dense_) return dense_.squaredNorm();
        double acc = 0.0;
        for (const auto& e : entries_) acc += e.value * e.value;
        return acc;
    }

    std::uint64_t nonzero_count() const {
        if (!is_dense_) return entries_.size();
        std::uint64_t n = 0;
        for (Eigen::Index i = 0; i < dense_.size(); ++i)
            if (dense_[i] != 0.0) ++n;
        return n;
    }

    // Nonzero coordinates in ascending index order (exact zeros skipped on
    // the dense side so both representations visit the same sequence).
    template <class Fn>
    void for_each_nonzero(Fn&& fn) const {
        if (is_dense_) {
            for (Eigen::Index i = 0; i < dense_.size(); ++i)
                if (dense_[i] != 0.0) fn(static_cast<std::uint64_t>(i), dense_[i]);
        } else {
            for (const auto& e : entries_)
                if (e.value != 0.0) fn(e.index, e.value);
        }
    }

    Eigen::VectorXd to_dense() const {
        if (is_dense_) return dense_;
        Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
        for (const auto& e : entries_) out[static_cast<Eigen::Index>(e.index)] = e.value;
        return out;
    }

private:
    std::uint64_t dim_ = 0;
    bool is_dense_ = true;
    Eigen::VectorXd dense_;
    std::vector<SparseEntry> entries_;
};

} // namespace sjlt
