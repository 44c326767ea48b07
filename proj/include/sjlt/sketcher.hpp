#pragma once
// The sparse JL transform: y = Ax against an implicit matrix whose column x
// holds sign(i,x)/sqrt(s) at row i*(m/s) + bucket(i,x) for each block i.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sjlt/family.hpp"
#include "sjlt/input_vector.hpp"
#include "sjlt/params.hpp"

namespace sjlt {

class Sketcher {
public:
    Sketcher() = default;

    // The family must agree with the geometry: same u, s blocks, and
    // 2^bucket_bits rows per block.
    Sketcher(SjltParams params, HashFamily family);

    Eigen::VectorXd embed(const InputVector& x) const;

    // Element-wise embed; parallelized across vectors, output order matches
    // input order and results are identical to sequential embedding.
    std::vector<Eigen::VectorXd> embed_batch(const std::vector<InputVector>& xs) const;

    // ||Ax||^2 / ||x||^2 - 1. The zero vector has no distortion.
    double distortion(const InputVector& x) const;

    const SjltParams& params() const { return params_; }
    const HashFamily& family() const { return family_; }

private:
    SjltParams params_;
    HashFamily family_;
};

} // namespace sjlt
