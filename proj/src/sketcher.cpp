#include "sjlt/sketcher.hpp"

#include <cmath>
#include <string>

#include "sjlt/error.hpp"
#include "sjlt/parallel.hpp"

namespace sjlt {
namespace {

// One kernel per concrete family so the block loop inlines; accumulation is
// 64-bit float in ascending key order, then ascending block, which pins the
// floating point result bit for bit.
template <class Family>
void embed_into(const Family& family, const SjltParams& params, const InputVector& x,
                Eigen::VectorXd& out) {
    const std::uint64_t rows_per_block = params.rows_per_block();
    const std::uint32_t blocks = params.s;
    const double scale = 1.0 / std::sqrt(static_cast<double>(blocks));
    std::vector<BucketSign> slots(blocks);
    out.setZero(static_cast<Eigen::Index>(params.m));
    x.for_each_nonzero([&](std::uint64_t key, double value) {
        family.eval_blocks(key, std::span<BucketSign>(slots));
        const double scaled = value * scale;
        for (std::uint32_t i = 0; i < blocks; ++i) {
            const auto [bucket, sign] = slots[i];
            out[static_cast<Eigen::Index>(i * rows_per_block + bucket)] +=
                static_cast<double>(sign) * scaled;
        }
    });
}

} // namespace

Sketcher::Sketcher(SjltParams params, HashFamily family)
    : params_(params), family_(std::move(family)) {
    params_.validate();
    if (family_.universe() != params_.u)
        throw ConfigError("sketcher: family universe " +
                          std::to_string(family_.universe()) +
                          " does not match u=" + std::to_string(params_.u));
    if (family_.blocks() != params_.s)
        throw ConfigError("sketcher: family has " + std::to_string(family_.blocks()) +
                          " blocks, params want s=" + std::to_string(params_.s));
    if (family_.bucket_bits() != params_.bucket_bits())
        throw ConfigError("sketcher: family bucket_bits " +
                          std::to_string(family_.bucket_bits()) +
                          " does not match log2(m/s)=" +
                          std::to_string(params_.bucket_bits()));
}

Eigen::VectorXd Sketcher::embed(const InputVector& x) const {
    if (x.dim() != params_.u)
        throw DataError("embed: vector dimension " + std::to_string(x.dim()) +
                        " does not match u=" + std::to_string(params_.u));
    Eigen::VectorXd out;
    family_.visit([&](const auto& f) { embed_into(f, params_, x, out); });
    return out;
}

std::vector<Eigen::VectorXd> Sketcher::embed_batch(
    const std::vector<InputVector>& xs) const {
    std::vector<Eigen::VectorXd> out(xs.size());
    parallel_for(static_cast<std::int64_t>(xs.size()),
                 [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = embed(xs[static_cast<std::size_t>(i)]); });
    return out;
}

double Sketcher::distortion(const InputVector& x) const {
    const double norm_sq = x.squared_norm();
    if (norm_sq == 0.0)
        throw DataError("distortion: zero vector has no distortion");
    return embed(x).squaredNorm() / norm_sq - 1.0;
}

} // namespace sjlt
