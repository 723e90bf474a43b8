#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sbscache/errors.hpp"
#include "sbscache/random.hpp"

namespace sbscache {

using Rank = int;  // 1-based file rank; rank 1 is the most popular

/// Zipf-distributed catalog of unit-size files. Immutable after construction;
/// the cumulative table is built once here.
class Catalog {
public:
    Catalog(std::size_t file_count, double alpha) : file_count_(file_count), alpha_(alpha) {
        if (file_count == 0) throw DomainError("Catalog: file_count must be >= 1");
        if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("Catalog: alpha must be finite and >= 0");

        // Accumulate from the tail so the small terms are added first.
        long double norm = 0.0L;
        for (std::size_t f = file_count; f >= 1; --f) norm += std::pow(static_cast<long double>(f), -alpha_);
        pmf_.resize(file_count);
        cdf_.resize(file_count);
        long double run = 0.0L;
        for (std::size_t f = 1; f <= file_count; ++f) {
            const long double p = std::pow(static_cast<long double>(f), -alpha_) / norm;
            pmf_[f - 1] = static_cast<double>(p);
            run += p;
            cdf_[f - 1] = static_cast<double>(run);
        }
        cdf_.back() = 1.0;
    }

    std::size_t file_count() const noexcept { return file_count_; }
    double alpha() const noexcept { return alpha_; }

    /// f^{-alpha} / sum_i i^{-alpha}
    double pmf(Rank rank) const {
        if (rank < 1 || static_cast<std::size_t>(rank) > file_count_)
            throw DomainError("zipf_pmf: rank " + std::to_string(rank) + " outside 1.." + std::to_string(file_count_));
        return pmf_[static_cast<std::size_t>(rank) - 1];
    }

    /// Probability mass of ranks 1..k.
    double top_mass(std::size_t k) const {
        if (k > file_count_) throw DomainError("top_mass: k exceeds file_count");
        if (k == 0) return 0.0;
        return cdf_[k - 1];
    }

    /// Inverse-CDF draw.
    Rank sample(Rng& rng) const {
        const double u = uniform01(rng);
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), file_count_ - 1);
        return static_cast<Rank>(idx + 1);
    }

    const std::vector<double>& pmf_table() const noexcept { return pmf_; }

private:
    std::size_t file_count_;
    double alpha_;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

inline double zipf_pmf(const Catalog& catalog, Rank rank) { return catalog.pmf(rank); }
inline Rank sample_request(const Catalog& catalog, Rng& rng) { return catalog.sample(rng); }
inline double top_mass(const Catalog& catalog, std::size_t k) { return catalog.top_mass(k); }

}  // namespace sbscache
