#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "sbscache/coloring.hpp"
#include "sbscache/errors.hpp"
#include "sbscache/netgraph.hpp"
#include "sbscache/popularity.hpp"

namespace sbscache {

/// Color q caches the rank block (q-1)*M+1 .. q*M, wrapped modulo |F|.
/// Lower colors get more popular blocks; differently colored SBSs get disjoint
/// blocks as long as no wrap occurs.
inline PlacementMap place_by_coloring(const Coloring& c, const Catalog& catalog, std::size_t memory) {
    if (memory == 0) throw DomainError("place_by_coloring: memory must be >= 1");
    const std::size_t files = catalog.file_count();
    PlacementMap out{std::vector<std::vector<Rank>>(c.size()), memory};
    for (std::size_t s = 0; s < c.size(); ++s) {
        if (c.colors[s] < 1) throw DomainError("place_by_coloring: SBS without a color");
        const std::size_t q = static_cast<std::size_t>(c.colors[s]);
        auto& block = out.cached[s];
        block.reserve(std::min(memory, files));
        for (std::size_t r = (q - 1) * memory + 1; r <= q * memory; ++r)
            block.push_back(static_cast<Rank>((r - 1) % files + 1));
        std::sort(block.begin(), block.end());
        block.erase(std::unique(block.begin(), block.end()), block.end());
    }
    return out;
}

/// Every SBS caches ranks 1..M.
inline PlacementMap place_most_popular(std::size_t n_sbs, const Catalog& catalog, std::size_t memory) {
    if (memory > catalog.file_count()) throw DomainError("place_most_popular: memory exceeds catalog size");
    std::vector<Rank> top(memory);
    for (std::size_t r = 0; r < memory; ++r) top[r] = static_cast<Rank>(r + 1);
    return PlacementMap{std::vector<std::vector<Rank>>(n_sbs, top), memory};
}

}  // namespace sbscache
