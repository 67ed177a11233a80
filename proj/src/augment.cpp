#include "augment.hpp"

#include <cmath>

#include "error.hpp"

namespace digmol {

MolGraph mask_atoms(const MolGraph& graph, const AugmentConfig& config, RngStream& rng) {
    MolGraph out = graph;
    std::size_t n = graph.num_nodes();
    auto count = static_cast<std::size_t>(std::floor(config.mask_ratio * static_cast<double>(n)));
    for (std::size_t row : rng.sample_without_replacement(n, count)) {
        for (std::size_t j = 0; j < out.features.cols(); ++j) out.features(row, j) = 0.0;
    }
    return out;
}

MolGraph delete_unidirectional(const MolGraph& graph, const AugmentConfig& config,
                               RngStream& rng) {
    MolGraph out = graph;
    std::size_t n_bonds = graph.bonds.size();
    auto count = static_cast<std::size_t>(
        std::floor(config.unidir_delete_ratio * static_cast<double>(n_bonds)));
    for (std::size_t pick : rng.sample_without_replacement(n_bonds, count)) {
        const Bond& bond = graph.bonds[pick];
        if (rng.next_coin()) {
            out.adjacency(bond.a, bond.b) = 0.0;  // keep b -> a
        } else {
            out.adjacency(bond.b, bond.a) = 0.0;  // keep a -> b
        }
    }
    return out;
}

std::pair<MolGraph, MolGraph> make_pair(const MolGraph& graph, const AugmentConfig& config,
                                        const RngStream& rng) {
    auto view = [&](std::uint64_t which) {
        RngStream stream = rng.substream(which);
        MolGraph v = mask_atoms(graph, config, stream);
        return delete_unidirectional(v, config, stream);
    };
    return {view(1), view(2)};
}

}  // namespace digmol
