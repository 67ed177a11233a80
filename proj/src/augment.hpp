#ifndef DIGMOL_AUGMENT_HPP
#define DIGMOL_AUGMENT_HPP

#include <cstdint>
#include <utility>

#include "molgraph.hpp"
#include "rng.hpp"

namespace digmol {

struct AugmentConfig {
    double mask_ratio = 0.25;
    double unidir_delete_ratio = 0.25;
    std::uint64_t seed = 0;
};

// Zeroes the feature rows of floor(mask_ratio * N) atoms chosen uniformly
// without replacement. Topology is untouched.
MolGraph mask_atoms(const MolGraph& graph, const AugmentConfig& config, RngStream& rng);

// Removes one direction of floor(ratio * bond_count) bonds chosen uniformly
// without replacement; the surviving direction is a fair coin per bond.
// Expects the unaugmented (symmetric) graph.
MolGraph delete_unidirectional(const MolGraph& graph, const AugmentConfig& config,
                               RngStream& rng);

// Two independently corrupted views of the same molecule, drawn from
// disjoint sub-streams so the pair is a pure function of (graph, config,
// stream state).
std::pair<MolGraph, MolGraph> make_pair(const MolGraph& graph, const AugmentConfig& config,
                                        const RngStream& rng);

}  // namespace digmol

#endif
