#ifndef DIGMOL_MOLGRAPH_HPP
#define DIGMOL_MOLGRAPH_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace digmol {

// Heavy atoms only; hydrogens stay implicit.
struct Atom {
    std::string element;
    bool aromatic = false;
    int formal_charge = 0;
    std::size_t index = 0;
};

enum class BondOrder { single, double_bond, triple, aromatic };

struct Bond {
    std::size_t a = 0;
    std::size_t b = 0;
    BondOrder order = BondOrder::single;
};

// Directed molecular graph. Every chemical bond is stored as an opposing
// pair of directed edges, so A is symmetric until augmentation removes
// single directions.
struct MolGraph {
    Matrix features;    // N x P node features
    Matrix adjacency;   // N x N, entries exactly 0 or 1, zero diagonal
    std::vector<Atom> atoms;
    std::vector<Bond> bonds;

    std::size_t num_nodes() const { return atoms.size(); }
    std::size_t num_directed_edges() const;
};

struct DegreeVectors {
    std::vector<double> out;  // rowsum(A)
    std::vector<double> in;   // rowsum(A^T)
};

struct TransitionPair {
    Matrix forward;   // A / rowsum(A), zero rows kept zero
    Matrix backward;  // A^T / rowsum(A^T), zero rows kept zero
};

DegreeVectors degrees(const MolGraph& graph);

TransitionPair transitions(const MolGraph& graph);

// D^(-1/2) (A + I) D^(-1/2) with D the degree diagonal of A + I; used by
// the plain graph-convolution encoder variant only.
Matrix normalized_self_loop_adjacency(const MolGraph& graph);

// perm maps old index -> new index and must be a bijection.
MolGraph permute(const MolGraph& graph, const std::vector<std::size_t>& perm);

}  // namespace digmol

#endif
