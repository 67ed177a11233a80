#ifndef DIGMOL_SMILES_HPP
#define DIGMOL_SMILES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "molgraph.hpp"

namespace digmol {

enum class TokenKind {
    organic_atom,
    bracket_atom,
    bond,
    branch_open,
    branch_close,
    ring_closure,
};

struct SmilesToken {
    TokenKind kind;
    std::string text;
    std::size_t position = 0;  // byte offset into the source string
};

// Supported subset: organic-subset atoms (B C N O P S F Cl Br I and the
// aromatic forms b c n o p s), bracket atoms with an optional charge,
// bond symbols - = # :, branches, and ring closures 1-9 or %nn.
// Concatenating the token texts reproduces the input exactly.
std::vector<SmilesToken> tokenize(std::string_view smiles);

MolGraph parse_smiles(std::string_view smiles);

// Fixed node feature layout:
//   [0..9]   element one-hot (B C N O P S F Cl Br I)
//   [10..15] bond-degree one-hot, 0-5 heavy neighbors (clamped)
//   [16]     aromatic flag
//   [17..21] formal charge one-hot over [-2, 2] (clamped)
//   [22]     out-degree
//   [23]     in-degree
inline constexpr std::size_t kAtomFeatureDim = 24;

std::vector<double> atom_features(const Atom& atom, std::size_t out_degree,
                                  std::size_t in_degree);

struct ScaffoldKey {
    std::string canonical_string;  // empty for acyclic molecules

    bool operator==(const ScaffoldKey&) const = default;
    bool operator<(const ScaffoldKey& other) const {
        return canonical_string < other.canonical_string;
    }
};

// Ring-and-linker skeleton: iteratively drops atoms with at most one heavy
// neighbor, then reindexes the survivors.
MolGraph scaffold_graph(const MolGraph& graph);

ScaffoldKey extract_scaffold(const MolGraph& graph);

}  // namespace digmol

#endif
