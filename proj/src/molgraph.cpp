#include "molgraph.hpp"

#include <cmath>

#include "error.hpp"

namespace digmol {

std::size_t MolGraph::num_directed_edges() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
        if (adjacency.data()[i] != 0.0) ++count;
    }
    return count;
}

DegreeVectors degrees(const MolGraph& graph) {
    std::size_t n = graph.num_nodes();
    DegreeVectors d{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double a = graph.adjacency(i, j);
            d.out[i] += a;
            d.in[j] += a;
        }
    }
    return d;
}

TransitionPair transitions(const MolGraph& graph) {
    std::size_t n = graph.num_nodes();
    DegreeVectors d = degrees(graph);
    TransitionPair t{Matrix(n, n), Matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (d.out[i] > 0.0) t.forward(i, j) = graph.adjacency(i, j) / d.out[i];
            if (d.in[i] > 0.0) t.backward(i, j) = graph.adjacency(j, i) / d.in[i];
        }
    }
    return t;
}

Matrix normalized_self_loop_adjacency(const MolGraph& graph) {
    std::size_t n = graph.num_nodes();
    Matrix with_loops = graph.adjacency;
    for (std::size_t i = 0; i < n; ++i) with_loops(i, i) += 1.0;
    std::vector<double> inv_sqrt(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (std::size_t j = 0; j < n; ++j) rowsum += with_loops(i, j);
        inv_sqrt[i] = 1.0 / std::sqrt(rowsum);
    }
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = inv_sqrt[i] * with_loops(i, j) * inv_sqrt[j];
    return out;
}

MolGraph permute(const MolGraph& graph, const std::vector<std::size_t>& perm) {
    std::size_t n = graph.num_nodes();
    if (perm.size() != n) {
        throw Error(ErrorCode::invalid_permutation, "permutation length differs from node count");
    }
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) {
            throw Error(ErrorCode::invalid_permutation, "permutation is not a bijection");
        }
        seen[p] = true;
    }
    MolGraph out;
    out.features = Matrix(n, graph.features.cols());
    out.adjacency = Matrix(n, n);
    out.atoms.resize(n);
    out.bonds.reserve(graph.bonds.size());
    for (std::size_t i = 0; i < n; ++i) {
        out.atoms[perm[i]] = graph.atoms[i];
        out.atoms[perm[i]].index = perm[i];
        for (std::size_t j = 0; j < graph.features.cols(); ++j)
            out.features(perm[i], j) = graph.features(i, j);
        for (std::size_t j = 0; j < n; ++j)
            out.adjacency(perm[i], perm[j]) = graph.adjacency(i, j);
    }
    for (const Bond& b : graph.bonds) {
        out.bonds.push_back(Bond{perm[b.a], perm[b.b], b.order});
    }
    return out;
}

}  // namespace digmol
