#include "smiles.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>

#include "error.hpp"

namespace digmol {
namespace {

constexpr std::array<const char*, 10> kElements = {"B", "C", "N",  "O", "P",
                                                   "S", "F", "Cl", "Br", "I"};

int element_slot(const std::string& element) {
    for (std::size_t i = 0; i < kElements.size(); ++i) {
        if (element == kElements[i]) return static_cast<int>(i);
    }
    return -1;
}

bool is_aromatic_symbol(char c) {
    return c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's';
}

char bond_order_char(BondOrder order) {
    switch (order) {
        case BondOrder::single: return '-';
        case BondOrder::double_bond: return '=';
        case BondOrder::triple: return '#';
        case BondOrder::aromatic: return ':';
    }
    return '?';
}

BondOrder bond_order_from_char(char c) {
    switch (c) {
        case '-': return BondOrder::single;
        case '=': return BondOrder::double_bond;
        case '#': return BondOrder::triple;
        default: return BondOrder::aromatic;
    }
}

}  // namespace

std::vector<SmilesToken> tokenize(std::string_view smiles) {
    if (smiles.empty()) {
        throw Error(ErrorCode::empty_input, "empty SMILES string");
    }
    std::vector<SmilesToken> tokens;
    std::size_t i = 0;
    while (i < smiles.size()) {
        char c = smiles[i];
        if (static_cast<unsigned char>(c) >= 0x80) {
            throw Error(ErrorCode::unknown_character, "non-ASCII byte", static_cast<std::int64_t>(i));
        }
        if (c == '(') {
            tokens.push_back({TokenKind::branch_open, "(", i++});
        } else if (c == ')') {
            tokens.push_back({TokenKind::branch_close, ")", i++});
        } else if (c == '-' || c == '=' || c == '#' || c == ':') {
            tokens.push_back({TokenKind::bond, std::string(1, c), i++});
        } else if (c >= '1' && c <= '9') {
            tokens.push_back({TokenKind::ring_closure, std::string(1, c), i++});
        } else if (c == '%') {
            if (i + 2 >= smiles.size() || !isdigit(static_cast<unsigned char>(smiles[i + 1])) ||
                !isdigit(static_cast<unsigned char>(smiles[i + 2]))) {
                throw Error(ErrorCode::malformed_smiles, "'%' ring closure needs two digits",
                            static_cast<std::int64_t>(i));
            }
            tokens.push_back({TokenKind::ring_closure, std::string(smiles.substr(i, 3)), i});
            i += 3;
        } else if (c == '[') {
            std::size_t close = smiles.find(']', i);
            if (close == std::string_view::npos) {
                throw Error(ErrorCode::malformed_smiles, "unterminated bracket atom",
                            static_cast<std::int64_t>(i));
            }
            for (std::size_t k = i + 1; k < close; ++k) {
                char b = smiles[k];
                if (!isalnum(static_cast<unsigned char>(b)) && b != '+' && b != '-' && b != '@') {
                    throw Error(ErrorCode::unknown_character, "unexpected character in brackets",
                                static_cast<std::int64_t>(k));
                }
            }
            tokens.push_back({TokenKind::bracket_atom, std::string(smiles.substr(i, close - i + 1)), i});
            i = close + 1;
        } else if (c == 'C' && i + 1 < smiles.size() && smiles[i + 1] == 'l') {
            tokens.push_back({TokenKind::organic_atom, "Cl", i});
            i += 2;
        } else if (c == 'B' && i + 1 < smiles.size() && smiles[i + 1] == 'r') {
            tokens.push_back({TokenKind::organic_atom, "Br", i});
            i += 2;
        } else if (c == 'B' || c == 'C' || c == 'N' || c == 'O' || c == 'P' || c == 'S' ||
                   c == 'F' || c == 'I' || is_aromatic_symbol(c)) {
            tokens.push_back({TokenKind::organic_atom, std::string(1, c), i++});
        } else {
            throw Error(ErrorCode::unknown_character, "unsupported character",
                        static_cast<std::int64_t>(i));
        }
    }
    return tokens;
}

namespace {

Atom atom_from_organic_token(const SmilesToken& token) {
    Atom atom;
    char first = token.text[0];
    if (is_aromatic_symbol(first) && token.text.size() == 1) {
        atom.aromatic = true;
        atom.element = std::string(1, static_cast<char>(toupper(first)));
    } else {
        atom.element = token.text;
    }
    return atom;
}

// Bracket subset: [element] with an optional trailing charge written as
// +, -, +2, --, etc. Isotopes, explicit hydrogens, and stereo marks are
// out of scope and rejected.
Atom atom_from_bracket_token(const SmilesToken& token) {
    std::string body = token.text.substr(1, token.text.size() - 2);
    if (body.empty()) {
        throw Error(ErrorCode::valence_unsupported, "empty bracket atom",
                    static_cast<std::int64_t>(token.position));
    }
    std::size_t i = 0;
    if (isdigit(static_cast<unsigned char>(body[0]))) {
        throw Error(ErrorCode::valence_unsupported, "isotope labels are not supported",
                    static_cast<std::int64_t>(token.position));
    }
    Atom atom;
    if (body.size() >= 2 && isupper(static_cast<unsigned char>(body[0])) &&
        islower(static_cast<unsigned char>(body[1])) &&
        element_slot(body.substr(0, 2)) >= 0) {
        atom.element = body.substr(0, 2);
        i = 2;
    } else if (isupper(static_cast<unsigned char>(body[0]))) {
        atom.element = body.substr(0, 1);
        i = 1;
    } else if (is_aromatic_symbol(body[0])) {
        atom.element = std::string(1, static_cast<char>(toupper(body[0])));
        atom.aromatic = true;
        i = 1;
    } else {
        throw Error(ErrorCode::valence_unsupported, "unrecognized bracket element",
                    static_cast<std::int64_t>(token.position));
    }
    if (element_slot(atom.element) < 0) {
        throw Error(ErrorCode::valence_unsupported,
                    "element outside the supported set: " + atom.element,
                    static_cast<std::int64_t>(token.position));
    }
    if (i < body.size()) {
        char sign = body[i];
        if (sign != '+' && sign != '-') {
            throw Error(ErrorCode::valence_unsupported,
                        "only charges are supported inside brackets",
                        static_cast<std::int64_t>(token.position));
        }
        int unit = sign == '+' ? 1 : -1;
        int magnitude = 0;
        std::size_t j = i;
        while (j < body.size() && body[j] == sign) {
            ++magnitude;
            ++j;
        }
        if (j < body.size() && isdigit(static_cast<unsigned char>(body[j]))) {
            if (magnitude != 1) {
                throw Error(ErrorCode::valence_unsupported, "malformed charge",
                            static_cast<std::int64_t>(token.position));
            }
            magnitude = body[j] - '0';
            ++j;
        }
        if (j != body.size()) {
            throw Error(ErrorCode::valence_unsupported,
                        "only charges are supported inside brackets",
                        static_cast<std::int64_t>(token.position));
        }
        atom.formal_charge = unit * magnitude;
    }
    return atom;
}

struct RingOpening {
    std::size_t atom;
    std::optional<BondOrder> order;
    int digit;
};

}  // namespace

MolGraph parse_smiles(std::string_view smiles) {
    std::vector<SmilesToken> tokens = tokenize(smiles);

    std::vector<Atom> atoms;
    std::vector<Bond> bonds;
    std::set<std::pair<std::size_t, std::size_t>> bonded;
    std::vector<std::size_t> branch_stack;
    std::optional<std::size_t> current;
    std::optional<BondOrder> pending;
    std::map<int, RingOpening> open_rings;

    auto add_bond = [&](std::size_t a, std::size_t b, std::optional<BondOrder> order,
                        std::size_t position) {
        if (a == b) {
            throw Error(ErrorCode::malformed_smiles, "ring closure bonds an atom to itself",
                        static_cast<std::int64_t>(position));
        }
        auto key = std::minmax(a, b);
        if (!bonded.insert({key.first, key.second}).second) {
            throw Error(ErrorCode::malformed_smiles, "duplicate bond between atoms",
                        static_cast<std::int64_t>(position));
        }
        BondOrder resolved = order.value_or(
            atoms[a].aromatic && atoms[b].aromatic ? BondOrder::aromatic : BondOrder::single);
        bonds.push_back({a, b, resolved});
    };

    for (const SmilesToken& token : tokens) {
        switch (token.kind) {
            case TokenKind::organic_atom:
            case TokenKind::bracket_atom: {
                Atom atom = token.kind == TokenKind::organic_atom
                                ? atom_from_organic_token(token)
                                : atom_from_bracket_token(token);
                atom.index = atoms.size();
                atoms.push_back(atom);
                if (current) {
                    add_bond(*current, atom.index, pending, token.position);
                }
                pending.reset();
                current = atom.index;
                break;
            }
            case TokenKind::bond: {
                if (!current || pending) {
                    throw Error(ErrorCode::malformed_smiles, "bond symbol without a preceding atom",
                                static_cast<std::int64_t>(token.position));
                }
                pending = bond_order_from_char(token.text[0]);
                break;
            }
            case TokenKind::branch_open: {
                if (!current) {
                    throw Error(ErrorCode::malformed_smiles, "branch opened before any atom",
                                static_cast<std::int64_t>(token.position));
                }
                branch_stack.push_back(*current);
                break;
            }
            case TokenKind::branch_close: {
                if (branch_stack.empty()) {
                    throw Error(ErrorCode::unmatched_branch, "')' without matching '('",
                                static_cast<std::int64_t>(token.position));
                }
                if (pending) {
                    throw Error(ErrorCode::malformed_smiles, "dangling bond before ')'",
                                static_cast<std::int64_t>(token.position));
                }
                current = branch_stack.back();
                branch_stack.pop_back();
                break;
            }
            case TokenKind::ring_closure: {
                if (!current) {
                    throw Error(ErrorCode::malformed_smiles, "ring closure before any atom",
                                static_cast<std::int64_t>(token.position));
                }
                int digit = token.text[0] == '%' ? std::stoi(token.text.substr(1))
                                                 : token.text[0] - '0';
                auto it = open_rings.find(digit);
                if (it == open_rings.end()) {
                    open_rings[digit] = RingOpening{*current, pending, digit};
                } else {
                    RingOpening opening = it->second;
                    open_rings.erase(it);
                    std::optional<BondOrder> order;
                    if (opening.order && pending && *opening.order != *pending) {
                        throw Error(ErrorCode::malformed_smiles,
                                    "conflicting bond orders on ring closure",
                                    static_cast<std::int64_t>(token.position));
                    }
                    order = opening.order ? opening.order : pending;
                    add_bond(opening.atom, *current, order, token.position);
                }
                pending.reset();
                break;
            }
        }
    }

    if (!open_rings.empty()) {
        throw Error(ErrorCode::unclosed_ring, "ring closure digit never closed",
                    open_rings.begin()->first);
    }
    if (!branch_stack.empty()) {
        throw Error(ErrorCode::unmatched_branch, "'(' without matching ')'");
    }
    if (pending) {
        throw Error(ErrorCode::malformed_smiles, "dangling bond at end of input");
    }

    std::size_t n = atoms.size();
    MolGraph graph;
    graph.atoms = std::move(atoms);
    graph.bonds = std::move(bonds);
    graph.adjacency = Matrix(n, n);
    for (const Bond& b : graph.bonds) {
        graph.adjacency(b.a, b.b) = 1.0;
        graph.adjacency(b.b, b.a) = 1.0;
    }
    DegreeVectors deg = degrees(graph);
    graph.features = Matrix(n, kAtomFeatureDim);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> f =
            atom_features(graph.atoms[i], static_cast<std::size_t>(deg.out[i]),
                          static_cast<std::size_t>(deg.in[i]));
        for (std::size_t j = 0; j < kAtomFeatureDim; ++j) graph.features(i, j) = f[j];
    }
    return graph;
}

std::vector<double> atom_features(const Atom& atom, std::size_t out_degree,
                                  std::size_t in_degree) {
    std::vector<double> f(kAtomFeatureDim, 0.0);
    int slot = element_slot(atom.element);
    if (slot < 0) {
        throw Error(ErrorCode::valence_unsupported, "element outside the supported set");
    }
    f[static_cast<std::size_t>(slot)] = 1.0;
    std::size_t degree = std::min<std::size_t>(out_degree, 5);
    f[10 + degree] = 1.0;
    f[16] = atom.aromatic ? 1.0 : 0.0;
    int charge = std::clamp(atom.formal_charge, -2, 2);
    f[static_cast<std::size_t>(17 + charge + 2)] = 1.0;
    f[22] = static_cast<double>(out_degree);
    f[23] = static_cast<double>(in_degree);
    return f;
}

MolGraph scaffold_graph(const MolGraph& graph) {
    std::size_t n = graph.num_nodes();
    std::vector<bool> alive(n, true);
    std::vector<std::vector<std::size_t>> neighbors(n);
    for (const Bond& b : graph.bonds) {
        neighbors[b.a].push_back(b.b);
        neighbors[b.b].push_back(b.a);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::size_t> to_remove;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            std::size_t degree = 0;
            for (std::size_t j : neighbors[i]) {
                if (alive[j]) ++degree;
            }
            if (degree <= 1) to_remove.push_back(i);
        }
        for (std::size_t i : to_remove) {
            alive[i] = false;
            changed = true;
        }
    }

    std::vector<std::size_t> remap(n, SIZE_MAX);
    MolGraph out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        remap[i] = out.atoms.size();
        Atom atom = graph.atoms[i];
        atom.index = remap[i];
        out.atoms.push_back(atom);
    }
    for (const Bond& b : graph.bonds) {
        if (alive[b.a] && alive[b.b]) {
            out.bonds.push_back({remap[b.a], remap[b.b], b.order});
        }
    }
    std::size_t m = out.atoms.size();
    out.adjacency = Matrix(m, m);
    for (const Bond& b : out.bonds) {
        out.adjacency(b.a, b.b) = 1.0;
        out.adjacency(b.b, b.a) = 1.0;
    }
    DegreeVectors deg = degrees(out);
    out.features = Matrix(m, kAtomFeatureDim);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> f = atom_features(out.atoms[i], static_cast<std::size_t>(deg.out[i]),
                                              static_cast<std::size_t>(deg.in[i]));
        for (std::size_t j = 0; j < kAtomFeatureDim; ++j) out.features(i, j) = f[j];
    }
    return out;
}

ScaffoldKey extract_scaffold(const MolGraph& graph) {
    MolGraph core = scaffold_graph(graph);
    std::size_t n = core.num_nodes();
    if (n == 0) return ScaffoldKey{""};

    std::vector<std::vector<std::pair<std::size_t, char>>> neighbors(n);
    for (const Bond& b : core.bonds) {
        char order = bond_order_char(b.order);
        neighbors[b.a].push_back({b.b, order});
        neighbors[b.b].push_back({b.a, order});
    }

    // Iterated neighborhood refinement: colors start from the element
    // variant and absorb sorted (bond-order, neighbor-color) multisets.
    // Color strings are compressed to dense ranks every round so they stay
    // short and deterministic.
    std::vector<std::string> variant(n);
    for (std::size_t i = 0; i < n; ++i) {
        variant[i] = core.atoms[i].element + (core.atoms[i].aromatic ? "'" : "") +
                     (core.atoms[i].formal_charge != 0
                          ? std::to_string(core.atoms[i].formal_charge)
                          : "");
    }
    std::vector<std::string> color = variant;
    auto compress = [&]() {
        std::vector<std::string> sorted = color;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::string& c : color) {
            auto it = std::lower_bound(sorted.begin(), sorted.end(), c);
            c = std::to_string(it - sorted.begin());
        }
    };
    compress();
    for (std::size_t round = 0; round < n; ++round) {
        std::vector<std::string> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::string> parts;
            parts.reserve(neighbors[i].size());
            for (auto [j, order] : neighbors[i]) {
                parts.push_back(std::string(1, order) + color[j]);
            }
            std::sort(parts.begin(), parts.end());
            next[i] = color[i] + "(";
            for (const std::string& p : parts) next[i] += p + ",";
            next[i] += ")";
        }
        color = std::move(next);
        compress();
    }

    std::vector<std::string> atom_keys(n);
    for (std::size_t i = 0; i < n; ++i) atom_keys[i] = variant[i] + ":" + color[i];
    std::sort(atom_keys.begin(), atom_keys.end());
    std::vector<std::string> bond_keys;
    bond_keys.reserve(core.bonds.size());
    for (const Bond& b : core.bonds) {
        std::string lo = color[b.a], hi = color[b.b];
        if (hi < lo) std::swap(lo, hi);
        bond_keys.push_back(lo + bond_order_char(b.order) + hi);
    }
    std::sort(bond_keys.begin(), bond_keys.end());

    std::string key = "atoms{";
    for (const std::string& a : atom_keys) key += a + ";";
    key += "}bonds{";
    for (const std::string& b : bond_keys) key += b + ";";
    key += "}";
    return ScaffoldKey{key};
}

}  // namespace digmol
