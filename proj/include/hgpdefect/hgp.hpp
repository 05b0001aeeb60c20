#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hgpdefect/bits.hpp"
#include "hgpdefect/factor_graph.hpp"

// Hypergraph product of a classical parity-check matrix h (m x n) with
// itself. Qubits come in two blocks: n^2 variable-variable qubits (u,v)
// followed by m^2 check-check qubits (c,c'). X stabilizers are indexed by
// (variable, check) pairs, Z stabilizers by (check, variable) pairs.

namespace hgpd {

struct HgpCode {
    FactorGraph graph;   // the classical factor graph
    BitMatrix h;         // m x n parity-check matrix
    std::size_t n = 0;   // variables
    std::size_t m = 0;   // checks
    BitMatrix hx;        // (n*m) x (n^2 + m^2)
    BitMatrix hz;        // (m*n) x (n^2 + m^2)

    std::size_t num_qubits() const { return n * n + m * m; }
    std::size_t num_x_stabs() const { return n * m; }
    std::size_t num_z_stabs() const { return m * n; }

    // Qubit indexing.
    std::size_t vv_qubit(std::size_t u, std::size_t v) const { return u * n + v; }
    std::size_t cc_qubit(std::size_t c, std::size_t cp) const { return n * n + c * m + cp; }
    bool is_vv(std::size_t q) const { return q < n * n; }
    std::pair<std::size_t, std::size_t> qubit_coords(std::size_t q) const;

    // Stabilizer indexing.
    std::size_t x_stab(std::size_t v, std::size_t c) const { return v * m + c; }
    std::size_t z_stab(std::size_t c, std::size_t v) const { return c * n + v; }
    std::pair<std::size_t, std::size_t> x_stab_coords(std::size_t s) const { return {s / m, s % m}; }
    std::pair<std::size_t, std::size_t> z_stab_coords(std::size_t s) const { return {s / n, s % n}; }
};

// Build the product code and verify hx hz^t = 0 symbolically.
HgpCode build_hgp(const BitMatrix& h);
HgpCode build_hgp(const FactorGraph& g);

// Logical operator bases inherited from the classical code: X logicals are
// (ker h (x) complement-of-rowspace(h) | 0) and (0 | complement(h^t) (x) ker h^t),
// Z logicals the mirror image. Rows are full-width (n^2 + m^2) vectors.
BitMatrix embedded_logical_x_basis(const HgpCode& code);
BitMatrix embedded_logical_z_basis(const HgpCode& code);

std::size_t logical_qubit_count(const HgpCode& code);

struct DistanceResult {
    std::optional<std::size_t> distance;  // empty when k = 0 or beyond budget
    std::size_t budget = 0;
    bool exhausted_budget = false;        // true: no logical found up to the budget
};

// Bounded-weight search for the minimum weight of a nontrivial logical
// operator: enumerate pure-X and pure-Z supports of weight <= budget, keep
// vectors in ker(opposite check matrix) that avoid the same-type stabilizer
// row space. For CSS codes the minimum over the two pure types is the code
// distance.
DistanceResult code_distance(const HgpCode& code, std::size_t budget);

struct CodeParameters {
    std::size_t num_qubits = 0;
    std::size_t k = 0;
    DistanceResult distance;
};

CodeParameters code_parameters(const HgpCode& code, std::size_t distance_budget);

}  // namespace hgpd
