#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hgpdefect/bits.hpp"
#include "hgpdefect/factor_graph.hpp"
#include "hgpdefect/hgp.hpp"

// Puncture defects on a hypergraph product code. A puncture is specified by a
// variable set S and a check set T of the classical factor graph; the induced
// sets are N (checks touching S), A (checks entirely inside S), M (variables
// touching T) and B (variables entirely inside T). A smooth puncture measures
// out the interior qubits B x S and T x A in the X basis and replaces the
// stabilizers there; a rough puncture is the same construction on the
// transposed factor graph and measures S x B and A x T in the Z basis.

namespace hgpd {

// Raised when a requested deformation fails its verification gate (for
// example an uncorrectable puncture region without the force override).
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PunctureKind { Smooth, Rough };

struct PunctureSpec {
    PunctureKind kind = PunctureKind::Smooth;
    NodeSet S;  // variables
    NodeSet T;  // checks
    NodeSet N;  // neighborhood of S (checks)
    NodeSet A;  // ancestors of S (checks)
    NodeSet M;  // neighborhood of T (variables)
    NodeSet B;  // ancestors of T (variables)
    std::vector<std::size_t> interior_qubits;    // measured out
    std::vector<std::size_t> boundary_qubits;    // kept, but on the new boundary
    std::vector<std::size_t> boundary_stab_ids;  // X ids (smooth) / Z ids (rough)
    std::vector<std::string> warnings;
};

PunctureSpec make_puncture(const HgpCode& code, PunctureKind kind,
                           const NodeSet& S, const NodeSet& T);

struct PunctureMatrices {
    BitMatrix hx_prime;  // full width, one row per X stabilizer index
    BitMatrix hz_prime;  // full width, one row per Z stabilizer index
    BitMatrix h_S, h_T, h_A, h_B;  // projector-restricted forms of h (shape m x n kept)
};

PunctureMatrices puncture_stabilizers(const HgpCode& code, const PunctureSpec& spec);

// One linear-independence condition on a restricted block of h. For a check
// set the named kernel lives on the rows (erasing those checks must lose no
// constraints); for a variable set it lives on the columns (erasing those
// bits must lose no codewords). dim == 0 is a pass.
struct KernelCondition {
    std::string name;
    bool primary = false;  // the four defining conditions vs. their implied companions
    std::size_t dim = 0;
    bool pass = false;
};

struct CorrectabilityReport {
    std::vector<KernelCondition> conditions;
    bool correctable = false;  // all primary conditions pass
    bool all_pass = false;     // including the implied ones (sanity: follows from primary)
};

CorrectabilityReport check_correctable(const HgpCode& code, const PunctureSpec& spec);

// A code after a defect has been cut into it. Stabilizer rows keep their
// original index via sx_ids/sz_ids; rows that cancelled to zero are dropped
// and logged. Wormholes additionally carry hybrid generators (X and Z halves
// from mirrored stabilizer pairs) and two-qubit X(x)Z link measurements.
struct DeformedCode {
    HgpCode base;
    std::string deformation;  // "smooth-puncture", "rough-puncture", "wormhole"

    BitMatrix sx, sz;  // live rows only, full width
    std::vector<std::size_t> sx_ids, sz_ids;
    std::vector<std::size_t> dropped_x_ids, dropped_z_ids;

    struct Measured {
        std::size_t qubit = 0;
        char basis = 'X';
    };
    std::vector<Measured> measured;

    std::vector<SymplecticOp> hybrid;
    std::vector<std::pair<std::size_t, std::size_t>> hybrid_ids;  // (x stab id, z stab id)
    std::vector<SymplecticOp> two_qubit;
    std::vector<std::pair<std::size_t, std::size_t>> two_qubit_links;  // (X qubit, Z qubit)

    std::size_t num_qubits() const { return base.num_qubits(); }
    std::size_t num_live_qubits() const { return num_qubits() - measured.size(); }

    // Every generator of the deformed stabilizer group: live rows, hybrids,
    // two-qubit links and the measured singles.
    std::vector<SymplecticOp> generators() const;
    std::vector<SymplecticOp> generators_without_singles() const;

    // n - rank(generators): the logical count of the deformed code.
    std::size_t logical_count() const;
};

// Verify correctability (unless force), build the modified stabilizers and
// assemble the deformed code. Throws VerificationError when the region is
// not correctable and force is false.
DeformedCode apply_puncture(const HgpCode& code, const PunctureSpec& spec, bool force = false);

// Z-type logical operators created by the defect. For a smooth puncture these
// are the loops encircling the hole: rows (y (x) x) * hz' with y supported on
// T, (y h) vanishing on B, and x supported on S, orthogonal to the rows in A.
// For a rough puncture the Z logicals are the chain type obtained through the
// transposed-graph construction.
BitMatrix puncture_logical_z_basis(const HgpCode& code, const PunctureSpec& spec);

// X-type partners: chains for a smooth puncture (kernel (x) quotient
// candidates reduced modulo the deformed stabilizers and the commutant
// freedom), loops for a rough one.
BitMatrix puncture_logical_x_basis(const HgpCode& code, const PunctureSpec& spec);

// Loop construction shared by punctures and wormholes: coefficients y on
// check_set with (y h) vanishing on the columns in col_constraint, x on
// var_set orthogonal to the rows in row_constraint, pushed through the bridge
// (h_check_set (x) 1_var_set | 1_check_set (x) h_var_set^t).
BitMatrix region_loop_z_basis(const HgpCode& code, const NodeSet& check_set,
                              const NodeSet& var_set, const NodeSet& col_constraint,
                              const NodeSet& row_constraint);

// Mirror map across the main diagonal of both qubit blocks:
// (u,v) -> (v,u) and (c,c') -> (c',c).
BitVec reflect_support(const HgpCode& code, const BitVec& v);

}  // namespace hgpd
