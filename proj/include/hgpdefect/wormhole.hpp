#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgpdefect/bits.hpp"
#include "hgpdefect/defect.hpp"
#include "hgpdefect/factor_graph.hpp"
#include "hgpdefect/hgp.hpp"

// Wormhole defects: a smooth puncture at T x S and a rough puncture at S x T,
// joined by two-qubit X(x)Z measurements along their facing boundaries. The
// stabilizers frustrated by those measurements pair up into hybrid generators
// acting as X around one puncture and Z around the other, which breaks the
// CSS structure locally while keeping every generator weight bounded by the
// sum of one X row and one Z row of the base code.

namespace hgpd {

struct WormholeSpec {
    NodeSet S, T;  // variable / check sets shared by the two punctures
    NodeSet N, A;  // neighborhood and ancestors of S (checks)
    NodeSet M, B;  // neighborhood and ancestors of T (variables)

    std::vector<std::size_t> interior_x;  // smooth interior B x S u T x A, measured in X
    std::vector<std::size_t> interior_z;  // rough interior S x B u A x T, measured in Z

    // Boundary schedule: (X qubit, Z qubit) per measured pair. CC pairs
    // (c,c'),(c',c) for c in N\A, c' in T come first, then VV pairs
    // (u,u'),(u',u) for u in S, u' in M\B.
    std::vector<std::pair<std::size_t, std::size_t>> measurements;

    // One hybrid per (v,c) in (M x N) \ (B x A), in X-stabilizer id order:
    // X half from stabilizer (v,c), Z half from stabilizer (c,v), interior
    // support removed from both (the cut parts are products of the interior
    // singles, so the group is unchanged).
    std::vector<SymplecticOp> hybrids;
    std::vector<std::pair<std::size_t, std::size_t>> hybrid_ids;  // (x id, z id)

    std::vector<std::size_t> retained_x_ids, retained_z_ids;
    // Removed without a hybrid replacement: frustrated inside the opposite
    // puncture (S x T / T x S) or fully absorbed by the interior singles
    // (B x A / A x B).
    std::vector<std::size_t> removed_x_ids, removed_z_ids;

    std::vector<std::string> warnings;
};

// Build the spec. Empty S or T yields an identity deformation. Throws
// std::invalid_argument when a neighborhood collides with the opposite
// defining set (N meets T or M meets S): the facing boundaries would overlap
// and the measurement schedule is not well formed.
WormholeSpec make_wormhole(const HgpCode& code, const NodeSet& S, const NodeSet& T);

struct WormholeCorrectabilityReport {
    // N and T disjoint, M and S disjoint. Nothing else is evaluated when this
    // fails; the kernel conditions below stay empty.
    bool disjoint = false;
    CorrectabilityReport puncture;          // the puncture conditions for (S,T)
    std::vector<KernelCondition> enlarged;  // same leading tests one neighborhood out
    bool correctable = false;
};

// The puncture conditions for (S,T) plus the two leading conditions of the
// enlarged puncture (M,N): erasing the boundary stabilizers into hybrids must
// keep the one-size-larger region clean as well.
WormholeCorrectabilityReport check_extended_correctable(const HgpCode& code, const NodeSet& S,
                                                        const NodeSet& T);

// Recompute the boundary measurement schedule / hybrid list of a spec.
std::vector<std::pair<std::size_t, std::size_t>> two_qubit_measurements(
    const HgpCode& code, const WormholeSpec& spec);
std::vector<SymplecticOp> hybrid_stabilizers(const HgpCode& code, const WormholeSpec& spec);

// Verify extended correctability (unless force), then assemble the deformed
// code: retained pure rows, hybrids, two-qubit measurements and the interior
// singles. Throws VerificationError when the gate fails (always for a
// boundary overlap, which force cannot repair) and std::logic_error if the
// assembled generators fail their pairwise commutation scan.
DeformedCode apply_wormhole(const HgpCode& code, const NodeSet& S, const NodeSet& T,
                            bool force = false);

// A family of loop logicals: row i of z_loops is a Z loop around one
// puncture, row i of x_loops the mirrored X loop around the other, and
// witnesses[i] the coefficients over [hybrids ; two-qubit rows] whose sum
// maps one representation to the other (x_loops[i] | z_loops[i]).
struct LoopPairs {
    BitMatrix z_loops, x_loops;
    std::vector<std::optional<BitVec>> witnesses;
};

struct WormholeLogicals {
    LoopPairs type1;  // around the defining punctures T x S / S x T
    LoopPairs type2;  // one neighborhood out, around N x M / M x N
    // chain_conjugates[i] is the X-chain/Z-chain product paired with type1
    // loop i: it anticommutes with exactly that loop and commutes with every
    // generator and every other loop.
    std::vector<SymplecticOp> chain_conjugates;
};

// Loop rows are reduced against the full generator group (type2 also against
// type1), so the row counts are the number of independent logical classes the
// closed forms contribute.
WormholeLogicals wormhole_logical_operators(const HgpCode& code, const WormholeSpec& spec);

}  // namespace hgpd
