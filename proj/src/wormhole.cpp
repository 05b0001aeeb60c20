#include "hgpdefect/wormhole.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hgpd {

namespace {

std::vector<std::size_t> vv_ids(const HgpCode& code, const NodeSet& rows, const NodeSet& cols) {
    std::vector<std::size_t> out;
    for (std::size_t u : rows.members)
        for (std::size_t v : cols.members) out.push_back(code.vv_qubit(u, v));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> cc_ids(const HgpCode& code, const NodeSet& rows, const NodeSet& cols) {
    std::vector<std::size_t> out;
    for (std::size_t c : rows.members)
        for (std::size_t cp : cols.members) out.push_back(code.cc_qubit(c, cp));
    std::sort(out.begin(), out.end());
    return out;
}

// Greedy GF(2) row accumulator: add() reports whether the row extended the
// span. Rows are kept in echelon form against their lowest set bit.
struct RankAccumulator {
    std::vector<BitVec> rows;
    std::vector<std::size_t> pivots;

    bool add(BitVec v) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) v ^= rows[i];
        if (v.is_zero()) return false;
        pivots.push_back(v.support().front());
        rows.push_back(std::move(v));
        return true;
    }
};

// Drop the interior coordinates from a row; everything removed is a product
// of the interior single-qubit measurements, so the stabilizer group does not
// change.
BitVec strip_interior(const BitVec& row, const std::vector<bool>& interior) {
    BitVec out = row;
    for (std::size_t q : out.support())
        if (interior[q]) out.set(q, false);
    return out;
}

void validate_wormhole_sets(const HgpCode& code, const NodeSet& S, const NodeSet& T,
                            const char* who) {
    if (S.side != Side::Var)
        throw std::invalid_argument(std::string(who) + ": S must be a variable set");
    if (T.side != Side::Check)
        throw std::invalid_argument(std::string(who) + ": T must be a check set");
    if (!S.members.empty() && S.members.back() >= code.n)
        throw std::invalid_argument(std::string(who) + ": variable index out of range");
    if (!T.members.empty() && T.members.back() >= code.m)
        throw std::invalid_argument(std::string(who) + ": check index out of range");
}

DeformedCode assemble_wormhole(const HgpCode& code, const WormholeSpec& spec) {
    DeformedCode d;
    d.base = code;
    d.deformation = "wormhole";

    d.sx_ids = spec.retained_x_ids;
    d.sx = BitMatrix(d.sx_ids.size(), code.num_qubits());
    for (std::size_t i = 0; i < d.sx_ids.size(); ++i) d.sx.set_row(i, code.hx.row(d.sx_ids[i]));

    d.sz_ids = spec.retained_z_ids;
    d.sz = BitMatrix(d.sz_ids.size(), code.num_qubits());
    for (std::size_t i = 0; i < d.sz_ids.size(); ++i) d.sz.set_row(i, code.hz.row(d.sz_ids[i]));

    d.dropped_x_ids = spec.removed_x_ids;
    d.dropped_z_ids = spec.removed_z_ids;

    d.hybrid = spec.hybrids;
    d.hybrid_ids = spec.hybrid_ids;

    for (const auto& [qx, qz] : spec.measurements) {
        SymplecticOp op(code.num_qubits());
        op.x.set(qx, true);
        op.z.set(qz, true);
        d.two_qubit.push_back(op);
    }
    d.two_qubit_links = spec.measurements;

    for (std::size_t q : spec.interior_x) d.measured.push_back({q, 'X'});
    for (std::size_t q : spec.interior_z) d.measured.push_back({q, 'Z'});
    return d;
}

}  // namespace

WormholeSpec make_wormhole(const HgpCode& code, const NodeSet& S, const NodeSet& T) {
    validate_wormhole_sets(code, S, T, "make_wormhole");

    WormholeSpec spec;
    spec.S = S;
    spec.T = T;
    spec.N = code.graph.neighborhood(S);
    spec.A = code.graph.ancestors(S);
    spec.M = code.graph.neighborhood(T);
    spec.B = code.graph.ancestors(T);

    if (!set_intersection(spec.N, T).empty() || !set_intersection(spec.M, S).empty())
        throw std::invalid_argument(
            "make_wormhole: the puncture neighborhoods overlap (N meets T or M meets S); the "
            "facing boundaries collide");

    const NodeSet n_not_a = set_difference(spec.N, spec.A);
    const NodeSet m_not_b = set_difference(spec.M, spec.B);

    spec.interior_x = vv_ids(code, spec.B, S);
    for (std::size_t q : cc_ids(code, T, spec.A)) spec.interior_x.push_back(q);
    std::sort(spec.interior_x.begin(), spec.interior_x.end());

    spec.interior_z = vv_ids(code, S, spec.B);
    for (std::size_t q : cc_ids(code, spec.A, T)) spec.interior_z.push_back(q);
    std::sort(spec.interior_z.begin(), spec.interior_z.end());

    for (std::size_t c : n_not_a.members)
        for (std::size_t cp : T.members)
            spec.measurements.emplace_back(code.cc_qubit(c, cp), code.cc_qubit(cp, c));
    for (std::size_t u : S.members)
        for (std::size_t up : m_not_b.members)
            spec.measurements.emplace_back(code.vv_qubit(u, up), code.vv_qubit(up, u));

    std::vector<bool> interior(code.num_qubits(), false);
    for (std::size_t q : spec.interior_x) interior[q] = true;
    for (std::size_t q : spec.interior_z) interior[q] = true;

    for (std::size_t v : spec.M.members) {
        for (std::size_t c : spec.N.members) {
            if (spec.B.contains(v) && spec.A.contains(c)) continue;
            SymplecticOp op(code.num_qubits());
            op.x = strip_interior(code.hx.row(code.x_stab(v, c)), interior);
            op.z = strip_interior(code.hz.row(code.z_stab(c, v)), interior);
            spec.hybrids.push_back(std::move(op));
            spec.hybrid_ids.emplace_back(code.x_stab(v, c), code.z_stab(c, v));
        }
    }

    // Ledger: X rows in S x T are frustrated by the rough interior, X rows in
    // B x A are products of the smooth interior singles; the rest of M x N
    // went into hybrids. Mirrored for Z.
    std::vector<bool> x_removed(code.num_x_stabs(), false), x_hybrid(code.num_x_stabs(), false);
    std::vector<bool> z_removed(code.num_z_stabs(), false), z_hybrid(code.num_z_stabs(), false);
    for (std::size_t u : S.members)
        for (std::size_t c : T.members) x_removed[code.x_stab(u, c)] = true;
    for (std::size_t c : T.members)
        for (std::size_t u : S.members) z_removed[code.z_stab(c, u)] = true;
    for (std::size_t v : spec.B.members)
        for (std::size_t c : spec.A.members) {
            x_removed[code.x_stab(v, c)] = true;
            z_removed[code.z_stab(c, v)] = true;
        }
    for (const auto& [xid, zid] : spec.hybrid_ids) {
        x_hybrid[xid] = true;
        z_hybrid[zid] = true;
    }
    for (std::size_t s = 0; s < code.num_x_stabs(); ++s) {
        if (x_removed[s])
            spec.removed_x_ids.push_back(s);
        else if (!x_hybrid[s])
            spec.retained_x_ids.push_back(s);
    }
    for (std::size_t s = 0; s < code.num_z_stabs(); ++s) {
        if (z_removed[s])
            spec.removed_z_ids.push_back(s);
        else if (!z_hybrid[s])
            spec.retained_z_ids.push_back(s);
    }

    if (!S.empty() && !code.graph.is_connected_subset(S))
        spec.warnings.push_back("S is not a connected variable set");
    if (!T.empty() && !code.graph.is_connected_subset(T))
        spec.warnings.push_back("T is not a connected check set");
    return spec;
}

WormholeCorrectabilityReport check_extended_correctable(const HgpCode& code, const NodeSet& S,
                                                        const NodeSet& T) {
    validate_wormhole_sets(code, S, T, "check_extended_correctable");

    WormholeCorrectabilityReport rep;
    const NodeSet N = code.graph.neighborhood(S);
    const NodeSet M = code.graph.neighborhood(T);
    rep.disjoint = set_intersection(N, T).empty() && set_intersection(M, S).empty();
    if (!rep.disjoint) return rep;

    PunctureSpec inner;
    inner.S = S;
    inner.T = T;
    inner.N = N;
    inner.A = code.graph.ancestors(S);
    inner.M = M;
    inner.B = code.graph.ancestors(T);
    rep.puncture = check_correctable(code, inner);

    // One neighborhood out: treat (M, N) as the defining sets of a puncture
    // and keep its two leading conditions.
    PunctureSpec outer;
    outer.S = M;
    outer.T = N;
    outer.N = code.graph.neighborhood(M);
    outer.A = code.graph.ancestors(M);
    outer.M = code.graph.neighborhood(N);
    outer.B = code.graph.ancestors(N);
    CorrectabilityReport outer_rep = check_correctable(code, outer);

    KernelCondition cols = outer_rep.conditions.at(0);
    cols.name = "ker h_Gamma(M)";
    KernelCondition rows = outer_rep.conditions.at(1);
    rows.name = "ker h_Gamma(N)^t";
    rep.enlarged = {cols, rows};

    rep.correctable = rep.puncture.correctable && cols.pass && rows.pass;
    return rep;
}

std::vector<std::pair<std::size_t, std::size_t>> two_qubit_measurements(const HgpCode& code,
                                                                        const WormholeSpec& spec) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const NodeSet n_not_a = set_difference(spec.N, spec.A);
    const NodeSet m_not_b = set_difference(spec.M, spec.B);
    for (std::size_t c : n_not_a.members)
        for (std::size_t cp : spec.T.members)
            out.emplace_back(code.cc_qubit(c, cp), code.cc_qubit(cp, c));
    for (std::size_t u : spec.S.members)
        for (std::size_t up : m_not_b.members)
            out.emplace_back(code.vv_qubit(u, up), code.vv_qubit(up, u));
    return out;
}

std::vector<SymplecticOp> hybrid_stabilizers(const HgpCode& code, const WormholeSpec& spec) {
    std::vector<bool> interior(code.num_qubits(), false);
    for (std::size_t q : spec.interior_x) interior[q] = true;
    for (std::size_t q : spec.interior_z) interior[q] = true;

    std::vector<SymplecticOp> out;
    for (std::size_t v : spec.M.members) {
        for (std::size_t c : spec.N.members) {
            if (spec.B.contains(v) && spec.A.contains(c)) continue;
            SymplecticOp op(code.num_qubits());
            op.x = strip_interior(code.hx.row(code.x_stab(v, c)), interior);
            op.z = strip_interior(code.hz.row(code.z_stab(c, v)), interior);
            out.push_back(std::move(op));
        }
    }
    return out;
}

DeformedCode apply_wormhole(const HgpCode& code, const NodeSet& S, const NodeSet& T, bool force) {
    WormholeCorrectabilityReport rep = check_extended_correctable(code, S, T);
    if (!rep.disjoint)
        throw VerificationError(
            "apply_wormhole: the puncture neighborhoods overlap the defining sets; the wormhole "
            "boundaries are not separated");
    if (!rep.correctable && !force)
        throw VerificationError(
            "apply_wormhole: region fails extended correctability; pass force to deform anyway");

    DeformedCode d = assemble_wormhole(code, make_wormhole(code, S, T));

    std::vector<bool> measured(code.num_qubits(), false);
    for (const auto& [q, basis] : d.measured) {
        (void)basis;
        measured[q] = true;
    }
    const std::vector<SymplecticOp> gens = d.generators_without_singles();
    for (const SymplecticOp& g : gens)
        for (std::size_t q : g.x.support())
            if (measured[q]) throw std::logic_error("apply_wormhole: generator touches the interior");
    for (const SymplecticOp& g : gens)
        for (std::size_t q : g.z.support())
            if (measured[q]) throw std::logic_error("apply_wormhole: generator touches the interior");

    const std::vector<SymplecticOp> all = d.generators();
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (!all[i].commutes_with(all[j]))
                throw std::logic_error("apply_wormhole: generators fail the commutation scan");
    return d;
}

WormholeLogicals wormhole_logical_operators(const HgpCode& code, const WormholeSpec& spec) {
    const std::size_t nq = code.num_qubits();
    WormholeLogicals out;
    out.type1.z_loops = BitMatrix(0, nq);
    out.type1.x_loops = BitMatrix(0, nq);
    out.type2.z_loops = BitMatrix(0, nq);
    out.type2.x_loops = BitMatrix(0, nq);
    if (spec.S.empty() || spec.T.empty()) return out;

    DeformedCode d = assemble_wormhole(code, spec);
    RankAccumulator group;
    for (const SymplecticOp& g : d.generators()) group.add(g.interleaved());

    std::vector<SymplecticOp> mixed = spec.hybrids;
    mixed.insert(mixed.end(), d.two_qubit.begin(), d.two_qubit.end());
    const BitMatrix witness_rows = symplectic_matrix(mixed);

    auto collect = [&](const BitMatrix& candidates, LoopPairs& family) {
        std::vector<BitVec> zs, xs;
        for (std::size_t r = 0; r < candidates.rows(); ++r) {
            BitVec z = candidates.row(r);
            if (z.is_zero()) continue;
            SymplecticOp probe(nq);
            probe.z = z;
            if (!group.add(probe.interleaved())) continue;
            zs.push_back(z);
            xs.push_back(reflect_support(code, z));
        }
        family.z_loops = BitMatrix::from_rows(zs, nq);
        family.x_loops = BitMatrix::from_rows(xs, nq);
        for (std::size_t i = 0; i < zs.size(); ++i) {
            SymplecticOp pair(nq);
            pair.x = xs[i];
            pair.z = zs[i];
            family.witnesses.push_back(witness_rows.solve_left(pair.interleaved()));
        }
    };
    collect(region_loop_z_basis(code, spec.T, spec.S, spec.B, spec.A), out.type1);
    collect(region_loop_z_basis(code, spec.N, spec.M, spec.S, spec.T), out.type2);

    if (out.type1.z_loops.rows() > 0) {
        const PunctureSpec smooth = make_puncture(code, PunctureKind::Smooth, spec.S, spec.T);
        const BitMatrix chains = puncture_logical_x_basis(code, smooth);
        // Gram-normalize the chains so conjugate i anticommutes with loop i
        // alone. Chains and type-2 loops never share a qubit (the chain runs
        // through S-columns and T-rows, the enlarged loop avoids both), so
        // the pairing stays diagonal across families.
        const BitMatrix gram = chains * out.type1.z_loops.transpose();
        const std::size_t count = out.type1.z_loops.rows();
        for (std::size_t i = 0; i < count; ++i) {
            BitVec unit(count);
            unit.set(i, true);
            const auto coeff = gram.solve_left(unit);
            if (!coeff)
                throw std::logic_error(
                    "wormhole_logical_operators: no chain conjugate pairs with a type-1 loop");
            BitVec cx(nq);
            for (std::size_t j : coeff->support()) cx ^= chains.row(j);
            SymplecticOp conj(nq);
            conj.x = cx;
            conj.z = reflect_support(code, cx);
            out.chain_conjugates.push_back(std::move(conj));
        }
    }
    return out;
}

}  // namespace hgpd
