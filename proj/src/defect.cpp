#include "hgpdefect/defect.hpp"

#include <algorithm>

namespace hgpd {

namespace {

std::vector<std::size_t> complement_of(std::size_t n, const NodeSet& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!s.contains(i)) out.push_back(i);
    return out;
}

// Scatter the columns of a local matrix onto the listed positions of a wider one.
BitMatrix embed_cols(const BitMatrix& local, const std::vector<std::size_t>& pos,
                     std::size_t width) {
    BitMatrix out(local.rows(), width);
    for (std::size_t r = 0; r < local.rows(); ++r)
        for (std::size_t j = 0; j < pos.size(); ++j)
            if (local.get(r, j)) out.set(r, pos[j], true);
    return out;
}

// Full-width (vv | cc) matrix from separate block parts.
BitMatrix widen_blocks(const BitMatrix& vv_rows, const BitMatrix& cc_rows,
                       std::size_t nn, std::size_t mm) {
    BitMatrix out(vv_rows.rows() + cc_rows.rows(), nn + mm);
    for (std::size_t r = 0; r < vv_rows.rows(); ++r)
        for (std::size_t c = 0; c < nn; ++c)
            if (vv_rows.get(r, c)) out.set(r, c, true);
    for (std::size_t r = 0; r < cc_rows.rows(); ++r)
        for (std::size_t c = 0; c < mm; ++c)
            if (cc_rows.get(r, c)) out.set(vv_rows.rows() + r, nn + c, true);
    return out;
}

// Map a full-width vector of the transposed-graph product back to this code:
// the transposed product lists its m^2 check-check pairs first (our check
// pairs) and its n^2 variable pairs second.
BitVec map_from_transpose(const HgpCode& code, const BitVec& vt) {
    std::size_t nn = code.n * code.n, mm = code.m * code.m;
    BitVec out(nn + mm);
    for (std::size_t q : vt.support())
        out.set(q < mm ? nn + q : q - mm, true);
    return out;
}

BitMatrix map_rows_from_transpose(const HgpCode& code, const BitMatrix& rows_t) {
    BitMatrix out(rows_t.rows(), code.num_qubits());
    for (std::size_t r = 0; r < rows_t.rows(); ++r)
        out.set_row(r, map_from_transpose(code, rows_t.row(r)));
    return out;
}

// Incremental GF(2) row-space builder used for the deterministic greedy
// candidate reduction.
struct RankAccumulator {
    std::vector<BitVec> rows;            // eliminated, one pivot each
    std::vector<std::size_t> pivot_cols;

    bool add(BitVec v) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivot_cols[i])) v ^= rows[i];
        if (v.is_zero()) return false;
        std::size_t pivot = v.support().front();
        rows.push_back(v);
        pivot_cols.push_back(pivot);
        return true;
    }
};

std::vector<std::size_t> vv_product(const HgpCode& code, const NodeSet& us,
                                    const NodeSet& vs) {
    std::vector<std::size_t> out;
    for (std::size_t u : us.members)
        for (std::size_t v : vs.members) out.push_back(code.vv_qubit(u, v));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> cc_product(const HgpCode& code, const NodeSet& cs,
                                    const NodeSet& cps) {
    std::vector<std::size_t> out;
    for (std::size_t c : cs.members)
        for (std::size_t cp : cps.members) out.push_back(code.cc_qubit(c, cp));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> x_stab_product(const HgpCode& code, const NodeSet& vs,
                                        const NodeSet& cs) {
    std::vector<std::size_t> out;
    for (std::size_t v : vs.members)
        for (std::size_t c : cs.members) out.push_back(code.x_stab(v, c));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> z_stab_product(const HgpCode& code, const NodeSet& cs,
                                        const NodeSet& vs) {
    std::vector<std::size_t> out;
    for (std::size_t c : cs.members)
        for (std::size_t v : vs.members) out.push_back(code.z_stab(c, v));
    std::sort(out.begin(), out.end());
    return out;
}

HgpCode transposed_code(const HgpCode& code) { return build_hgp(code.h.transpose()); }

PunctureSpec transposed_spec(const HgpCode& tcode, const PunctureSpec& spec) {
    return make_puncture(tcode, PunctureKind::Smooth,
                         NodeSet(Side::Var, spec.T.members),
                         NodeSet(Side::Check, spec.S.members));
}

}  // namespace

PunctureSpec make_puncture(const HgpCode& code, PunctureKind kind,
                           const NodeSet& S, const NodeSet& T) {
    if (S.side != Side::Var) throw std::invalid_argument("make_puncture: S must be a variable set");
    if (T.side != Side::Check) throw std::invalid_argument("make_puncture: T must be a check set");
    if (S.empty() || T.empty())
        throw std::invalid_argument("make_puncture: S and T must be nonempty");
    if (!S.members.empty() && S.members.back() >= code.n)
        throw std::invalid_argument("make_puncture: variable index out of range");
    if (!T.members.empty() && T.members.back() >= code.m)
        throw std::invalid_argument("make_puncture: check index out of range");

    PunctureSpec spec;
    spec.kind = kind;
    spec.S = S;
    spec.T = T;
    spec.N = code.graph.neighborhood(S);
    spec.A = code.graph.ancestors(S);
    spec.M = code.graph.neighborhood(T);
    spec.B = code.graph.ancestors(T);

    NodeSet MnotB = set_difference(spec.M, spec.B);
    NodeSet NnotA = set_difference(spec.N, spec.A);

    if (kind == PunctureKind::Smooth) {
        spec.interior_qubits = vv_product(code, spec.B, S);
        auto cc = cc_product(code, T, spec.A);
        spec.interior_qubits.insert(spec.interior_qubits.end(), cc.begin(), cc.end());

        spec.boundary_qubits = vv_product(code, MnotB, S);
        auto bcc = cc_product(code, T, NnotA);
        spec.boundary_qubits.insert(spec.boundary_qubits.end(), bcc.begin(), bcc.end());

        spec.boundary_stab_ids = x_stab_product(code, MnotB, spec.N);
        auto extra = x_stab_product(code, spec.M, NnotA);
        spec.boundary_stab_ids.insert(spec.boundary_stab_ids.end(), extra.begin(), extra.end());
    } else {
        spec.interior_qubits = vv_product(code, S, spec.B);
        auto cc = cc_product(code, spec.A, T);
        spec.interior_qubits.insert(spec.interior_qubits.end(), cc.begin(), cc.end());

        spec.boundary_qubits = vv_product(code, S, MnotB);
        auto bcc = cc_product(code, NnotA, T);
        spec.boundary_qubits.insert(spec.boundary_qubits.end(), bcc.begin(), bcc.end());

        spec.boundary_stab_ids = z_stab_product(code, NnotA, spec.M);
        auto extra = z_stab_product(code, spec.N, MnotB);
        spec.boundary_stab_ids.insert(spec.boundary_stab_ids.end(), extra.begin(), extra.end());
    }
    std::sort(spec.boundary_stab_ids.begin(), spec.boundary_stab_ids.end());
    spec.boundary_stab_ids.erase(
        std::unique(spec.boundary_stab_ids.begin(), spec.boundary_stab_ids.end()),
        spec.boundary_stab_ids.end());

    if (!code.graph.is_connected_subset(S))
        spec.warnings.push_back("variable set S is not connected");
    if (!code.graph.is_connected_subset(T))
        spec.warnings.push_back("check set T is not connected");
    return spec;
}

PunctureMatrices puncture_stabilizers(const HgpCode& code, const PunctureSpec& spec) {
    PunctureMatrices out;
    out.h_S = code.h.keep_cols(spec.S.members);
    out.h_T = code.h.keep_rows(spec.T.members);
    out.h_A = code.h.keep_rows(spec.A.members);
    out.h_B = code.h.keep_cols(spec.B.members);

    if (spec.kind == PunctureKind::Smooth) {
        BitMatrix one_B = BitMatrix::projector(code.n, spec.B.members);
        BitMatrix one_A = BitMatrix::projector(code.m, spec.A.members);
        BitMatrix one_S = BitMatrix::projector(code.n, spec.S.members);
        BitMatrix one_T = BitMatrix::projector(code.m, spec.T.members);
        out.hx_prime = one_B.kron(out.h_S).hconcat(out.h_T.transpose().kron(one_A));
        out.hz_prime = out.h_T.kron(one_S).hconcat(one_T.kron(out.h_S.transpose()));
    } else {
        // Rough puncture: run the smooth construction on the transposed graph
        // with S and T swapping roles, then map the X'/Z' rows back. The
        // transposed product's Z stabilizers are indexed exactly like our X
        // stabilizers and vice versa, so only the qubit blocks need mapping.
        HgpCode tcode = transposed_code(code);
        PunctureSpec tspec = transposed_spec(tcode, spec);
        PunctureMatrices tmat = puncture_stabilizers(tcode, tspec);
        out.hx_prime = map_rows_from_transpose(code, tmat.hz_prime);
        out.hz_prime = map_rows_from_transpose(code, tmat.hx_prime);
    }
    return out;
}

CorrectabilityReport check_correctable(const HgpCode& code, const PunctureSpec& spec) {
    CorrectabilityReport report;
    std::vector<std::size_t> all_rows(code.m), all_cols(code.n);
    for (std::size_t i = 0; i < code.m; ++i) all_rows[i] = i;
    for (std::size_t i = 0; i < code.n; ++i) all_cols[i] = i;

    // Words supported on the given variables that satisfy every check.  The
    // checks outside the variables' neighborhood see nothing of them, so this
    // is the kernel of the column restriction; for the whole variable set it
    // is the kernel of h itself.
    auto erased_words = [&](const std::string& name, const NodeSet& vars, bool primary) {
        BitMatrix sub = code.h.submatrix(all_rows, vars.members);
        KernelCondition c;
        c.name = name;
        c.primary = primary;
        c.dim = vars.size() - sub.rank();
        c.pass = c.dim == 0;
        report.conditions.push_back(c);
    };
    // Dependencies among the given rows alone.
    auto dependent_rows = [&](const std::string& name, const NodeSet& checks, bool primary) {
        BitMatrix sub = code.h.submatrix(checks.members, all_cols);
        KernelCondition c;
        c.name = name;
        c.primary = primary;
        c.dim = checks.size() - sub.rank();
        c.pass = c.dim == 0;
        report.conditions.push_back(c);
    };
    // Row relations of the full matrix that are visible on the given checks:
    // combinations y with y*h = 0 whose restriction to the checks is nonzero.
    // Their count is rank(h with the checks removed) + |checks| - rank(h).
    // This is stronger than independence of the rows themselves; a relation
    // that stretches across the cut would let an interior stabilizer double as
    // a combination of exterior ones and spoil the loop/chain accounting.
    auto visible_row_relations = [&](const std::string& name, const NodeSet& checks,
                                     bool primary) {
        std::vector<std::size_t> rest;
        for (std::size_t r = 0; r < code.m; ++r)
            if (!checks.contains(r)) rest.push_back(r);
        BitMatrix sub = code.h.submatrix(rest, all_cols);
        KernelCondition c;
        c.name = name;
        c.primary = primary;
        c.dim = sub.rank() + checks.size() - code.h.rank();
        c.pass = c.dim == 0;
        report.conditions.push_back(c);
    };

    erased_words("ker h_N", spec.S, true);
    visible_row_relations("ker h_M^t", spec.T, true);
    erased_words("ker h_T", spec.B, true);
    dependent_rows("ker h_S^t", spec.A, true);
    erased_words("ker h_S", spec.S, false);
    dependent_rows("ker h_T^t", spec.T, false);
    dependent_rows("ker h_A^t", spec.A, false);
    erased_words("ker h_B", spec.B, false);

    report.correctable = true;
    report.all_pass = true;
    for (const auto& c : report.conditions) {
        if (c.primary && !c.pass) report.correctable = false;
        if (!c.pass) report.all_pass = false;
    }
    return report;
}

std::vector<SymplecticOp> DeformedCode::generators_without_singles() const {
    std::vector<SymplecticOp> gens;
    std::size_t nq = num_qubits();
    for (std::size_t r = 0; r < sx.rows(); ++r) {
        SymplecticOp op(nq);
        op.x = sx.row(r);
        gens.push_back(op);
    }
    for (std::size_t r = 0; r < sz.rows(); ++r) {
        SymplecticOp op(nq);
        op.z = sz.row(r);
        gens.push_back(op);
    }
    gens.insert(gens.end(), hybrid.begin(), hybrid.end());
    gens.insert(gens.end(), two_qubit.begin(), two_qubit.end());
    return gens;
}

std::vector<SymplecticOp> DeformedCode::generators() const {
    std::vector<SymplecticOp> gens = generators_without_singles();
    std::size_t nq = num_qubits();
    for (const auto& mq : measured) {
        gens.push_back(mq.basis == 'X' ? SymplecticOp::x_op(nq, {mq.qubit})
                                       : SymplecticOp::z_op(nq, {mq.qubit}));
    }
    return gens;
}

std::size_t DeformedCode::logical_count() const {
    return num_qubits() - symplectic_matrix(generators()).rank();
}

DeformedCode apply_puncture(const HgpCode& code, const PunctureSpec& spec, bool force) {
    CorrectabilityReport report = check_correctable(code, spec);
    if (!report.correctable && !force)
        throw VerificationError("puncture region is not correctable (use force to override)");

    PunctureMatrices mats = puncture_stabilizers(code, spec);
    BitMatrix sx_full = code.hx + mats.hx_prime;
    BitMatrix sz_full = code.hz + mats.hz_prime;

    DeformedCode d;
    d.base = code;
    d.deformation = spec.kind == PunctureKind::Smooth ? "smooth-puncture" : "rough-puncture";

    for (std::size_t r = 0; r < sx_full.rows(); ++r) {
        if (sx_full.row_is_zero(r)) { d.dropped_x_ids.push_back(r); continue; }
        d.sx_ids.push_back(r);
    }
    d.sx = BitMatrix(d.sx_ids.size(), code.num_qubits());
    for (std::size_t i = 0; i < d.sx_ids.size(); ++i) d.sx.set_row(i, sx_full.row(d.sx_ids[i]));

    for (std::size_t r = 0; r < sz_full.rows(); ++r) {
        if (sz_full.row_is_zero(r)) { d.dropped_z_ids.push_back(r); continue; }
        d.sz_ids.push_back(r);
    }
    d.sz = BitMatrix(d.sz_ids.size(), code.num_qubits());
    for (std::size_t i = 0; i < d.sz_ids.size(); ++i) d.sz.set_row(i, sz_full.row(d.sz_ids[i]));

    char basis = spec.kind == PunctureKind::Smooth ? 'X' : 'Z';
    for (std::size_t q : spec.interior_qubits) d.measured.push_back({q, basis});

    // Internal consistency: the surviving rows must form a commuting set that
    // avoids the measured interior entirely.
    if (!(d.sx * d.sz.transpose()).is_zero())
        throw std::logic_error("apply_puncture: deformed stabilizers do not commute");
    for (std::size_t q : spec.interior_qubits) {
        for (std::size_t r = 0; r < d.sx.rows(); ++r)
            if (d.sx.get(r, q)) throw std::logic_error("apply_puncture: live X row touches interior");
        for (std::size_t r = 0; r < d.sz.rows(); ++r)
            if (d.sz.get(r, q)) throw std::logic_error("apply_puncture: live Z row touches interior");
    }
    // Each interior measurement anticommutes with at least one of the base
    // stabilizers that cancelled out: the defect genuinely removes them.
    const BitMatrix& opposite = spec.kind == PunctureKind::Smooth ? code.hz : code.hx;
    const std::vector<std::size_t>& dropped =
        spec.kind == PunctureKind::Smooth ? d.dropped_z_ids : d.dropped_x_ids;
    for (std::size_t q : spec.interior_qubits) {
        bool hit = false;
        for (std::size_t id : dropped) hit |= opposite.get(id, q);
        if (!hit)
            throw std::logic_error("apply_puncture: interior measurement is undetected by dropped rows");
    }
    return d;
}

BitMatrix region_loop_z_basis(const HgpCode& code, const NodeSet& check_set,
                              const NodeSet& var_set, const NodeSet& col_constraint,
                              const NodeSet& row_constraint) {
    const BitMatrix& h = code.h;
    // Coefficients y on the check set whose combination (y h) vanishes on the
    // constrained columns.
    BitMatrix y_local =
        h.submatrix(check_set.members, col_constraint.members).transpose().kernel_basis();
    // Coefficients x on the variable set orthogonal to the constrained rows.
    BitMatrix x_local = h.submatrix(row_constraint.members, var_set.members).kernel_basis();

    BitMatrix y_full = embed_cols(y_local, check_set.members, code.m);
    BitMatrix x_full = embed_cols(x_local, var_set.members, code.n);

    BitMatrix bridge =
        h.keep_rows(check_set.members).kron(BitMatrix::projector(code.n, var_set.members))
            .hconcat(BitMatrix::projector(code.m, check_set.members)
                         .kron(h.keep_cols(var_set.members).transpose()));
    return y_full.kron(x_full) * bridge;
}

namespace {

// Chain-type X logicals of a smooth puncture: kernel (x) quotient candidates
// on both blocks, reduced modulo the deformed X stabilizers and the freedom
// allowed by the modified Z checks.
BitMatrix smooth_chain_x_basis(const HgpCode& code, const PunctureSpec& spec,
                               const PunctureMatrices& mats) {
    const BitMatrix& h = code.h;
    std::vector<std::size_t> Tc = complement_of(code.m, spec.T);
    std::vector<std::size_t> Bc = complement_of(code.n, spec.B);
    std::vector<std::size_t> Ac = complement_of(code.m, spec.A);
    std::vector<std::size_t> Sc = complement_of(code.n, spec.S);

    // Variable-block candidates: strings f that satisfy the untouched checks,
    // tensored with representatives q of the freedom left on S.
    BitMatrix f_local = h.submatrix(Tc, Bc).kernel_basis();
    BitMatrix f_full = embed_cols(f_local, Bc, code.n);
    BitMatrix q_local = h.submatrix(spec.A.members, spec.S.members).quotient_basis();
    BitMatrix q_full = embed_cols(q_local, spec.S.members, code.n);
    BitMatrix vv_cand = f_full.kron(q_full);

    // Check-block candidates: representatives r on T modulo the columns of B,
    // tensored with transpose-side strings g satisfying the untouched columns.
    BitMatrix r_local = h.submatrix(spec.T.members, spec.B.members).transpose().quotient_basis();
    BitMatrix r_full = embed_cols(r_local, spec.T.members, code.m);
    BitMatrix g_local = h.submatrix(Ac, Sc).transpose().kernel_basis();
    BitMatrix g_full = embed_cols(g_local, Ac, code.m);
    BitMatrix cc_cand = r_full.kron(g_full);

    BitMatrix candidates =
        widen_blocks(vv_cand, cc_cand, code.n * code.n, code.m * code.m);

    // Freedom group: X-type vectors commuting with the partially supported
    // Z checks (h_M (x) 1_S | 1_T (x) h_N^t) on top of the original ones.
    BitMatrix o_z = h.keep_cols(spec.M.members)
                        .kron(BitMatrix::projector(code.n, spec.S.members))
                        .hconcat(BitMatrix::projector(code.m, spec.T.members)
                                     .kron(h.keep_rows(spec.N.members).transpose()));
    BitMatrix omega = code.hz.stack(o_z).kernel_basis();

    // Greedy reduction: seed with the deformed X stabilizers and the freedom
    // group, then keep candidates (in lexicographic order) that still extend
    // the span.
    BitMatrix sx_full = code.hx + mats.hx_prime;
    RankAccumulator acc;
    for (std::size_t r = 0; r < sx_full.rows(); ++r) acc.add(sx_full.row(r));
    for (std::size_t r = 0; r < omega.rows(); ++r) acc.add(omega.row(r));

    std::vector<BitVec> rows;
    for (std::size_t r = 0; r < candidates.rows(); ++r) rows.push_back(candidates.row(r));
    std::sort(rows.begin(), rows.end(),
              [](const BitVec& a, const BitVec& b) { return a.lex_less(b); });

    std::vector<BitVec> kept;
    for (const BitVec& cand : rows)
        if (acc.add(cand)) kept.push_back(cand);
    return BitMatrix::from_rows(kept, code.num_qubits());
}

}  // namespace

BitMatrix puncture_logical_z_basis(const HgpCode& code, const PunctureSpec& spec) {
    if (spec.kind == PunctureKind::Smooth)
        return region_loop_z_basis(code, spec.T, spec.S, spec.B, spec.A);
    // Rough puncture: the Z-type logicals are the transposed-graph chains.
    HgpCode tcode = transposed_code(code);
    PunctureSpec tspec = transposed_spec(tcode, spec);
    PunctureMatrices tmats = puncture_stabilizers(tcode, tspec);
    return map_rows_from_transpose(code, smooth_chain_x_basis(tcode, tspec, tmats));
}

BitMatrix puncture_logical_x_basis(const HgpCode& code, const PunctureSpec& spec) {
    if (spec.kind == PunctureKind::Smooth)
        return smooth_chain_x_basis(code, spec, puncture_stabilizers(code, spec));
    // Rough puncture: the X-type logicals are the transposed-graph loops.
    HgpCode tcode = transposed_code(code);
    PunctureSpec tspec = transposed_spec(tcode, spec);
    return map_rows_from_transpose(
        code, region_loop_z_basis(tcode, tspec.T, tspec.S, tspec.B, tspec.A));
}

BitVec reflect_support(const HgpCode& code, const BitVec& v) {
    BitVec out(code.num_qubits());
    std::size_t nn = code.n * code.n;
    for (std::size_t q : v.support()) {
        if (q < nn) {
            std::size_t u = q / code.n, w = q % code.n;
            out.set(w * code.n + u, true);
        } else {
            std::size_t c = (q - nn) / code.m, cp = (q - nn) % code.m;
            out.set(nn + cp * code.m + c, true);
        }
    }
    return out;
}

}  // namespace hgpd
