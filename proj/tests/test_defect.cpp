#include <doctest.h>

#include <random>

#include "hgpdefect/defect.hpp"

using namespace hgpd;

namespace {

BitMatrix rep_chain(std::size_t n) {
    BitMatrix h(n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    return h;
}

// The walkthrough region on the 5-bit chain: two middle variables and the two
// checks between them.
struct Fixture {
    HgpCode code = build_hgp(rep_chain(5));
    NodeSet S{Side::Var, {2, 3}};
    NodeSet T{Side::Check, {1, 2}};
};

BitMatrix random_sparse(std::mt19937& rng, std::size_t m, std::size_t n,
                        std::size_t max_row_weight) {
    while (true) {
        BitMatrix h(m, n);
        for (std::size_t r = 0; r < m; ++r) {
            std::size_t w = 1 + rng() % max_row_weight;
            for (std::size_t k = 0; k < w; ++k) h.set(r, rng() % n, true);
        }
        bool ok = true;
        for (std::size_t c = 0; c < n && ok; ++c) {
            bool hit = false;
            for (std::size_t r = 0; r < m; ++r) hit |= h.get(r, c);
            ok = hit;
        }
        for (std::size_t r = 0; r < m && ok; ++r) ok = !h.row_is_zero(r);
        if (ok) return h;
    }
}

// Random nonempty contiguous-ish subset.
NodeSet random_subset(std::mt19937& rng, Side side, std::size_t n, std::size_t max_size) {
    std::size_t want = 1 + rng() % max_size;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < want; ++i) members.push_back(rng() % n);
    return NodeSet(side, members);
}

}  // namespace

TEST_CASE("induced sets of the walkthrough region") {
    Fixture fx;
    PunctureSpec spec = make_puncture(fx.code, PunctureKind::Smooth, fx.S, fx.T);
    CHECK(spec.N.members == std::vector<std::size_t>{1, 2, 3});
    CHECK(spec.A.members == std::vector<std::size_t>{2});
    CHECK(spec.M.members == std::vector<std::size_t>{1, 2, 3});
    CHECK(spec.B.members == std::vector<std::size_t>{2});
    CHECK(spec.warnings.empty());

    PunctureMatrices mats = puncture_stabilizers(fx.code, spec);
    CHECK(mats.h_T == BitMatrix::from_dense({{0, 0, 0, 0, 0},
                                             {0, 1, 1, 0, 0},
                                             {0, 0, 1, 1, 0},
                                             {0, 0, 0, 0, 0}}));
    CHECK(mats.h_S == BitMatrix::from_dense({{0, 0, 0, 0, 0},
                                             {0, 0, 1, 0, 0},
                                             {0, 0, 1, 1, 0},
                                             {0, 0, 0, 1, 0}}));
}

TEST_CASE("puncture input validation") {
    Fixture fx;
    CHECK_THROWS_AS(make_puncture(fx.code, PunctureKind::Smooth,
                                  NodeSet(Side::Check, {1}), fx.T),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_puncture(fx.code, PunctureKind::Smooth, fx.S,
                                  NodeSet(Side::Check, {})),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_puncture(fx.code, PunctureKind::Smooth,
                                  NodeSet(Side::Var, {7}), fx.T),
                    std::invalid_argument);
    // A disconnected S is allowed but flagged.
    PunctureSpec spec = make_puncture(fx.code, PunctureKind::Smooth,
                                      NodeSet(Side::Var, {0, 4}), fx.T);
    REQUIRE(spec.warnings.size() == 1);
}

TEST_CASE("correctability of the walkthrough region and of the full variable set") {
    Fixture fx;
    PunctureSpec good = make_puncture(fx.code, PunctureKind::Smooth, fx.S, fx.T);
    CorrectabilityReport rep = check_correctable(fx.code, good);
    CHECK(rep.correctable);
    CHECK(rep.all_pass);
    CHECK(rep.conditions.size() == 8);
    for (const auto& c : rep.conditions) CHECK(c.dim == 0);

    // Taking S to be every variable erases a full codeword; the neighborhood
    // condition on S degenerates to the kernel of h itself and catches it.
    PunctureSpec bad = make_puncture(fx.code, PunctureKind::Smooth,
                                     NodeSet(Side::Var, {0, 1, 2, 3, 4}), fx.T);
    CorrectabilityReport brep = check_correctable(fx.code, bad);
    CHECK(!brep.correctable);
    for (const auto& c : brep.conditions)
        if (c.name == "ker h_N") {
            CHECK(!c.pass);
            CHECK(c.dim == 1);  // one codeword in the 5-bit repetition code
        }
}

TEST_CASE("primary conditions imply the companion conditions") {
    std::mt19937 rng(77);
    int correctable_seen = 0;
    for (int t = 0; t < 200; ++t) {
        BitMatrix h = random_sparse(rng, 3 + rng() % 5, 4 + rng() % 6, 3);
        HgpCode code = build_hgp(h);
        NodeSet S = random_subset(rng, Side::Var, code.n, 3);
        NodeSet T = random_subset(rng, Side::Check, code.m, 3);
        PunctureSpec spec = make_puncture(code, PunctureKind::Smooth, S, T);
        CorrectabilityReport rep = check_correctable(code, spec);
        if (!rep.correctable) continue;
        ++correctable_seen;
        CHECK(rep.all_pass);
    }
    CHECK(correctable_seen > 20);
}

TEST_CASE("smooth puncture on the walkthrough region") {
    Fixture fx;
    PunctureSpec spec = make_puncture(fx.code, PunctureKind::Smooth, fx.S, fx.T);
    DeformedCode d = apply_puncture(fx.code, spec);

    // Interior: B x S variable pairs and T x A check pairs.
    std::vector<std::size_t> interior = {
        fx.code.vv_qubit(2, 2), fx.code.vv_qubit(2, 3),
        fx.code.cc_qubit(1, 2), fx.code.cc_qubit(2, 2)};
    std::sort(interior.begin(), interior.end());
    CHECK(spec.interior_qubits == interior);
    CHECK(d.measured.size() == 4);
    for (const auto& mq : d.measured) CHECK(mq.basis == 'X');
    CHECK(d.num_live_qubits() == 37);

    // Z rows over T x S cancel exactly; the X rows over B x A vanish.
    std::vector<std::size_t> gone_z = {
        fx.code.z_stab(1, 2), fx.code.z_stab(1, 3),
        fx.code.z_stab(2, 2), fx.code.z_stab(2, 3)};
    std::sort(gone_z.begin(), gone_z.end());
    CHECK(d.dropped_z_ids == gone_z);
    CHECK(d.dropped_x_ids == std::vector<std::size_t>{fx.code.x_stab(2, 2)});

    // Surviving Z rows are the original rows, untouched.
    for (std::size_t i = 0; i < d.sz_ids.size(); ++i)
        CHECK(d.sz.row(i) == fx.code.hz.row(d.sz_ids[i]));

    // Rank bookkeeping: 19 X + 16 Z + 4 singles on 41 qubits leaves 2 logicals.
    CHECK(d.sx.rank() == 19);
    CHECK(d.sz.rank() == 16);
    CHECK(d.logical_count() == 2);
}

TEST_CASE("loop operators of the smooth walkthrough puncture") {
    Fixture fx;
    PunctureSpec spec = make_puncture(fx.code, PunctureKind::Smooth, fx.S, fx.T);
    BitMatrix loops = puncture_logical_z_basis(fx.code, spec);
    REQUIRE(loops.rows() == 1);

    std::vector<std::size_t> expect = {
        fx.code.vv_qubit(1, 2), fx.code.vv_qubit(1, 3),
        fx.code.vv_qubit(3, 2), fx.code.vv_qubit(3, 3),
        fx.code.cc_qubit(1, 1), fx.code.cc_qubit(1, 3),
        fx.code.cc_qubit(2, 1), fx.code.cc_qubit(2, 3)};
    std::sort(expect.begin(), expect.end());
    CHECK(loops.row(0).support() == expect);

    // The loop equals the sum of the four cancelled Z stabilizer rows: it was
    // a product of stabilizers before the defect and becomes logical after.
    BitVec sum(fx.code.num_qubits());
    for (std::size_t id : {fx.code.z_stab(1, 2), fx.code.z_stab(1, 3),
                           fx.code.z_stab(2, 2), fx.code.z_stab(2, 3)})
        sum ^= fx.code.hz.row(id);
    CHECK(loops.row(0) == sum);

    DeformedCode d = apply_puncture(fx.code, spec);
    // Independent of the surviving Z rows, and invisible to the X side.
    CHECK(d.sz.stack(loops).rank() == d.sz.rank() + 1);
    CHECK((d.sx * loops.transpose()).is_zero());
    // The loop never touches the measured interior.
    for (std::size_t q : spec.interior_qubits) CHECK(!loops.get(0, q));
}

TEST_CASE("chain operators of the smooth walkthrough puncture") {
    Fixture fx;
    PunctureSpec spec = make_puncture(fx.code, PunctureKind::Smooth, fx.S, fx.T);
    BitMatrix chains = puncture_logical_x_basis(fx.code, spec);
    REQUIRE(chains.rows() == 1);

    // Lexicographically first surviving candidate: the lower vertical string
    // through the free column of S.
    std::vector<std::size_t> expect = {fx.code.vv_qubit(3, 3), fx.code.vv_qubit(4, 3)};
    CHECK(chains.row(0).support() == expect);

    DeformedCode d = apply_puncture(fx.code, spec);
    // A chain is a genuine X logical of the deformed code: commutes with all
    // surviving Z rows, is not an X stabilizer, and pairs with the loop.
    CHECK((d.sz * chains.transpose()).is_zero());
    CHECK(!d.sx.row_space_contains(chains.row(0)));
    BitMatrix loops = puncture_logical_z_basis(fx.code, spec);
    BitMatrix gram = chains * loops.transpose();
    CHECK(gram.get(0, 0));  // odd overlap: the pair anticommutes
}

TEST_CASE("rough puncture mirrors the smooth construction") {
    Fixture fx;
    PunctureSpec spec = make_puncture(fx.code, PunctureKind::Rough, fx.S, fx.T);

    // Interior: S x B variable pairs and A x T check pairs.
    std::vector<std::size_t> interior = {
        fx.code.vv_qubit(2, 2), fx.code.vv_qubit(3, 2),
        fx.code.cc_qubit(2, 1), fx.code.cc_qubit(2, 2)};
    std::sort(interior.begin(), interior.end());
    CHECK(spec.interior_qubits == interior);

    // The role-swapped matrices agree with the direct block formulas.
    PunctureMatrices mats = puncture_stabilizers(fx.code, spec);
    BitMatrix one_S = BitMatrix::projector(fx.code.n, spec.S.members);
    BitMatrix one_T = BitMatrix::projector(fx.code.m, spec.T.members);
    BitMatrix one_A = BitMatrix::projector(fx.code.m, spec.A.members);
    BitMatrix one_B = BitMatrix::projector(fx.code.n, spec.B.members);
    CHECK(mats.hx_prime == one_S.kron(mats.h_T).hconcat(mats.h_S.transpose().kron(one_T)));
    CHECK(mats.hz_prime == mats.h_S.kron(one_B).hconcat(one_A.kron(mats.h_T.transpose())));

    DeformedCode d = apply_puncture(fx.code, spec);
    for (const auto& mq : d.measured) CHECK(mq.basis == 'Z');
    CHECK(d.logical_count() == 2);

    BitMatrix x_loops = puncture_logical_x_basis(fx.code, spec);
    BitMatrix z_chains = puncture_logical_z_basis(fx.code, spec);
    REQUIRE(x_loops.rows() == 1);
    REQUIRE(z_chains.rows() == 1);
    CHECK((d.sz * x_loops.transpose()).is_zero());
    CHECK((d.sx * z_chains.transpose()).is_zero());
    CHECK(!d.sx.row_space_contains(x_loops.row(0)));
    CHECK(!d.sz.row_space_contains(z_chains.row(0)));
    // The pair anticommutes.
    CHECK((x_loops * z_chains.transpose()).get(0, 0));
}

TEST_CASE("point-like puncture removes exactly one stabilizer") {
    Fixture fx;
    PunctureSpec spec = make_puncture(fx.code, PunctureKind::Smooth,
                                      NodeSet(Side::Var, {2}), NodeSet(Side::Check, {1}));
    CHECK(spec.interior_qubits.empty());
    CHECK(check_correctable(fx.code, spec).correctable);

    DeformedCode d = apply_puncture(fx.code, spec);
    CHECK(d.measured.empty());
    CHECK(d.dropped_x_ids.empty());
    CHECK(d.dropped_z_ids == std::vector<std::size_t>{fx.code.z_stab(1, 2)});
    CHECK(d.logical_count() == 2);

    // The loop for a point defect is the removed stabilizer row itself.
    BitMatrix loops = puncture_logical_z_basis(fx.code, spec);
    REQUIRE(loops.rows() == 1);
    CHECK(loops.row(0) == fx.code.hz.row(fx.code.z_stab(1, 2)));

    BitMatrix chains = puncture_logical_x_basis(fx.code, spec);
    REQUIRE(chains.rows() == 1);
    CHECK((d.sz * chains.transpose()).is_zero());
    CHECK((chains * loops.transpose()).get(0, 0));
}

TEST_CASE("uncorrectable punctures are rejected unless forced") {
    Fixture fx;
    PunctureSpec bad = make_puncture(fx.code, PunctureKind::Smooth,
                                     NodeSet(Side::Var, {0, 1, 2, 3, 4}), fx.T);
    CHECK_THROWS_AS(apply_puncture(fx.code, bad), VerificationError);
    DeformedCode forced = apply_puncture(fx.code, bad, true);
    CHECK(forced.num_live_qubits() < fx.code.num_qubits());
}

TEST_CASE("random correctable punctures: commutation and logical accounting") {
    std::mt19937 rng(99);
    int tested = 0;
    while (tested < 25) {
        BitMatrix h = random_sparse(rng, 3 + rng() % 4, 4 + rng() % 5, 3);
        HgpCode code = build_hgp(h);
        NodeSet S = random_subset(rng, Side::Var, code.n, 2);
        NodeSet T = random_subset(rng, Side::Check, code.m, 2);
        PunctureKind kind = (rng() % 2) ? PunctureKind::Smooth : PunctureKind::Rough;
        PunctureSpec spec = make_puncture(code, kind, S, T);
        if (!check_correctable(code, spec).correctable) continue;
        ++tested;

        DeformedCode d = apply_puncture(code, spec);
        // All generators commute pairwise.
        auto gens = d.generators();
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                CHECK(gens[i].commutes_with(gens[j]));

        // The defect's logicals account exactly for the growth of k, and the
        // two types come in equal numbers.
        BitMatrix lz = puncture_logical_z_basis(code, spec);
        BitMatrix lx = puncture_logical_x_basis(code, spec);
        CHECK(lz.rows() == lx.rows());
        CHECK(d.logical_count() == logical_qubit_count(code) + lz.rows());
    }
}

TEST_CASE("reflect_support mirrors both blocks across the diagonal") {
    Fixture fx;
    BitVec v(fx.code.num_qubits());
    v.set(fx.code.vv_qubit(1, 3), true);
    v.set(fx.code.cc_qubit(0, 2), true);
    BitVec r = reflect_support(fx.code, v);
    CHECK(r.get(fx.code.vv_qubit(3, 1)));
    CHECK(r.get(fx.code.cc_qubit(2, 0)));
    CHECK(r.weight() == 2);
    CHECK(reflect_support(fx.code, r) == v);
}
