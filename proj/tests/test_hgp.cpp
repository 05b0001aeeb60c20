#include <doctest.h>

#include <random>

#include "hgpdefect/hgp.hpp"

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

// Random sparse parity-check matrix with no zero rows or columns.
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

// Exact X-distance by full enumeration, usable for small qubit counts only.
std::optional<std::size_t> brute_force_min_x_logical(const HgpCode& code) {
    std::size_t nq = code.num_qubits();
    REQUIRE(nq <= 20);
    std::optional<std::size_t> best;
    for (uint64_t bits = 1; bits < (uint64_t(1) << nq); ++bits) {
        BitVec v(nq);
        for (std::size_t q = 0; q < nq; ++q)
            if ((bits >> q) & 1) v.set(q, true);
        if (!code.hz.mul_vec(v).is_zero()) continue;
        if (code.hx.row_space_contains(v)) continue;
        std::size_t w = v.weight();
        if (!best || w < *best) best = w;
    }
    return best;
}

}  // namespace

TEST_CASE("product of the 3-bit repetition chain is the 13-qubit surface code") {
    HgpCode code = build_hgp(rep_chain(3));
    CHECK(code.n == 3);
    CHECK(code.m == 2);
    CHECK(code.num_qubits() == 13);
    CHECK(code.num_x_stabs() == 6);
    CHECK(code.num_z_stabs() == 6);
    CHECK((code.hx * code.hz.transpose()).is_zero());
    CHECK(logical_qubit_count(code) == 1);

    CodeParameters p = code_parameters(code, 6);
    CHECK(p.num_qubits == 13);
    CHECK(p.k == 1);
    REQUIRE(p.distance.distance.has_value());
    CHECK(*p.distance.distance == 3);
}

TEST_CASE("bounded distance search matches full enumeration on the 13-qubit code") {
    HgpCode code = build_hgp(rep_chain(3));
    auto brute = brute_force_min_x_logical(code);
    REQUIRE(brute.has_value());
    DistanceResult d = code_distance(code, 6);
    REQUIRE(d.distance.has_value());
    // X and Z sides are mirror images for a self-product, so the X-side
    // brute-force minimum is the code distance.
    CHECK(*d.distance == *brute);
}

TEST_CASE("product of the 5-bit repetition chain gives a (41,1,5) code") {
    HgpCode code = build_hgp(rep_chain(5));
    CHECK(code.num_qubits() == 41);
    CHECK(logical_qubit_count(code) == 1);
    DistanceResult d = code_distance(code, 6);
    REQUIRE(d.distance.has_value());
    CHECK(*d.distance == 5);
}

TEST_CASE("stabilizer supports follow the product rule") {
    BitMatrix h = rep_chain(4);
    HgpCode code = build_hgp(h);
    // X stabilizer (v,c): VV qubits {v} x Gamma(c), CC qubits Gamma(v) x {c}.
    for (std::size_t v = 0; v < code.n; ++v)
        for (std::size_t c = 0; c < code.m; ++c) {
            BitVec row = code.hx.row(code.x_stab(v, c));
            std::vector<std::size_t> expect;
            for (std::size_t l : code.graph.check_neighbors(c))
                expect.push_back(code.vv_qubit(v, l));
            for (std::size_t k : code.graph.var_neighbors(v))
                expect.push_back(code.cc_qubit(k, c));
            std::sort(expect.begin(), expect.end());
            CHECK(row.support() == expect);
        }
    // Z stabilizer (c,v): VV qubits Gamma(c) x {v}, CC qubits {c} x Gamma(v).
    for (std::size_t c = 0; c < code.m; ++c)
        for (std::size_t v = 0; v < code.n; ++v) {
            BitVec row = code.hz.row(code.z_stab(c, v));
            std::vector<std::size_t> expect;
            for (std::size_t k : code.graph.check_neighbors(c))
                expect.push_back(code.vv_qubit(k, v));
            for (std::size_t l : code.graph.var_neighbors(v))
                expect.push_back(code.cc_qubit(c, l));
            std::sort(expect.begin(), expect.end());
            CHECK(row.support() == expect);
        }
}

TEST_CASE("qubit and stabilizer index maps invert each other") {
    HgpCode code = build_hgp(rep_chain(4));
    for (std::size_t q = 0; q < code.num_qubits(); ++q) {
        auto [a, b] = code.qubit_coords(q);
        if (code.is_vv(q)) CHECK(code.vv_qubit(a, b) == q);
        else CHECK(code.cc_qubit(a, b) == q);
    }
    for (std::size_t s = 0; s < code.num_x_stabs(); ++s) {
        auto [v, c] = code.x_stab_coords(s);
        CHECK(code.x_stab(v, c) == s);
    }
    for (std::size_t s = 0; s < code.num_z_stabs(); ++s) {
        auto [c, v] = code.z_stab_coords(s);
        CHECK(code.z_stab(c, v) == s);
    }
}

TEST_CASE("embedded logical operators: counts, commutation, independence, pairing") {
    std::mt19937 rng(21);
    for (int t = 0; t < 40; ++t) {
        BitMatrix h = random_sparse(rng, 2 + rng() % 4, 2 + rng() % 5, 3);
        HgpCode code = build_hgp(h);

        std::size_t kc = h.kernel_basis().rows();
        std::size_t kt = h.transpose().kernel_basis().rows();
        BitMatrix lx = embedded_logical_x_basis(code);
        BitMatrix lz = embedded_logical_z_basis(code);
        CHECK(lx.rows() == kc * kc + kt * kt);
        CHECK(lz.rows() == lx.rows());
        CHECK(lx.rows() == logical_qubit_count(code));

        // X logicals commute with Z stabilizers and vice versa.
        CHECK((code.hz * lx.transpose()).is_zero());
        CHECK((code.hx * lz.transpose()).is_zero());

        // Logicals extend the stabilizer row spaces independently.
        CHECK(code.hx.stack(lx).rank() == code.hx.rank() + lx.rows());
        CHECK(code.hz.stack(lz).rank() == code.hz.rank() + lz.rows());

        // The X/Z overlap (Gram) matrix is invertible: the bases pair up.
        BitMatrix gram = lx * lz.transpose();
        CHECK(gram.rank() == lx.rows());
    }
}

TEST_CASE("distance reporting handles k = 0 and exhausted budgets") {
    // A full-rank square h gives k = 0.
    BitMatrix h = BitMatrix::identity(3);
    HgpCode code = build_hgp(h);
    CHECK(logical_qubit_count(code) == 0);
    DistanceResult d = code_distance(code, 4);
    CHECK(!d.distance.has_value());
    CHECK(!d.exhausted_budget);

    // Budget below the true distance reports exhaustion.
    HgpCode surf = build_hgp(rep_chain(3));
    DistanceResult tight = code_distance(surf, 2);
    CHECK(!tight.distance.has_value());
    CHECK(tight.exhausted_budget);
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS(build_hgp(BitMatrix(0, 5)));
    CHECK_THROWS(build_hgp(BitMatrix(3, 0)));
}
