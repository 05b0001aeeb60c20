#include "hgpdefect/hgp.hpp"

#include <stdexcept>

namespace hgpd {

std::pair<std::size_t, std::size_t> HgpCode::qubit_coords(std::size_t q) const {
    if (q < n * n) return {q / n, q % n};
    q -= n * n;
    return {q / m, q % m};
}

HgpCode build_hgp(const BitMatrix& h) {
    if (h.rows() == 0 || h.cols() == 0)
        throw std::invalid_argument("build_hgp: empty parity-check matrix");

    HgpCode code;
    code.h = h;
    code.graph = FactorGraph(h);
    code.m = h.rows();
    code.n = h.cols();

    BitMatrix in = BitMatrix::identity(code.n);
    BitMatrix im = BitMatrix::identity(code.m);
    BitMatrix ht = h.transpose();

    // hx = (1_n (x) h | h^t (x) 1_m): row (v,c) touches {v} x Gamma(c) among
    // variable-variable qubits and Gamma(v) x {c} among check-check qubits.
    code.hx = in.kron(h).hconcat(ht.kron(im));
    // hz = (h (x) 1_n | 1_m (x) h^t): row (c,v) touches Gamma(c) x {v} and
    // {c} x Gamma(v).
    code.hz = h.kron(in).hconcat(im.kron(ht));

    // CSS requirement: every X stabilizer commutes with every Z stabilizer.
    if (!(code.hx * code.hz.transpose()).is_zero())
        throw std::logic_error("build_hgp: hx hz^t != 0");
    return code;
}

HgpCode build_hgp(const FactorGraph& g) { return build_hgp(g.to_matrix()); }

namespace {

// Place block-local rows (vv | cc) into full-width vectors.
BitMatrix widen(const BitMatrix& vv_part, const BitMatrix& cc_part,
                std::size_t nn, std::size_t mm) {
    BitMatrix out(vv_part.rows() + cc_part.rows(), nn + mm);
    for (std::size_t r = 0; r < vv_part.rows(); ++r)
        for (std::size_t c = 0; c < nn; ++c)
            if (vv_part.get(r, c)) out.set(r, c, true);
    for (std::size_t r = 0; r < cc_part.rows(); ++r)
        for (std::size_t c = 0; c < mm; ++c)
            if (cc_part.get(r, c)) out.set(vv_part.rows() + r, nn + c, true);
    return out;
}

}  // namespace

BitMatrix embedded_logical_x_basis(const HgpCode& code) {
    BitMatrix kf = code.h.kernel_basis();                    // codewords of h
    BitMatrix qf = code.h.quotient_basis();                  // reps of F_2^n / rowspace(h)
    BitMatrix kt = code.h.transpose().kernel_basis();        // codewords of h^t
    BitMatrix qt = code.h.transpose().quotient_basis();      // reps of F_2^m / rowspace(h^t)
    return widen(kf.kron(qf), qt.kron(kt), code.n * code.n, code.m * code.m);
}

BitMatrix embedded_logical_z_basis(const HgpCode& code) {
    BitMatrix kf = code.h.kernel_basis();
    BitMatrix qf = code.h.quotient_basis();
    BitMatrix kt = code.h.transpose().kernel_basis();
    BitMatrix qt = code.h.transpose().quotient_basis();
    return widen(qf.kron(kf), kt.kron(qt), code.n * code.n, code.m * code.m);
}

std::size_t logical_qubit_count(const HgpCode& code) {
    return code.num_qubits() - code.hx.rank() - code.hz.rank();
}

namespace {

// Minimum weight <= budget of a vector in ker(opp) \ rowspace(same), or
// nothing if the budget is exhausted. opp and same act on num_qubits columns.
std::optional<std::size_t> min_logical_weight(const BitMatrix& opp, const BitMatrix& same,
                                              std::size_t num_qubits, std::size_t budget) {
    // Syndrome columns: opp restricted to each qubit.
    BitMatrix oppt = opp.transpose();  // row q = syndrome of a single flip at q

    // Reduced form of the same-type stabilizers for fast membership tests.
    BitMatrix red = same;
    std::vector<std::size_t> pivots = red.rref();

    auto in_row_space = [&](const BitVec& v) {
        BitVec rem = v;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (rem.get(pivots[r])) rem ^= red.row(r);
        return rem.is_zero();
    };

    std::vector<std::size_t> chosen;
    BitVec syndrome(opp.rows());
    std::optional<std::size_t> found;

    // Depth-first enumeration of supports of exactly w qubits in increasing
    // lexicographic order; the syndrome is maintained incrementally.
    auto rec = [&](auto&& self, std::size_t start, std::size_t remaining) -> bool {
        if (remaining == 0) {
            if (!syndrome.is_zero()) return false;
            BitVec v = BitVec::from_support(num_qubits, chosen);
            if (in_row_space(v)) return false;
            found = chosen.size();
            return true;
        }
        for (std::size_t q = start; q + remaining <= num_qubits; ++q) {
            chosen.push_back(q);
            syndrome ^= oppt.row(q);
            if (self(self, q + 1, remaining - 1)) return true;
            syndrome ^= oppt.row(q);
            chosen.pop_back();
        }
        return false;
    };

    for (std::size_t w = 1; w <= budget; ++w)
        if (rec(rec, 0, w)) break;
    return found;
}

}  // namespace

DistanceResult code_distance(const HgpCode& code, std::size_t budget) {
    DistanceResult res;
    res.budget = budget;
    if (logical_qubit_count(code) == 0) return res;

    auto dx = min_logical_weight(code.hz, code.hx, code.num_qubits(), budget);
    auto dz = min_logical_weight(code.hx, code.hz, code.num_qubits(), budget);
    if (dx && dz) res.distance = std::min(*dx, *dz);
    else if (dx) res.distance = dx;
    else if (dz) res.distance = dz;
    res.exhausted_budget = !res.distance.has_value();
    return res;
}

CodeParameters code_parameters(const HgpCode& code, std::size_t distance_budget) {
    CodeParameters p;
    p.num_qubits = code.num_qubits();
    p.k = logical_qubit_count(code);
    p.distance = code_distance(code, distance_budget);
    return p;
}

}  // namespace hgpd
