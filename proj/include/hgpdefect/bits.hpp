#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Dense bit-packed linear algebra over GF(2). Rows are arrays of 64-bit words;
// all reductions are deterministic (first-set-bit pivoting, fixed scan order)
// so that bases and reports are reproducible run to run.

namespace hgpd {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    static BitVec from_support(std::size_t n, const std::vector<std::size_t>& support);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        uint64_t mask = uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= mask; else w_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Parity of the overlap <a,b> = sum_i a_i b_i mod 2.
    bool dot(const BitVec& o) const;
    std::size_t weight() const;
    bool any() const;
    bool is_zero() const { return !any(); }
    std::vector<std::size_t> support() const;

    // Lexicographic order on the bit string (index 0 most significant), used
    // wherever a deterministic candidate ordering is required.
    bool lex_less(const BitVec& o) const;

    std::string to_string() const;

    const std::vector<uint64_t>& words() const { return w_; }
    std::vector<uint64_t>& words() { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), d_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(const std::vector<BitVec>& rows, std::size_t cols);
    static BitMatrix from_dense(const std::vector<std::vector<int>>& rows);
    // Diagonal 0/1 matrix that keeps exactly the listed indices.
    static BitMatrix projector(std::size_t n, const std::vector<std::size_t>& keep);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (d_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        uint64_t mask = uint64_t(1) << (c & 63);
        if (v) d_[r * wpr_ + (c >> 6)] |= mask; else d_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    BitVec row(std::size_t r) const;
    void set_row(std::size_t r, const BitVec& v);
    void xor_row_into(std::size_t src, std::size_t dst);  // row dst ^= row src
    bool row_is_zero(std::size_t r) const;

    BitMatrix transpose() const;
    BitMatrix operator*(const BitMatrix& o) const;
    BitVec mul_vec(const BitVec& v) const;              // M v  (v as column)
    BitVec mul_left(const BitVec& v) const;             // v M  (v as row)
    BitMatrix operator+(const BitMatrix& o) const;
    bool operator==(const BitMatrix& o) const;

    // Kronecker product: entry ((i*o.rows+j),(k*o.cols+l)) = A[i,k] * B[j,l].
    BitMatrix kron(const BitMatrix& o) const;

    // Vertical stack: rows of *this followed by rows of o (same column count).
    BitMatrix stack(const BitMatrix& o) const;

    // Horizontal concatenation: columns of *this followed by columns of o
    // (same row count).
    BitMatrix hconcat(const BitMatrix& o) const;

    BitMatrix submatrix(const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx) const;

    // Zero out every column (row) whose index is not listed; shape unchanged.
    BitMatrix keep_cols(const std::vector<std::size_t>& cols) const;
    BitMatrix keep_rows(const std::vector<std::size_t>& rows) const;

    std::size_t rank() const;

    // Row-reduce in place to reduced row echelon form; returns pivot columns
    // in increasing order.
    std::vector<std::size_t> rref();

    // Basis of {x : M x = 0}, one row per basis vector, deterministic.
    BitMatrix kernel_basis() const;
    // Basis of {y : y M = 0}.
    BitMatrix left_kernel_basis() const;

    // Representatives of F_2^cols / rowspace(M): the standard basis vectors on
    // the non-pivot columns of the RREF. Deterministic complement basis.
    BitMatrix quotient_basis() const;

    bool row_space_contains(const BitVec& v) const;
    // Witness x with x M = v, if one exists.
    std::optional<BitVec> solve_left(const BitVec& v) const;

    bool is_zero() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> d_;
};

// A Pauli operator with the phase ignored: X on the support of x, Z on the
// support of z, Y where the two overlap.
struct SymplecticOp {
    BitVec x, z;

    SymplecticOp() = default;
    explicit SymplecticOp(std::size_t n) : x(n), z(n) {}
    static SymplecticOp x_op(std::size_t n, const std::vector<std::size_t>& support);
    static SymplecticOp z_op(std::size_t n, const std::vector<std::size_t>& support);

    std::size_t num_qubits() const { return x.size(); }
    bool commutes_with(const SymplecticOp& o) const {
        return !(x.dot(o.z) ^ z.dot(o.x));
    }
    SymplecticOp& operator*=(const SymplecticOp& o) { x ^= o.x; z ^= o.z; return *this; }
    friend SymplecticOp operator*(SymplecticOp a, const SymplecticOp& b) { a *= b; return a; }
    bool operator==(const SymplecticOp& o) const { return x == o.x && z == o.z; }
    bool is_identity() const { return x.is_zero() && z.is_zero(); }

    // Number of qubits acted on (X, Z or Y).
    std::size_t weight() const;
    bool pure_x() const { return z.is_zero(); }
    bool pure_z() const { return x.is_zero(); }

    // Concatenated (x|z) form used when a set of operators is handled as rows
    // of a 2n-column GF(2) matrix.
    BitVec interleaved() const;
    static SymplecticOp from_interleaved(const BitVec& v);

    std::string to_string() const;
};

// Rows = interleaved (x|z) forms. Group-level questions (membership, witness
// search, span comparison) reduce to plain GF(2) row-space questions here.
BitMatrix symplectic_matrix(const std::vector<SymplecticOp>& ops);

}  // namespace hgpd
