#include "hgpdefect/bits.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace hgpd {

BitVec BitVec::from_support(std::size_t n, const std::vector<std::size_t>& support) {
    BitVec v(n);
    for (std::size_t i : support) {
        if (i >= n) throw std::out_of_range("BitVec::from_support: index out of range");
        v.set(i, true);
    }
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec xor: size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool BitVec::dot(const BitVec& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitVec dot: size mismatch");
    uint64_t acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

std::size_t BitVec::weight() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

bool BitVec::any() const {
    for (uint64_t w : w_) if (w) return true;
    return false;
}

std::vector<std::size_t> BitVec::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s.push_back(i);
    return s;
}

bool BitVec::lex_less(const BitVec& o) const {
    // Bit 0 is the most significant position of the lexicographic order, so
    // compare word by word with bits reversed inside each word.
    for (std::size_t i = 0; i < w_.size() && i < o.w_.size(); ++i) {
        if (w_[i] != o.w_[i]) {
            uint64_t diff = w_[i] ^ o.w_[i];
            uint64_t lowest = diff & (~diff + 1);
            return (o.w_[i] & lowest) != 0;  // o has the earliest differing bit set
        }
    }
    return n_ < o.n_;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVec>& rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

BitMatrix BitMatrix::from_dense(const std::vector<std::vector<int>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows[0].size();
    BitMatrix m(rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc) throw std::invalid_argument("from_dense: ragged rows");
        for (std::size_t c = 0; c < nc; ++c)
            if (rows[r][c] & 1) m.set(r, c, true);
    }
    return m;
}

BitMatrix BitMatrix::projector(std::size_t n, const std::vector<std::size_t>& keep) {
    BitMatrix m(n, n);
    for (std::size_t i : keep) {
        if (i >= n) throw std::out_of_range("projector: index out of range");
        m.set(i, i, true);
    }
    return m;
}

BitVec BitMatrix::row(std::size_t r) const {
    BitVec v(cols_);
    for (std::size_t i = 0; i < wpr_; ++i) v.words()[i] = d_[r * wpr_ + i];
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVec& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: size mismatch");
    for (std::size_t i = 0; i < wpr_; ++i) d_[r * wpr_ + i] = v.words()[i];
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
    for (std::size_t i = 0; i < wpr_; ++i) d_[dst * wpr_ + i] ^= d_[src * wpr_ + i];
}

bool BitMatrix::row_is_zero(std::size_t r) const {
    for (std::size_t i = 0; i < wpr_; ++i)
        if (d_[r * wpr_ + i]) return false;
    return true;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            uint64_t w = d_[r * wpr_ + wi];
            while (w) {
                int b = std::countr_zero(w);
                w &= w - 1;
                t.set(wi * 64 + b, r, true);
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matmul: shape mismatch");
    BitMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            uint64_t w = d_[r * wpr_ + wi];
            while (w) {
                int b = std::countr_zero(w);
                w &= w - 1;
                std::size_t k = wi * 64 + b;
                for (std::size_t j = 0; j < out.wpr_; ++j)
                    out.d_[r * out.wpr_ + j] ^= o.d_[k * o.wpr_ + j];
            }
        }
    }
    return out;
}

BitVec BitMatrix::mul_vec(const BitVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("mul_vec: size mismatch");
    BitVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        uint64_t acc = 0;
        for (std::size_t i = 0; i < wpr_; ++i) acc ^= d_[r * wpr_ + i] & v.words()[i];
        if (std::popcount(acc) & 1) out.set(r, true);
    }
    return out;
}

BitVec BitMatrix::mul_left(const BitVec& v) const {
    if (v.size() != rows_) throw std::invalid_argument("mul_left: size mismatch");
    BitVec out(cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (v.get(r))
            for (std::size_t i = 0; i < wpr_; ++i) out.words()[i] ^= d_[r * wpr_ + i];
    return out;
}

BitMatrix BitMatrix::operator+(const BitMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix add: shape mismatch");
    BitMatrix out = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) out.d_[i] ^= o.d_[i];
    return out;
}

bool BitMatrix::operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
}

BitMatrix BitMatrix::kron(const BitMatrix& o) const {
    BitMatrix out(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (!get(i, k)) continue;
            for (std::size_t j = 0; j < o.rows_; ++j)
                for (std::size_t l = 0; l < o.cols_; ++l)
                    if (o.get(j, l)) out.set(i * o.rows_ + j, k * o.cols_ + l, true);
        }
    return out;
}

BitMatrix BitMatrix::stack(const BitMatrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("stack: column mismatch");
    BitMatrix out(rows_ + o.rows_, cols_);
    std::copy(d_.begin(), d_.end(), out.d_.begin());
    std::copy(o.d_.begin(), o.d_.end(), out.d_.begin() + d_.size());
    return out;
}

BitMatrix BitMatrix::hconcat(const BitMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hconcat: row mismatch");
    BitMatrix out(rows_, cols_ + o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) out.set(r, c, true);
        for (std::size_t c = 0; c < o.cols_; ++c)
            if (o.get(r, c)) out.set(r, cols_ + c, true);
    }
    return out;
}

BitMatrix BitMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                               const std::vector<std::size_t>& col_idx) const {
    BitMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t r = 0; r < row_idx.size(); ++r)
        for (std::size_t c = 0; c < col_idx.size(); ++c)
            if (get(row_idx[r], col_idx[c])) out.set(r, c, true);
    return out;
}

BitMatrix BitMatrix::keep_cols(const std::vector<std::size_t>& cols) const {
    BitVec mask = BitVec::from_support(cols_, cols);
    BitMatrix out = *this;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t i = 0; i < wpr_; ++i) out.d_[r * wpr_ + i] &= mask.words()[i];
    return out;
}

BitMatrix BitMatrix::keep_rows(const std::vector<std::size_t>& rows) const {
    BitMatrix out(rows_, cols_);
    for (std::size_t r : rows) {
        if (r >= rows_) throw std::out_of_range("keep_rows: index out of range");
        for (std::size_t i = 0; i < wpr_; ++i) out.d_[r * wpr_ + i] = d_[r * wpr_ + i];
    }
    return out;
}

std::size_t BitMatrix::rank() const {
    BitMatrix m = *this;
    return m.rref().size();
}

std::vector<std::size_t> BitMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        // Find the first row at or below r with a 1 in column c.
        std::size_t p = r;
        while (p < rows_ && !get(p, c)) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t i = 0; i < wpr_; ++i)
                std::swap(d_[p * wpr_ + i], d_[r * wpr_ + i]);
        // Clear column c everywhere else (full reduction).
        for (std::size_t q = 0; q < rows_; ++q)
            if (q != r && get(q, c)) xor_row_into(r, q);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

BitMatrix BitMatrix::kernel_basis() const {
    BitMatrix m = *this;
    std::vector<std::size_t> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    BitMatrix basis(free_cols.size(), cols_);
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        std::size_t f = free_cols[i];
        basis.set(i, f, true);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (m.get(r, f)) basis.set(i, pivots[r], true);
    }
    return basis;
}

BitMatrix BitMatrix::left_kernel_basis() const {
    return transpose().kernel_basis();
}

BitMatrix BitMatrix::quotient_basis() const {
    BitMatrix m = *this;
    std::vector<std::size_t> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    BitMatrix reps(cols_ - pivots.size(), cols_);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c]) reps.set(r++, c, true);
    return reps;
}

bool BitMatrix::row_space_contains(const BitVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("row_space_contains: size mismatch");
    BitMatrix m = *this;
    std::vector<std::size_t> pivots = m.rref();
    BitVec rem = v;
    for (std::size_t r = 0; r < pivots.size(); ++r)
        if (rem.get(pivots[r])) rem ^= m.row(r);
    return rem.is_zero();
}

std::optional<BitVec> BitMatrix::solve_left(const BitVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("solve_left: size mismatch");
    // Eliminate on the rows of M while mirroring the operations on an
    // identity-seeded witness block, then consume v with the pivot rows.
    BitMatrix m = *this;
    std::vector<BitVec> wit(rows_, BitVec(rows_));
    for (std::size_t r = 0; r < rows_; ++r) wit[r].set(r, true);

    std::size_t r = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && !m.get(p, c)) ++p;
        if (p == rows_) continue;
        if (p != r) {
            BitVec tmp = m.row(p); m.set_row(p, m.row(r)); m.set_row(r, tmp);
            std::swap(wit[p], wit[r]);
        }
        for (std::size_t q = 0; q < rows_; ++q)
            if (q != r && m.get(q, c)) { m.xor_row_into(r, q); wit[q] ^= wit[r]; }
        pivots.emplace_back(r, c);
        ++r;
    }

    BitVec rem = v;
    BitVec x(rows_);
    for (auto [pr, pc] : pivots)
        if (rem.get(pc)) { rem ^= m.row(pr); x ^= wit[pr]; }
    if (!rem.is_zero()) return std::nullopt;
    return x;
}

bool BitMatrix::is_zero() const {
    for (uint64_t w : d_) if (w) return false;
    return true;
}

std::string BitMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) os << (get(r, c) ? '1' : '0');
        os << '\n';
    }
    return os.str();
}

SymplecticOp SymplecticOp::x_op(std::size_t n, const std::vector<std::size_t>& support) {
    SymplecticOp op(n);
    op.x = BitVec::from_support(n, support);
    return op;
}

SymplecticOp SymplecticOp::z_op(std::size_t n, const std::vector<std::size_t>& support) {
    SymplecticOp op(n);
    op.z = BitVec::from_support(n, support);
    return op;
}

std::size_t SymplecticOp::weight() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < x.words().size(); ++i)
        c += std::popcount(x.words()[i] | z.words()[i]);
    return c;
}

BitVec SymplecticOp::interleaved() const {
    std::size_t n = num_qubits();
    BitVec v(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x.get(i)) v.set(i, true);
        if (z.get(i)) v.set(n + i, true);
    }
    return v;
}

SymplecticOp SymplecticOp::from_interleaved(const BitVec& v) {
    if (v.size() % 2) throw std::invalid_argument("from_interleaved: odd length");
    std::size_t n = v.size() / 2;
    SymplecticOp op(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (v.get(i)) op.x.set(i, true);
        if (v.get(n + i)) op.z.set(i, true);
    }
    return op;
}

std::string SymplecticOp::to_string() const {
    std::size_t n = num_qubits();
    std::string s(n, '.');
    for (std::size_t i = 0; i < n; ++i) {
        bool xi = x.get(i), zi = z.get(i);
        if (xi && zi) s[i] = 'Y';
        else if (xi) s[i] = 'X';
        else if (zi) s[i] = 'Z';
    }
    return s;
}

BitMatrix symplectic_matrix(const std::vector<SymplecticOp>& ops) {
    if (ops.empty()) return BitMatrix(0, 0);
    BitMatrix m(ops.size(), 2 * ops[0].num_qubits());
    for (std::size_t r = 0; r < ops.size(); ++r) m.set_row(r, ops[r].interleaved());
    return m;
}

}  // namespace hgpd
