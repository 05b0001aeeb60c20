#include "hgpdefect/factor_graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace hgpd {

NodeSet::NodeSet(Side s, std::vector<std::size_t> m) : side(s), members(std::move(m)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool NodeSet::contains(std::size_t i) const {
    return std::binary_search(members.begin(), members.end(), i);
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    if (a.side != b.side) throw std::invalid_argument("set_union: side mismatch");
    NodeSet out;
    out.side = a.side;
    std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                   std::back_inserter(out.members));
    return out;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    if (a.side != b.side) throw std::invalid_argument("set_difference: side mismatch");
    NodeSet out;
    out.side = a.side;
    std::set_difference(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(out.members));
    return out;
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
    if (a.side != b.side) throw std::invalid_argument("set_intersection: side mismatch");
    NodeSet out;
    out.side = a.side;
    std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                          std::back_inserter(out.members));
    return out;
}

bool NodeSet::is_subset_of(const NodeSet& o) const {
    if (side != o.side) return false;
    return std::includes(o.members.begin(), o.members.end(), members.begin(), members.end());
}

FactorGraph::FactorGraph(const BitMatrix& h) {
    check_nbrs_.resize(h.rows());
    for (std::size_t c = 0; c < h.rows(); ++c)
        check_nbrs_[c] = h.row(c).support();
    rebuild_var_side(h.cols());
}

FactorGraph::FactorGraph(std::size_t n_checks, std::size_t n_vars,
                         std::vector<std::vector<std::size_t>> check_nbrs)
    : check_nbrs_(std::move(check_nbrs)) {
    if (check_nbrs_.size() != n_checks)
        throw std::invalid_argument("FactorGraph: neighbor list count != n_checks");
    for (auto& nbrs : check_nbrs_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        if (!nbrs.empty() && nbrs.back() >= n_vars)
            throw std::out_of_range("FactorGraph: variable index out of range");
    }
    rebuild_var_side(n_vars);
}

void FactorGraph::rebuild_var_side(std::size_t n_vars) {
    var_nbrs_.assign(n_vars, {});
    for (std::size_t c = 0; c < check_nbrs_.size(); ++c)
        for (std::size_t v : check_nbrs_[c]) var_nbrs_[v].push_back(c);
    // Check lists were scanned in increasing order, so each var list is sorted.
}

std::size_t FactorGraph::degree(Side side, std::size_t i) const {
    return side == Side::Var ? var_nbrs_.at(i).size() : check_nbrs_.at(i).size();
}

std::size_t FactorGraph::max_degree(Side side) const {
    const auto& lists = side == Side::Var ? var_nbrs_ : check_nbrs_;
    std::size_t d = 0;
    for (const auto& l : lists) d = std::max(d, l.size());
    return d;
}

BitMatrix FactorGraph::to_matrix() const {
    BitMatrix h(num_checks(), num_vars());
    for (std::size_t c = 0; c < num_checks(); ++c)
        for (std::size_t v : check_nbrs_[c]) h.set(c, v, true);
    return h;
}

NodeSet FactorGraph::neighborhood(const NodeSet& s) const {
    NodeSet out;
    out.side = s.side == Side::Var ? Side::Check : Side::Var;
    std::vector<bool> seen(s.side == Side::Var ? num_checks() : num_vars(), false);
    for (std::size_t i : s.members) {
        const auto& nbrs = s.side == Side::Var ? var_nbrs_.at(i) : check_nbrs_.at(i);
        for (std::size_t j : nbrs)
            if (!seen[j]) { seen[j] = true; out.members.push_back(j); }
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

NodeSet FactorGraph::ancestors(const NodeSet& s) const {
    NodeSet out;
    out.side = s.side == Side::Var ? Side::Check : Side::Var;
    std::size_t n_opp = s.side == Side::Var ? num_checks() : num_vars();
    for (std::size_t j = 0; j < n_opp; ++j) {
        const auto& nbrs = out.side == Side::Var ? var_nbrs_[j] : check_nbrs_[j];
        if (nbrs.empty()) continue;
        bool inside = std::all_of(nbrs.begin(), nbrs.end(),
                                  [&](std::size_t i) { return s.contains(i); });
        if (inside) out.members.push_back(j);
    }
    return out;
}

bool FactorGraph::is_connected_subset(const NodeSet& s) const {
    if (s.size() <= 1) return true;
    // BFS over members of s, stepping through shared opposite-side neighbors.
    std::vector<bool> visited(s.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    visited[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        std::size_t idx = frontier.front();
        frontier.pop();
        std::size_t node = s.members[idx];
        const auto& nbrs = s.side == Side::Var ? var_nbrs_.at(node) : check_nbrs_.at(node);
        for (std::size_t mid : nbrs) {
            const auto& back = s.side == Side::Var ? check_nbrs_[mid] : var_nbrs_[mid];
            for (std::size_t other : back) {
                auto it = std::lower_bound(s.members.begin(), s.members.end(), other);
                if (it == s.members.end() || *it != other) continue;
                std::size_t oidx = std::size_t(it - s.members.begin());
                if (!visited[oidx]) {
                    visited[oidx] = true;
                    ++reached;
                    frontier.push(oidx);
                }
            }
        }
    }
    return reached == s.size();
}

namespace {

std::vector<long long> read_ints(const std::string& text) {
    std::istringstream is(text);
    std::vector<long long> vals;
    long long v;
    while (is >> v) vals.push_back(v);
    return vals;
}

}  // namespace

FactorGraph parse_alist(const std::string& text) {
    std::vector<long long> t = read_ints(text);
    std::size_t pos = 0;
    auto next = [&]() -> long long {
        if (pos >= t.size()) throw std::invalid_argument("alist: truncated input");
        return t[pos++];
    };

    long long n = next(), m = next();
    if (n <= 0 || m <= 0) throw std::invalid_argument("alist: nonpositive dimensions");
    next();  // max column degree (redundant, re-derived below)
    next();  // max row degree

    std::vector<long long> col_deg(n), row_deg(m);
    for (auto& d : col_deg) d = next();
    for (auto& d : row_deg) d = next();

    // Entry lists are padded to the max degree with zeros in common dialects;
    // accept both padded and unpadded layouts by reading exactly deg entries
    // per node plus any neighboring zero padding.
    std::vector<std::vector<std::size_t>> var_lists(n), check_lists(m);
    auto read_list = [&](long long deg, long long limit) {
        std::vector<std::size_t> out;
        long long got = 0;
        while (got < deg) {
            long long e = next();
            if (e == 0) continue;  // padding
            if (e < 1 || e > limit) throw std::invalid_argument("alist: index out of range");
            out.push_back(std::size_t(e - 1));
            ++got;
        }
        return out;
    };
    for (long long v = 0; v < n; ++v) var_lists[v] = read_list(col_deg[v], m);
    for (long long c = 0; c < m; ++c) check_lists[c] = read_list(row_deg[c], n);

    // Swallow trailing zero padding, then require exhaustion.
    while (pos < t.size() && t[pos] == 0) ++pos;
    if (pos != t.size()) throw std::invalid_argument("alist: trailing data");

    FactorGraph g(m, n, std::move(check_lists));
    // Cross-validate the variable lists against the check lists.
    for (long long v = 0; v < n; ++v) {
        std::vector<std::size_t> expect = var_lists[v];
        std::sort(expect.begin(), expect.end());
        if (expect != g.var_neighbors(std::size_t(v)))
            throw std::invalid_argument("alist: row/column lists disagree");
    }
    return g;
}

FactorGraph read_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open alist file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_alist(ss.str());
}

std::string write_alist(const FactorGraph& g) {
    std::size_t n = g.num_vars(), m = g.num_checks();
    std::size_t dv = g.max_degree(Side::Var), dc = g.max_degree(Side::Check);
    std::ostringstream os;
    os << n << ' ' << m << '\n' << dv << ' ' << dc << '\n';
    for (std::size_t v = 0; v < n; ++v) os << g.degree(Side::Var, v) << (v + 1 < n ? ' ' : '\n');
    for (std::size_t c = 0; c < m; ++c) os << g.degree(Side::Check, c) << (c + 1 < m ? ' ' : '\n');
    auto emit = [&](const std::vector<std::size_t>& nbrs, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i) {
            if (i) os << ' ';
            os << (i < nbrs.size() ? nbrs[i] + 1 : 0);  // pad with zeros
        }
        os << '\n';
    };
    for (std::size_t v = 0; v < n; ++v) emit(g.var_neighbors(v), dv);
    for (std::size_t c = 0; c < m; ++c) emit(g.check_neighbors(c), dc);
    return os.str();
}

}  // namespace hgpd
