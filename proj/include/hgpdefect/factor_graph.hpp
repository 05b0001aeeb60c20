#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgpdefect/bits.hpp"

// Bipartite factor graph of a classical parity-check matrix: one side holds
// variable (bit) nodes, the other check nodes; an edge (c, v) means check c
// involves variable v. All node indices are 0-based internally.

namespace hgpd {

enum class Side { Var, Check };

// A subset of nodes on one side of the graph, kept sorted and deduplicated.
struct NodeSet {
    Side side = Side::Var;
    std::vector<std::size_t> members;

    NodeSet() = default;
    NodeSet(Side s, std::vector<std::size_t> m);

    bool empty() const { return members.empty(); }
    std::size_t size() const { return members.size(); }
    bool contains(std::size_t i) const;

    friend NodeSet set_union(const NodeSet& a, const NodeSet& b);
    friend NodeSet set_difference(const NodeSet& a, const NodeSet& b);
    friend NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
    bool is_subset_of(const NodeSet& o) const;
    bool operator==(const NodeSet& o) const { return side == o.side && members == o.members; }
};

class FactorGraph {
public:
    FactorGraph() = default;
    explicit FactorGraph(const BitMatrix& h);
    FactorGraph(std::size_t n_checks, std::size_t n_vars,
                std::vector<std::vector<std::size_t>> check_nbrs);

    std::size_t num_vars() const { return var_nbrs_.size(); }
    std::size_t num_checks() const { return check_nbrs_.size(); }

    const std::vector<std::size_t>& var_neighbors(std::size_t v) const { return var_nbrs_[v]; }
    const std::vector<std::size_t>& check_neighbors(std::size_t c) const { return check_nbrs_[c]; }
    std::size_t degree(Side side, std::size_t i) const;
    std::size_t max_degree(Side side) const;

    BitMatrix to_matrix() const;  // checks x vars

    // All nodes on the opposite side adjacent to at least one member.
    NodeSet neighborhood(const NodeSet& s) const;

    // All opposite-side nodes of nonzero degree whose entire neighborhood lies
    // inside s. Isolated nodes are excluded: they would qualify vacuously but
    // constrain nothing and are never reachable from s.
    NodeSet ancestors(const NodeSet& s) const;

    // Connectivity of the subgraph induced by s together with the opposite
    // side nodes reachable through it: two members are adjacent when they
    // share a neighbor. Empty and singleton sets count as connected.
    bool is_connected_subset(const NodeSet& s) const;

    bool operator==(const FactorGraph& o) const {
        return check_nbrs_ == o.check_nbrs_ && var_nbrs_ == o.var_nbrs_;
    }

private:
    void rebuild_var_side(std::size_t n_vars);

    std::vector<std::vector<std::size_t>> check_nbrs_;  // per check: sorted var list
    std::vector<std::vector<std::size_t>> var_nbrs_;    // per var: sorted check list
};

// MacKay alist format. Layout: "n m", "max_col_deg max_row_deg", n column
// degrees, m row degrees, then n variable neighbor lists and m check neighbor
// lists, all 1-indexed, short lists padded with zeros. Zero padding is
// ignored on read and emitted on write.
FactorGraph parse_alist(const std::string& text);
FactorGraph read_alist_file(const std::string& path);
std::string write_alist(const FactorGraph& g);

}  // namespace hgpd
