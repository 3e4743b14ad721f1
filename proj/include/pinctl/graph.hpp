#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pinctl {

using node_t = std::int32_t;

/// Undirected, unweighted simple graph with dense 0-based node indices.
/// Immutable after construction; adjacency is CSR with per-node sorted
/// neighbor lists, so it is safe to share across concurrent workers.
class Graph {
public:
    /// Builds from an edge list over dense indices in [0, n). Duplicate edges
    /// (either orientation) and self-loops are dropped; the counts are
    /// reported through the optional out-parameters.
    static Graph from_edges(node_t n, std::vector<std::pair<node_t, node_t>> edges,
                            std::vector<std::string> labels = {},
                            std::size_t* duplicates_dropped = nullptr,
                            std::size_t* self_loops_dropped = nullptr);

    node_t node_count() const noexcept { return n_; }
    std::int64_t edge_count() const noexcept { return m_; }

    node_t degree(node_t i) const { return row_ptr_[i + 1] - row_ptr_[i]; }
    node_t min_degree() const noexcept { return min_degree_; }
    node_t max_degree() const noexcept { return max_degree_; }

    std::span<const node_t> neighbors(node_t i) const {
        return {cols_.data() + row_ptr_[i], static_cast<std::size_t>(degree(i))};
    }

    bool has_edge(node_t u, node_t v) const;

    /// Original node label (first-seen order); synthetic graphs label nodes
    /// by their index.
    const std::string& label(node_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    const std::vector<std::int32_t>& row_ptr() const noexcept { return row_ptr_; }
    const std::vector<std::int32_t>& cols() const noexcept { return cols_; }
    /// Degrees as doubles, laid out for the Laplacian matvec kernel.
    const std::vector<double>& degree_diag() const noexcept { return diag_; }

    /// Checks the representation invariants (symmetry, sortedness, degree sum).
    /// Throws pinctl::Error on violation. Intended for tests and ingestion.
    void validate() const;

private:
    Graph() = default;

    node_t n_ = 0;
    std::int64_t m_ = 0;
    node_t min_degree_ = 0;
    node_t max_degree_ = 0;
    std::vector<std::int32_t> row_ptr_;
    std::vector<std::int32_t> cols_;
    std::vector<double> diag_;
    std::vector<std::string> labels_;
};

/// Ordered set of pinned nodes; selection order is preserved so that budget
/// prefixes of a trace are themselves valid selections.
struct PinSet {
    std::vector<node_t> members;
    std::string origin;

    std::size_t size() const noexcept { return members.size(); }
    bool empty() const noexcept { return members.empty(); }

    /// Throws pinctl::Error if members are out of range or repeated.
    void validate(const Graph& g) const;
};

struct EdgeListStats {
    std::size_t duplicates_dropped = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t isolated_nodes = 0;
};

struct LoadResult {
    Graph graph;
    EdgeListStats stats;
};

/// Parses an edge-list text stream: one "u v" pair per line, '#'/'%' comment
/// lines and blank lines skipped, labels mapped to dense indices in
/// first-seen order. Dirty input (duplicate edges, self-loops) is dropped and
/// counted, not rejected. Isolated nodes (self-loop-only labels) are kept and
/// flagged in the stats.
LoadResult load_edge_list(std::istream& in);
LoadResult load_edge_list_file(const std::string& path);

/// Writes the same format back (one edge per line, original labels, ascending
/// index order). Loading the output reproduces the graph exactly.
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

struct UnpinnedComponent {
    std::vector<node_t> nodes;  // parent indices, ascending
    bool touches_pinned = false;
};

/// Connected components of the subgraph induced on unpinned nodes, ordered by
/// smallest member index. touches_pinned is true iff some member has a pinned
/// neighbor in the full graph; lambda_1 of the grounded view is positive iff
/// every component touches.
std::vector<UnpinnedComponent> unpinned_components(const Graph& g, const PinSet& pins);

/// Principal submatrix of the Laplacian over the unpinned nodes, compiled to
/// CSR for the matvec kernel. Diagonal entries keep the full-graph degree.
class GroundedView {
public:
    GroundedView(const Graph& g, const PinSet& pins);

    /// View with one more node grounded. Equivalent to rebuilding from
    /// (pins + node) but O(nnz); used by the greedy candidate scans.
    GroundedView dropped(node_t parent_node) const;

    std::size_t size() const noexcept { return unpinned_.size(); }
    const Graph& parent() const noexcept { return *parent_; }

    const std::vector<node_t>& unpinned() const noexcept { return unpinned_; }
    node_t parent_of(std::size_t local) const { return unpinned_[local]; }
    /// Local index of a parent node, or -1 if it is pinned.
    node_t local_of(node_t parent_node) const { return local_of_[parent_node]; }

    const std::vector<std::int32_t>& row_ptr() const noexcept { return row_ptr_; }
    const std::vector<std::int32_t>& cols() const noexcept { return cols_; }
    const std::vector<double>& diag() const noexcept { return diag_; }

    /// y = L_hat x over local indices.
    void matvec(const double* x, double* y) const;

    double min_diag() const;

private:
    GroundedView() = default;

    const Graph* parent_ = nullptr;
    std::vector<node_t> unpinned_;   // ascending parent indices
    std::vector<node_t> local_of_;   // parent -> local, -1 for pinned
    std::vector<std::int32_t> row_ptr_;
    std::vector<std::int32_t> cols_;
    std::vector<double> diag_;
};

} // namespace pinctl
