#include "pinctl/graph.hpp"

#include "pinctl/errors.hpp"
#include "pinctl/kernels.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pinctl {

Graph Graph::from_edges(node_t n, std::vector<std::pair<node_t, node_t>> edges,
                        std::vector<std::string> labels,
                        std::size_t* duplicates_dropped,
                        std::size_t* self_loops_dropped) {
    if (n < 0) throw Error("negative node count");
    std::size_t self_loops = 0;
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw Error("edge endpoint out of range");
        }
        if (u > v) std::swap(u, v);
    }
    std::erase_if(edges, [&](const auto& e) {
        if (e.first == e.second) {
            ++self_loops;
            return true;
        }
        return false;
    });
    std::sort(edges.begin(), edges.end());
    const std::size_t before = edges.size();
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    const std::size_t duplicates = before - edges.size();

    Graph g;
    g.n_ = n;
    g.m_ = static_cast<std::int64_t>(edges.size());
    g.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [u, v] : edges) {
        ++g.row_ptr_[u + 1];
        ++g.row_ptr_[v + 1];
    }
    for (node_t i = 0; i < n; ++i) g.row_ptr_[i + 1] += g.row_ptr_[i];
    g.cols_.resize(static_cast<std::size_t>(2) * edges.size());
    std::vector<std::int32_t> cursor(g.row_ptr_.begin(), g.row_ptr_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.cols_[cursor[u]++] = v;
        g.cols_[cursor[v]++] = u;
    }
    // Sorted (u,v) insertion order already leaves each row ascending.
    g.diag_.resize(n);
    g.min_degree_ = n > 0 ? g.degree(0) : 0;
    g.max_degree_ = 0;
    for (node_t i = 0; i < n; ++i) {
        const node_t d = g.degree(i);
        g.diag_[i] = static_cast<double>(d);
        g.min_degree_ = std::min(g.min_degree_, d);
        g.max_degree_ = std::max(g.max_degree_, d);
    }
    if (labels.empty()) {
        g.labels_.reserve(n);
        for (node_t i = 0; i < n; ++i) g.labels_.push_back(std::to_string(i));
    } else {
        if (static_cast<node_t>(labels.size()) != n) {
            throw Error("label count does not match node count");
        }
        g.labels_ = std::move(labels);
    }
    if (duplicates_dropped) *duplicates_dropped = duplicates;
    if (self_loops_dropped) *self_loops_dropped = self_loops;
    return g;
}

bool Graph::has_edge(node_t u, node_t v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::validate() const {
    std::int64_t degree_sum = 0;
    for (node_t i = 0; i < n_; ++i) {
        const auto nb = neighbors(i);
        degree_sum += static_cast<std::int64_t>(nb.size());
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (nb[k] < 0 || nb[k] >= n_) throw Error("neighbor index out of range");
            if (nb[k] == i) throw Error("self-loop present");
            if (k > 0 && nb[k] <= nb[k - 1]) throw Error("adjacency not sorted/unique");
            if (!has_edge(nb[k], i)) throw Error("adjacency not symmetric");
        }
    }
    if (degree_sum != 2 * m_) throw Error("degree sum != 2M");
}

void PinSet::validate(const Graph& g) const {
    std::vector<char> seen(g.node_count(), 0);
    for (node_t v : members) {
        if (v < 0 || v >= g.node_count()) throw Error("pinned node out of range");
        if (seen[v]) throw Error("pinned node repeated");
        seen[v] = 1;
    }
}

LoadResult load_edge_list(std::istream& in) {
    std::unordered_map<std::string, node_t> index_of;
    std::vector<std::string> labels;
    std::vector<std::pair<node_t, node_t>> edges;

    auto intern = [&](const std::string& tok) -> node_t {
        auto [it, inserted] = index_of.try_emplace(tok, static_cast<node_t>(labels.size()));
        if (inserted) labels.push_back(tok);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;               // blank line
        if (a[0] == '#' || a[0] == '%') continue; // comment
        if (!(ls >> b) || (ls >> extra)) {
            throw ParseError("expected exactly two node labels", line_no);
        }
        edges.emplace_back(intern(a), intern(b));
    }
    if (labels.empty()) throw Error("empty edge list");

    LoadResult result;
    result.graph = Graph::from_edges(static_cast<node_t>(labels.size()), std::move(edges),
                                     std::move(labels), &result.stats.duplicates_dropped,
                                     &result.stats.self_loops_dropped);
    for (node_t i = 0; i < result.graph.node_count(); ++i) {
        if (result.graph.degree(i) == 0) ++result.stats.isolated_nodes;
    }
    return result;
}

LoadResult load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open edge list: " + path);
    return load_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (node_t i = 0; i < g.node_count(); ++i) {
        for (node_t j : g.neighbors(i)) {
            if (j > i) out << g.label(i) << ' ' << g.label(j) << '\n';
        }
    }
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    write_edge_list(g, out);
    if (!out) throw Error("write failed: " + path);
}

std::vector<UnpinnedComponent> unpinned_components(const Graph& g, const PinSet& pins) {
    pins.validate(g);
    const node_t n = g.node_count();
    std::vector<char> pinned(n, 0);
    for (node_t v : pins.members) pinned[v] = 1;

    std::vector<UnpinnedComponent> components;
    std::vector<node_t> stack;
    std::vector<char> visited(n, 0);
    for (node_t start = 0; start < n; ++start) {
        if (pinned[start] || visited[start]) continue;
        UnpinnedComponent comp;
        stack.push_back(start);
        visited[start] = 1;
        while (!stack.empty()) {
            const node_t u = stack.back();
            stack.pop_back();
            comp.nodes.push_back(u);
            for (node_t w : g.neighbors(u)) {
                if (pinned[w]) {
                    comp.touches_pinned = true;
                } else if (!visited[w]) {
                    visited[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.nodes.begin(), comp.nodes.end());
        components.push_back(std::move(comp));
    }
    return components;
}

GroundedView::GroundedView(const Graph& g, const PinSet& pins) {
    pins.validate(g);
    const node_t n = g.node_count();
    if (static_cast<node_t>(pins.size()) >= n && n > 0) {
        throw Error("grounded view would be empty: all nodes pinned");
    }
    parent_ = &g;
    local_of_.assign(n, -1);
    for (node_t v : pins.members) local_of_[v] = -2; // mark pinned
    unpinned_.reserve(n - pins.size());
    for (node_t i = 0; i < n; ++i) {
        if (local_of_[i] == -1) {
            local_of_[i] = static_cast<node_t>(unpinned_.size());
            unpinned_.push_back(i);
        } else {
            local_of_[i] = -1;
        }
    }

    row_ptr_.assign(unpinned_.size() + 1, 0);
    diag_.resize(unpinned_.size());
    std::size_t nnz = 0;
    for (std::size_t li = 0; li < unpinned_.size(); ++li) {
        const node_t i = unpinned_[li];
        diag_[li] = static_cast<double>(g.degree(i));
        for (node_t j : g.neighbors(i)) {
            if (local_of_[j] >= 0) ++nnz;
        }
        row_ptr_[li + 1] = static_cast<std::int32_t>(nnz);
    }
    cols_.reserve(nnz);
    for (const node_t i : unpinned_) {
        for (node_t j : g.neighbors(i)) {
            if (local_of_[j] >= 0) cols_.push_back(local_of_[j]);
        }
    }
}

GroundedView GroundedView::dropped(node_t parent_node) const {
    const node_t drop = local_of_[parent_node];
    if (drop < 0) throw Error("node already pinned");

    GroundedView v;
    v.parent_ = parent_;
    v.unpinned_.reserve(unpinned_.size() - 1);
    for (node_t p : unpinned_) {
        if (p != parent_node) v.unpinned_.push_back(p);
    }
    v.local_of_ = local_of_;
    v.local_of_[parent_node] = -1;
    for (std::size_t li = static_cast<std::size_t>(drop) + 1; li < unpinned_.size(); ++li) {
        --v.local_of_[unpinned_[li]];
    }

    const std::size_t n_new = v.unpinned_.size();
    v.row_ptr_.assign(n_new + 1, 0);
    v.diag_.reserve(n_new);
    v.cols_.reserve(cols_.size());
    std::size_t nnz = 0;
    for (std::size_t li = 0; li < unpinned_.size(); ++li) {
        if (static_cast<node_t>(li) == drop) continue;
        v.diag_.push_back(diag_[li]);
        for (std::int32_t k = row_ptr_[li]; k < row_ptr_[li + 1]; ++k) {
            const std::int32_t c = cols_[k];
            if (c == drop) continue;
            v.cols_.push_back(c > drop ? c - 1 : c);
            ++nnz;
        }
        v.row_ptr_[v.diag_.size()] = static_cast<std::int32_t>(nnz);
    }
    return v;
}

void GroundedView::matvec(const double* x, double* y) const {
    kernels::lap_spmv(unpinned_.size(), row_ptr_.data(), cols_.data(), diag_.data(), x, y);
}

double GroundedView::min_diag() const {
    double best = diag_.empty() ? 0.0 : diag_[0];
    for (double d : diag_) best = std::min(best, d);
    return best;
}

} // namespace pinctl
