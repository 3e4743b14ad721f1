#include "pinctl/generators.hpp"

#include "pinctl/errors.hpp"
#include "pinctl/rng.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace pinctl {

const char* model_name(NetModel m) {
    switch (m) {
        case NetModel::BA: return "ba";
        case NetModel::ER: return "er";
        case NetModel::WS: return "ws";
    }
    return "?";
}

NetModel model_from_name(const std::string& name) {
    if (name == "ba") return NetModel::BA;
    if (name == "er") return NetModel::ER;
    if (name == "ws") return NetModel::WS;
    throw Error("unknown network model: " + name);
}

void GenSpec::validate() const {
    if (n < 1) throw Error("node count must be >= 1");
    switch (model) {
        case NetModel::BA:
            if (ba_m < 1 || ba_m >= n) throw Error("BA requires 1 <= m < n");
            break;
        case NetModel::ER:
            if (er_p < 0.0 || er_p > 1.0) throw Error("ER requires 0 <= p <= 1");
            break;
        case NetModel::WS:
            if (ws_k % 2 != 0 || ws_k >= n || ws_k < 0) {
                throw Error("WS requires even k < n");
            }
            if (ws_p < 0.0 || ws_p > 1.0) throw Error("WS requires 0 <= p <= 1");
            break;
    }
}

std::string GenSpec::describe() const {
    std::ostringstream os;
    os << model_name(model) << n;
    switch (model) {
        case NetModel::BA: os << "_m" << ba_m; break;
        case NetModel::ER: os << "_p" << er_p; break;
        case NetModel::WS: os << "_k" << ws_k << "_p" << ws_p; break;
    }
    return os.str();
}

Graph gen_er(node_t n, double p, std::uint64_t seed) {
    RandomStream rng(derive_seed(seed, "gen.er"));
    std::vector<std::pair<node_t, node_t>> edges;
    if (p > 0.0) {
        edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
        for (node_t i = 0; i < n; ++i) {
            for (node_t j = i + 1; j < n; ++j) {
                if (rng.bernoulli(p)) edges.emplace_back(i, j);
            }
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph gen_ba(node_t n, node_t m, std::uint64_t seed) {
    if (m < 1 || m >= n) throw Error("BA requires 1 <= m < n");
    RandomStream rng(derive_seed(seed, "gen.ba"));
    std::vector<std::pair<node_t, node_t>> edges;
    edges.reserve(static_cast<std::size_t>(m) * (n - m));
    // One entry per edge endpoint; uniform draws from this implement
    // degree-proportional attachment.
    std::vector<node_t> stubs;
    stubs.reserve(2 * edges.capacity());

    std::vector<node_t> targets;
    std::unordered_set<node_t> chosen;
    for (node_t arrival = m; arrival < n; ++arrival) {
        targets.clear();
        chosen.clear();
        if (stubs.empty()) {
            // First arrival: all existing nodes have degree zero, attach
            // uniformly, which with m targets among m seeds means all of them.
            for (node_t t = 0; t < arrival && static_cast<node_t>(targets.size()) < m; ++t) {
                targets.push_back(t);
            }
        } else {
            while (static_cast<node_t>(targets.size()) < m) {
                const node_t t = stubs[rng.below(stubs.size())];
                if (chosen.insert(t).second) targets.push_back(t);
            }
        }
        for (node_t t : targets) {
            edges.emplace_back(t, arrival);
            stubs.push_back(t);
            stubs.push_back(arrival);
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph gen_ws(node_t n, node_t k, double p, std::uint64_t seed) {
    if (k % 2 != 0 || k >= n || k < 0) throw Error("WS requires even k < n");
    RandomStream rng(derive_seed(seed, "gen.ws"));
    const node_t half = k / 2;

    // adjacency as hash sets during rewiring; compacted afterwards
    std::vector<std::unordered_set<node_t>> adj(n);
    auto connect = [&](node_t a, node_t b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    auto disconnect = [&](node_t a, node_t b) {
        adj[a].erase(b);
        adj[b].erase(a);
    };
    for (node_t i = 0; i < n; ++i) {
        for (node_t j = 1; j <= half; ++j) connect(i, (i + j) % n);
    }
    for (node_t j = 1; j <= half; ++j) {
        for (node_t i = 0; i < n; ++i) {
            if (!rng.bernoulli(p)) continue;
            const node_t old_far = (i + j) % n;
            if (!adj[i].contains(old_far)) continue; // already rewired away
            if (adj[i].size() >= static_cast<std::size_t>(n - 1)) continue; // saturated
            node_t target;
            do {
                target = static_cast<node_t>(rng.below(n));
            } while (target == i || adj[i].contains(target));
            disconnect(i, old_far);
            connect(i, target);
        }
    }

    std::vector<std::pair<node_t, node_t>> edges;
    edges.reserve(static_cast<std::size_t>(n) * half);
    for (node_t i = 0; i < n; ++i) {
        for (node_t j : adj[i]) {
            if (j > i) edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

namespace {

bool is_connected(const Graph& g) {
    if (g.node_count() == 0) return true;
    std::vector<char> visited(g.node_count(), 0);
    std::vector<node_t> stack{0};
    visited[0] = 1;
    node_t count = 0;
    while (!stack.empty()) {
        const node_t u = stack.back();
        stack.pop_back();
        ++count;
        for (node_t w : g.neighbors(u)) {
            if (!visited[w]) {
                visited[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return count == g.node_count();
}

} // namespace

Graph generate(const GenSpec& spec) {
    spec.validate();
    const int max_attempts = spec.require_connected ? 100 : 1;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const std::uint64_t seed = derive_seed(spec.seed, "gen.attempt", attempt);
        Graph g = [&] {
            switch (spec.model) {
                case NetModel::BA: return gen_ba(spec.n, spec.ba_m, seed);
                case NetModel::ER: return gen_er(spec.n, spec.er_p, seed);
                case NetModel::WS: return gen_ws(spec.n, spec.ws_k, spec.ws_p, seed);
            }
            throw Error("unreachable model");
        }();
        if (!spec.require_connected || is_connected(g)) return g;
    }
    throw Error("could not generate a connected " + spec.describe() + " in 100 attempts");
}

} // namespace pinctl
