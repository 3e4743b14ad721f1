#pragma once

#include "pinctl/graph.hpp"

#include <cstdint>
#include <string>

namespace pinctl {

enum class NetModel { BA, ER, WS };

const char* model_name(NetModel m);
NetModel model_from_name(const std::string& name);

/// Parameters for one synthetic network. Generation is a pure function of
/// (spec, seed): the same inputs always produce the same edge set.
struct GenSpec {
    NetModel model = NetModel::ER;
    node_t n = 0;
    node_t ba_m = 3;       // BA: edges per arriving node
    double er_p = 0.1;     // ER: edge probability
    node_t ws_k = 10;      // WS: ring-lattice degree (even)
    double ws_p = 0.1;     // WS: rewiring probability
    std::uint64_t seed = 0;
    bool require_connected = false;

    void validate() const;
    std::string describe() const;
};

Graph generate(const GenSpec& spec);

/// Erdos-Renyi: each unordered pair present independently with probability p.
Graph gen_er(node_t n, double p, std::uint64_t seed);

/// Barabasi-Albert: m isolated seed nodes; each arriving node attaches to m
/// distinct existing nodes by preferential attachment (the first arrival
/// attaches uniformly, i.e. to all m seeds). M = m*(n-m).
Graph gen_ba(node_t n, node_t m, std::uint64_t seed);

/// Watts-Strogatz: ring lattice with k/2 neighbors per side; the far endpoint
/// of every edge is rewired with probability p to a uniform target, resampled
/// on self-loop/duplicate collisions. M = n*k/2.
Graph gen_ws(node_t n, node_t k, double p, std::uint64_t seed);

} // namespace pinctl
