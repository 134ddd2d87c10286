/**
 * Problem instances: weighted oscillator networks, topology classification,
 * and the tree bookkeeping (parent/depth/descendants, re-indexing) used by
 * the tree transforms.
 *
 * Vertex 0 is always the grounded reference (theta_0 = 0, x_0 = 1); input
 * files index vertices 0..N-1. Stored weights are the algebraic a'_ij
 * (the physical coupling divided by 2i); asymmetric a'_ij != a'_ji is
 * permitted and stored separately.
 */
#pragma once

#include "numeric.hpp"
#include "polytope.hpp"
#include "rng.hpp"

#include <complex>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace kap {

using Complex = std::complex<double>;

enum class Topology { Tree, Cycle, General };

struct TopologyClass {
    Topology tag;
    int N;
};

struct OscillatorNetwork {
    int N = 0;                               // vertex count, vertices 0..N-1
    std::vector<std::pair<int, int>> edges;  // unordered pairs i < j
    std::map<std::pair<int, int>, Complex> weights; // directed a'_ij for both orders
    std::vector<Complex> omega;              // omega_1..omega_{N-1}
    bool symmetric_weights = false;          // a'_ij == a'_ji on every edge
    bool symmetric_real = false;             // generated in physical mode (a_ij real > 0, omega real)
    std::string id;                          // provenance tag (topology:N:seed or file name)

    int n() const { return N - 1; }

    Complex weight(int i, int j) const { return weights.at({i, j}); }

    std::vector<int> neighbors(int i) const {
        std::vector<int> out;
        for (auto [a, b] : edges) {
            if (a == i) out.push_back(b);
            if (b == i) out.push_back(a);
        }
        return out;
    }

    void validate() const {
        if (N < 2) throw std::invalid_argument("network needs at least two vertices");
        if (static_cast<int>(omega.size()) != N - 1)
            throw std::invalid_argument("omega length mismatch: expected N-1 entries");
        std::set<std::pair<int, int>> seen;
        for (auto [i, j] : edges) {
            if (i == j) throw std::invalid_argument("self-loop");
            if (i < 0 || j < 0 || i >= N || j >= N)
                throw std::invalid_argument("edge endpoint out of range");
            auto key = std::minmax(i, j);
            if (!seen.insert({key.first, key.second}).second)
                throw std::invalid_argument("duplicate edge");
            if (weights.at({i, j}) == Complex(0) || weights.at({j, i}) == Complex(0))
                throw std::invalid_argument("zero weight");
        }
    }

    bool connected() const {
        std::vector<char> vis(N, 0);
        std::queue<int> q;
        q.push(0);
        vis[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : neighbors(u))
                if (!vis[v]) {
                    vis[v] = 1;
                    ++cnt;
                    q.push(v);
                }
        }
        return cnt == N;
    }
};

struct TreeStructure {
    int N = 0;
    std::vector<int> parent;               // parent[i] for i=1..n, parent[0] = -1
    std::vector<int> depth;                // depth[0] = 0
    std::vector<std::set<int>> descendants;
    std::vector<int> reindex_perm;         // perm[old] = new; fixes 0; parent'(i) < i

    /// k-fold parent in the original labeling.
    int ancestor(int i, int k) const {
        while (k-- > 0) i = parent[i];
        return i;
    }
};

inline TopologyClass classify(const OscillatorNetwork& net) {
    if (!net.connected()) throw std::invalid_argument("disconnected network");
    const int E = static_cast<int>(net.edges.size());
    if (E == net.N - 1) return {Topology::Tree, net.N};
    bool two_regular = true;
    for (int i = 0; i < net.N; ++i)
        if (static_cast<int>(net.neighbors(i).size()) != 2) two_regular = false;
    if (E == net.N && two_regular) return {Topology::Cycle, net.N};
    return {Topology::General, net.N};
}

inline TreeStructure tree_structure(const OscillatorNetwork& net) {
    if (classify(net).tag != Topology::Tree) throw std::invalid_argument("not a tree");
    TreeStructure t;
    t.N = net.N;
    t.parent.assign(net.N, -1);
    t.depth.assign(net.N, 0);
    t.descendants.assign(net.N, {});
    std::vector<int> order{0};
    std::vector<char> vis(net.N, 0);
    vis[0] = 1;
    for (std::size_t h = 0; h < order.size(); ++h) {
        int u = order[h];
        for (int v : net.neighbors(u)) {
            if (vis[v]) continue;
            vis[v] = 1;
            t.parent[v] = u;
            t.depth[v] = t.depth[u] + 1;
            order.push_back(v);
        }
    }
    for (int v = 1; v < net.N; ++v)
        for (int a = t.parent[v]; a != -1; a = t.parent[a]) t.descendants[a].insert(v);
    // BFS order gives parent-before-child, hence pi(i) < i after relabeling
    t.reindex_perm.assign(net.N, 0);
    for (int pos = 0; pos < net.N; ++pos) t.reindex_perm[order[pos]] = pos;
    return t;
}

/// Network with vertices relabeled by perm (perm[old] = new).
inline OscillatorNetwork relabel(const OscillatorNetwork& net, const std::vector<int>& perm) {
    OscillatorNetwork out;
    out.N = net.N;
    out.symmetric_weights = net.symmetric_weights;
    out.symmetric_real = net.symmetric_real;
    out.id = net.id;
    // omega indexed by vertex 1..N-1
    out.omega.assign(net.N - 1, Complex(0));
    for (int i = 1; i < net.N; ++i) out.omega[perm[i] - 1] = net.omega[i - 1];
    for (auto [i, j] : net.edges) {
        int a = perm[i], b = perm[j];
        out.edges.emplace_back(std::min(a, b), std::max(a, b));
        out.weights[{a, b}] = net.weights.at({i, j});
        out.weights[{b, a}] = net.weights.at({j, i});
    }
    return out;
}

/// Exponent matrix A of the tree substitution x = y^A (column i is the
/// exponent vector of phi_i = y_i * prod_k y_{pi^k(i)}). Requires the
/// pi(i) < i indexing; A is upper triangular with unit diagonal.
inline UnimodularMap tree_exponent_matrix(const TreeStructure& t) {
    const int n = t.N - 1;
    for (int i = 1; i <= n; ++i)
        if (t.parent[i] >= i) throw std::invalid_argument("tree not in pi(i) < i indexing");
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n, Int(0)));
    for (int i = 1; i <= n; ++i) {
        a[i - 1][i - 1] = 1;
        int anc = t.parent[i];
        while (anc != 0 && anc != -1) {
            a[anc - 1][i - 1] = 1;
            anc = t.parent[anc];
        }
    }
    return UnimodularMap(std::move(a));
}

enum class GenTopology { Path, Star, RandomTree, Cycle };

/// Deterministic network for (topology, N, seed). Generic mode draws complex
/// weights/omega with parts uniform in [-1,1] bounded away from 0; the
/// symmetric-real mode draws physical instances (a_ij = a_ji real positive,
/// omega real) for torus/sine-system tests.
inline OscillatorNetwork generate(GenTopology topo, int N, std::uint64_t seed,
                                  bool symmetric_real = false) {
    if (N < 2 || (topo == GenTopology::Cycle && N < 3))
        throw std::invalid_argument("N out of range");
    Rng rng(seed ^ (static_cast<std::uint64_t>(N) << 32) ^ static_cast<std::uint64_t>(topo));
    OscillatorNetwork net;
    net.N = N;
    switch (topo) {
    case GenTopology::Path:
        for (int i = 0; i + 1 < N; ++i) net.edges.emplace_back(i, i + 1);
        net.id = "path:" + std::to_string(N);
        break;
    case GenTopology::Star:
        for (int i = 1; i < N; ++i) net.edges.emplace_back(0, i);
        net.id = "star:" + std::to_string(N);
        break;
    case GenTopology::RandomTree:
        for (int i = 1; i < N; ++i)
            net.edges.emplace_back(static_cast<int>(rng.next_below(i)), i);
        net.id = "random-tree:" + std::to_string(N);
        break;
    case GenTopology::Cycle:
        for (int i = 0; i + 1 < N; ++i) net.edges.emplace_back(i, i + 1);
        net.edges.emplace_back(N - 1, 0);
        net.id = "cycle:" + std::to_string(N);
        break;
    }
    net.id += ":" + std::to_string(seed);
    net.symmetric_real = symmetric_real;
    for (auto [i, j] : net.edges) {
        if (symmetric_real) {
            // physical coupling a_ij in [0.25, 1.25]; a'_ij = a_ij / (2i)
            double a = 0.25 + rng.next_unit();
            Complex ap = Complex(a, 0) / Complex(0, 2);
            net.weights[{i, j}] = ap;
            net.weights[{j, i}] = ap;
        } else {
            net.weights[{i, j}] = rng.next_generic_complex();
            net.weights[{j, i}] = rng.next_generic_complex();
        }
    }
    net.omega.resize(N - 1);
    for (int i = 0; i < N - 1; ++i) {
        if (symmetric_real)
            net.omega[i] = Complex(0.1 * rng.next_generic(), 0);
        else
            net.omega[i] = rng.next_generic_complex();
    }
    net.symmetric_weights = true;
    for (auto [i, j] : net.edges)
        if (net.weights[{i, j}] != net.weights[{j, i}]) net.symmetric_weights = false;
    net.validate();
    return net;
}

/// Physical coupling a_ij = 2i * a'_ij (real for symmetric-real instances).
inline Complex physical_coupling(const OscillatorNetwork& net, int i, int j) {
    return Complex(0, 2) * net.weight(i, j);
}

} // namespace kap
