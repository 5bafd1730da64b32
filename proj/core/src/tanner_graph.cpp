#include "ldpcdes/tanner_graph.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <queue>
#include <unordered_map>

#include "ldpcdes/rng.hpp"

namespace ldpcdes {

long TannerGraph::edge_count() const {
    long e = 0;
    for (int d : vn_degrees) e += d;
    return e;
}

void TannerGraph::rebuild_adjacency() {
    vn_adj.assign(n, {});
    for (size_t c = 0; c < checks.size(); ++c)
        for (size_t s = 0; s < checks[c].sockets.size(); ++s)
            vn_adj[checks[c].sockets[s]].emplace_back(static_cast<int>(c), static_cast<int>(s));
}

void TannerGraph::validate() const {
    std::vector<int> seen_degree(n, 0);
    std::unordered_map<std::uint64_t, int> pair_count;
    for (size_t c = 0; c < checks.size(); ++c) {
        const auto& cn = checks[c];
        if (!cn.code) throw ComputeError("tanner graph: check node without component code");
        if (static_cast<int>(cn.sockets.size()) != cn.code->length())
            throw ComputeError("tanner graph: socket count does not match code length");
        for (int vn : cn.sockets) {
            if (vn < 0 || vn >= n) throw ComputeError("tanner graph: socket out of range");
            ++seen_degree[vn];
            const std::uint64_t key = (static_cast<std::uint64_t>(vn) << 32) | c;
            if (++pair_count[key] > 1) throw ComputeError("tanner graph: duplicate (vn, cn) edge");
        }
    }
    for (int v = 0; v < n; ++v)
        if (seen_degree[v] != vn_degrees[v]) throw ComputeError("tanner graph: VN degree mismatch");
}

namespace {

struct Skeleton {
    std::vector<int> vn_degrees;           // per VN, ascending degree order
    std::vector<CodeRef> cn_codes;         // per CN
    long edges = 0;
};

Skeleton make_skeleton(const DegreeDistributionPair& ddp, long block_length) {
    const Realization r = node_counts(ddp, block_length);
    Skeleton sk;
    for (const auto& [d, c] : r.vn_counts)
        for (long i = 0; i < c; ++i) sk.vn_degrees.push_back(d);
    const auto& types = ddp.rho.types();
    for (size_t t = 0; t < types.size(); ++t)
        for (long i = 0; i < r.cn_counts[t]; ++i) sk.cn_codes.push_back(types[t].code);
    sk.edges = r.edges;
    return sk;
}

std::uint64_t edge_key(int vn, int cn) { return (static_cast<std::uint64_t>(vn) << 32) | static_cast<std::uint32_t>(cn); }

}  // namespace

TannerGraph sample_random_code(const DegreeDistributionPair& ddp, long block_length, std::uint64_t seed) {
    const Skeleton sk = make_skeleton(ddp, block_length);
    const long e = sk.edges;

    std::vector<int> vn_of_edge(e), cn_slots(e);
    {
        long idx = 0;
        for (size_t v = 0; v < sk.vn_degrees.size(); ++v)
            for (int j = 0; j < sk.vn_degrees[v]; ++j) vn_of_edge[idx++] = static_cast<int>(v);
        idx = 0;
        for (size_t c = 0; c < sk.cn_codes.size(); ++c)
            for (int j = 0; j < sk.cn_codes[c]->length(); ++j) cn_slots[idx++] = static_cast<int>(c);
    }

    constexpr int kMaxResamples = 100;
    for (int round = 0; round < kMaxResamples; ++round) {
        Rng rng(mix_seed(seed, 0x9e37, static_cast<std::uint64_t>(round)));
        std::vector<int> cn_of_edge = cn_slots;
        rng.shuffle(cn_of_edge);

        std::unordered_map<std::uint64_t, int> count;
        count.reserve(static_cast<size_t>(e) * 2);
        for (long i = 0; i < e; ++i) ++count[edge_key(vn_of_edge[i], cn_of_edge[i])];

        auto duplicated = [&](long i) { return count[edge_key(vn_of_edge[i], cn_of_edge[i])] > 1; };

        bool ok = true;
        long attempts = 0;
        const long cap = 10 * e;
        for (long i = 0; i < e;) {
            if (!duplicated(i)) {
                ++i;
                continue;
            }
            if (++attempts > cap) {
                ok = false;  // repair stall, resample from scratch
                break;
            }
            const long j = static_cast<long>(rng.below(static_cast<std::uint64_t>(e)));
            if (j == i || cn_of_edge[i] == cn_of_edge[j] || vn_of_edge[i] == vn_of_edge[j]) continue;
            const auto old_i = edge_key(vn_of_edge[i], cn_of_edge[i]);
            const auto old_j = edge_key(vn_of_edge[j], cn_of_edge[j]);
            --count[old_i];
            --count[old_j];
            const auto new_i = edge_key(vn_of_edge[i], cn_of_edge[j]);
            const auto new_j = edge_key(vn_of_edge[j], cn_of_edge[i]);
            if (count[new_i] == 0 && count[new_j] == 0) {
                ++count[new_i];
                ++count[new_j];
                std::swap(cn_of_edge[i], cn_of_edge[j]);
            } else {
                ++count[old_i];  // reject the swap
                ++count[old_j];
            }
        }
        if (!ok) continue;

        TannerGraph g;
        g.n = static_cast<int>(sk.vn_degrees.size());
        g.vn_degrees = sk.vn_degrees;
        g.checks.resize(sk.cn_codes.size());
        for (size_t c = 0; c < sk.cn_codes.size(); ++c) {
            g.checks[c].code = sk.cn_codes[c];
            g.checks[c].sockets.reserve(sk.cn_codes[c]->length());
        }
        for (long i = 0; i < e; ++i) g.checks[cn_of_edge[i]].sockets.push_back(vn_of_edge[i]);
        g.rebuild_adjacency();
        g.validate();
        return g;
    }
    throw ComputeError("sample_random_code: duplicate-edge repair stalled after " + std::to_string(kMaxResamples) +
                       " resamples");
}

TannerGraph peg_construct(const DegreeDistributionPair& ddp, long block_length, std::uint64_t seed) {
    const Skeleton sk = make_skeleton(ddp, block_length);
    const int n = static_cast<int>(sk.vn_degrees.size());
    const int m = static_cast<int>(sk.cn_codes.size());

    // Construction order: nondecreasing degree; the seed shuffles VNs within
    // one degree class (the placement freedom PEG leaves open).
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    {
        Rng rng(mix_seed(seed, 0x9e67, 1));
        rng.shuffle(order);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sk.vn_degrees[a] < sk.vn_degrees[b]; });
    }

    std::vector<std::vector<int>> cn_neighbors(m);  // cn -> vns
    std::vector<std::vector<int>> vn_neighbors(n);  // vn -> cns
    std::vector<int> fill(m, 0);

    auto best_of = [&](const std::vector<int>& candidates) {
        int best = -1;
        for (int c : candidates) {
            if (best < 0 || fill[c] < fill[best] || (fill[c] == fill[best] && c < best)) best = c;
        }
        return best;
    };

    std::vector<int> dist(m);
    std::vector<int> vn_seen(n);
    for (int v : order) {
        for (int edge = 0; edge < sk.vn_degrees[v]; ++edge) {
            std::vector<int> candidates;
            if (vn_neighbors[v].empty()) {
                for (int c = 0; c < m; ++c)
                    if (fill[c] < sk.cn_codes[c]->length()) candidates.push_back(c);
            } else {
                // BFS from v over the current graph; unreached CNs first,
                // otherwise the deepest layer.
                std::fill(dist.begin(), dist.end(), -1);
                std::fill(vn_seen.begin(), vn_seen.end(), 0);
                std::queue<int> frontier;  // VN indices
                frontier.push(v);
                vn_seen[v] = 1;
                int level = 0;
                std::vector<int> last_layer;
                while (!frontier.empty()) {
                    const size_t layer = frontier.size();
                    std::vector<int> reached;
                    for (size_t i = 0; i < layer; ++i) {
                        const int u = frontier.front();
                        frontier.pop();
                        for (int c : vn_neighbors[u]) {
                            if (dist[c] >= 0) continue;
                            dist[c] = level;
                            reached.push_back(c);
                            for (int w : cn_neighbors[c]) {
                                if (!vn_seen[w]) {
                                    vn_seen[w] = 1;
                                    frontier.push(w);
                                }
                            }
                        }
                    }
                    if (!reached.empty()) last_layer = std::move(reached);
                    ++level;
                }
                const auto adjacent = [&](int c) {
                    return std::find(vn_neighbors[v].begin(), vn_neighbors[v].end(), c) != vn_neighbors[v].end();
                };
                for (int c = 0; c < m; ++c)
                    if (dist[c] < 0 && fill[c] < sk.cn_codes[c]->length() && !adjacent(c)) candidates.push_back(c);
                if (candidates.empty()) {
                    int deepest = -1;
                    for (int c = 0; c < m; ++c)
                        if (dist[c] >= 0 && fill[c] < sk.cn_codes[c]->length() && !adjacent(c))
                            deepest = std::max(deepest, dist[c]);
                    for (int c = 0; c < m; ++c)
                        if (dist[c] == deepest && fill[c] < sk.cn_codes[c]->length() && !adjacent(c))
                            candidates.push_back(c);
                }
            }
            int chosen = best_of(candidates);
            if (chosen < 0) {
                // Capacity dead end: every CN not adjacent to v is full.
                // Free a slot by moving one edge from such a CN onto a CN
                // with spare capacity (4-cycle-free moves first).
                auto adjacent_v = [&](int c) {
                    return std::find(vn_neighbors[v].begin(), vn_neighbors[v].end(), c) != vn_neighbors[v].end();
                };
                for (int pass = 0; pass < 2 && chosen < 0; ++pass) {
                    for (int needed = 0; needed < m && chosen < 0; ++needed) {
                        if (adjacent_v(needed)) continue;
                        for (size_t ui = 0; ui < cn_neighbors[needed].size() && chosen < 0; ++ui) {
                            const int u = cn_neighbors[needed][ui];
                            if (u == v) continue;
                            for (int other = 0; other < m && chosen < 0; ++other) {
                                if (other == needed || fill[other] >= sk.cn_codes[other]->length()) continue;
                                if (std::find(vn_neighbors[u].begin(), vn_neighbors[u].end(), other) !=
                                    vn_neighbors[u].end())
                                    continue;
                                cn_neighbors[needed].erase(cn_neighbors[needed].begin() + ui);
                                auto u_slot = std::find(vn_neighbors[u].begin(), vn_neighbors[u].end(), needed);
                                *u_slot = other;
                                cn_neighbors[other].push_back(u);
                                bool bad = false;
                                if (pass == 0) {  // strict: keep the move 4-cycle-free
                                    for (int w : cn_neighbors[other]) {
                                        if (w == u) continue;
                                        for (int c : vn_neighbors[w]) {
                                            if (c != other && std::find(vn_neighbors[u].begin(),
                                                                        vn_neighbors[u].end(),
                                                                        c) != vn_neighbors[u].end())
                                                bad = true;
                                        }
                                    }
                                }
                                if (bad) {
                                    cn_neighbors[other].pop_back();
                                    *u_slot = needed;
                                    cn_neighbors[needed].insert(cn_neighbors[needed].begin() + ui, u);
                                    continue;
                                }
                                ++fill[other];
                                --fill[needed];
                                chosen = needed;
                            }
                        }
                    }
                }
                if (chosen < 0)
                    throw ComputeError("peg_construct: no eligible CN (socket capacity exhausted) at VN " +
                                       std::to_string(v));
            }

            // Hard socket capacities (absent from capacity-free PEG) can
            // corner the endgame: the only free slot sits at distance 1 and
            // would close a 4-cycle. Relocate one edge from a far CN onto
            // the free slot instead, keeping both new edges 4-cycle-free.
            if (!vn_neighbors[v].empty() && dist[chosen] == 1) {
                // Would adding (vn, cn) close a 4-cycle in the current state?
                auto creates_4cycle = [&](int vn, int cn) {
                    for (int w : cn_neighbors[cn]) {
                        if (w == vn) continue;
                        for (int c : vn_neighbors[w]) {
                            if (c == cn) continue;
                            if (std::find(vn_neighbors[vn].begin(), vn_neighbors[vn].end(), c) !=
                                vn_neighbors[vn].end())
                                return true;
                        }
                    }
                    return false;
                };
                bool relocated = false;
                for (int c2 = 0; c2 < m && !relocated; ++c2) {
                    if (dist[c2] >= 0 && dist[c2] < 2) continue;  // want distance >= 2 or unreached
                    if (c2 == chosen) continue;
                    if (std::find(vn_neighbors[v].begin(), vn_neighbors[v].end(), c2) != vn_neighbors[v].end())
                        continue;
                    for (size_t ui = 0; ui < cn_neighbors[c2].size() && !relocated; ++ui) {
                        const int u = cn_neighbors[c2][ui];
                        if (u == v) continue;
                        if (std::find(vn_neighbors[u].begin(), vn_neighbors[u].end(), chosen) !=
                            vn_neighbors[u].end())
                            continue;
                        // tentative move u: c2 -> chosen, validate, else roll back
                        cn_neighbors[c2].erase(cn_neighbors[c2].begin() + ui);
                        auto u_slot = std::find(vn_neighbors[u].begin(), vn_neighbors[u].end(), c2);
                        *u_slot = chosen;
                        cn_neighbors[chosen].push_back(u);
                        if (creates_4cycle(u, chosen) || creates_4cycle(v, c2)) {
                            cn_neighbors[chosen].pop_back();
                            *u_slot = c2;
                            cn_neighbors[c2].insert(cn_neighbors[c2].begin() + ui, u);
                            continue;
                        }
                        ++fill[chosen];
                        --fill[c2];
                        chosen = c2;
                        relocated = true;
                    }
                }
            }

            cn_neighbors[chosen].push_back(v);
            vn_neighbors[v].push_back(chosen);
            ++fill[chosen];
        }
    }

    TannerGraph g;
    g.n = n;
    g.vn_degrees = sk.vn_degrees;
    g.checks.resize(m);
    for (int c = 0; c < m; ++c) {
        g.checks[c].code = sk.cn_codes[c];
        g.checks[c].sockets = cn_neighbors[c];
    }
    g.rebuild_adjacency();
    g.validate();
    return g;
}

gf2::BitMatrix ParityCheckMatrix::dense() const {
    gf2::BitMatrix h(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c : row_cols[r]) h.flip(r, c);
    return h;
}

ParityCheckMatrix expand_parity_check(const TannerGraph& graph) {
    ParityCheckMatrix out;
    out.cols = graph.n;
    for (const auto& cn : graph.checks) {
        const auto& local = cn.code->parity_check();
        for (int r = 0; r < local.rows(); ++r) {
            std::vector<int> cols;
            for (int s = 0; s < local.cols(); ++s)
                if (local.get(r, s)) cols.push_back(cn.sockets[s]);
            std::sort(cols.begin(), cols.end());
            // duplicate sockets to one VN would cancel over GF(2); graphs
            // forbid them, but keep the expansion well-defined anyway
            std::vector<int> reduced;
            for (size_t i = 0; i < cols.size();) {
                size_t j = i;
                while (j < cols.size() && cols[j] == cols[i]) ++j;
                if ((j - i) % 2 == 1) reduced.push_back(cols[i]);
                i = j;
            }
            out.row_cols.push_back(std::move(reduced));
        }
    }
    out.rows = static_cast<int>(out.row_cols.size());
    return out;
}

std::optional<int> brute_force_min_distance(const ParityCheckMatrix& h) {
    const gf2::BitMatrix dense = h.dense();
    const gf2::BitMatrix basis = gf2::nullspace(dense);
    const int k = basis.rows();
    if (k > 25) throw ValidationError("brute_force_min_distance: dimension " + std::to_string(k) + " > 25");
    if (k == 0) return std::nullopt;

    const size_t words = basis.row(0).size();
    std::vector<std::uint64_t> acc(words, 0);
    int best = INT_MAX;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
        const auto row = basis.row(std::countr_zero(i));
        int weight = 0;
        for (size_t w = 0; w < words; ++w) {
            acc[w] ^= row[w];
            weight += std::popcount(acc[w]);
        }
        best = std::min(best, weight);
    }
    return best;
}

int girth(const TannerGraph& graph) {
    // BFS from every VN over the bipartite graph; a non-tree edge closing
    // two BFS branches yields a cycle of length dist(u) + dist(w) + 2.
    int best = INT_MAX;
    const int m = static_cast<int>(graph.checks.size());
    std::vector<int> dist_vn(graph.n), dist_cn(m), parent_cn(m), parent_vn(graph.n);
    for (int start = 0; start < graph.n; ++start) {
        std::fill(dist_vn.begin(), dist_vn.end(), -1);
        std::fill(dist_cn.begin(), dist_cn.end(), -1);
        std::fill(parent_cn.begin(), parent_cn.end(), -1);
        std::fill(parent_vn.begin(), parent_vn.end(), -1);
        std::queue<int> q;  // encoded: vn = 2v, cn = 2c+1
        dist_vn[start] = 0;
        q.push(start << 1);
        while (!q.empty()) {
            const int node = q.front();
            q.pop();
            if ((node & 1) == 0) {
                const int v = node >> 1;
                for (const auto& [c, socket] : graph.vn_adj[v]) {
                    (void)socket;
                    if (dist_cn[c] < 0) {
                        dist_cn[c] = dist_vn[v] + 1;
                        parent_cn[c] = v;
                        q.push((c << 1) | 1);
                    } else if (parent_cn[c] != v && parent_vn[v] != c) {
                        best = std::min(best, dist_cn[c] + dist_vn[v] + 1);
                    }
                }
            } else {
                const int c = node >> 1;
                for (int v : graph.checks[c].sockets) {
                    if (dist_vn[v] < 0) {
                        dist_vn[v] = dist_cn[c] + 1;
                        parent_vn[v] = c;
                        q.push(v << 1);
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace ldpcdes
