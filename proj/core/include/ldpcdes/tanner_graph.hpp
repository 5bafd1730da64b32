#pragma once

// Finite-length Tanner graphs with typed check nodes: uniform random
// construction with duplicate-edge repair, progressive edge growth, the
// expansion to a binary parity-check matrix, and a brute-force minimum
// distance oracle for tiny codes.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ldpcdes/ensemble.hpp"
#include "ldpcdes/gf2.hpp"

namespace ldpcdes {

struct TannerGraph {
    struct CheckNode {
        CodeRef code;
        std::vector<int> sockets;  // socket index -> VN, in fill order
    };

    int n = 0;
    std::vector<int> vn_degrees;
    std::vector<CheckNode> checks;
    std::vector<std::vector<std::pair<int, int>>> vn_adj;  // vn -> (cn, socket)

    long edge_count() const;
    void rebuild_adjacency();
    // Checks: socket counts match code lengths, VN degrees match adjacency,
    // no duplicate (vn, cn) pair. Throws ComputeError on violation.
    void validate() const;
};

// Uniform random socket matching, with repeated local 2-edge swaps until no
// duplicate (vn, cn) pair remains; deterministic given the seed.
TannerGraph sample_random_code(const DegreeDistributionPair& ddp, long block_length, std::uint64_t seed);

// Progressive edge growth: VNs placed in nondecreasing degree order (seed
// shuffles ties within a degree class), each edge to a CN at maximal graph
// distance, ties broken by lowest fill then lowest index. Throws
// ComputeError when every remaining CN socket is ineligible.
TannerGraph peg_construct(const DegreeDistributionPair& ddp, long block_length, std::uint64_t seed);

struct ParityCheckMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<int>> row_cols;  // sorted column indices per row

    gf2::BitMatrix dense() const;
};

// Each CN of type t contributes its local
// parity-check rows (s_t - k_t of them) with columns given by its
// socket-connected VNs; SPC CNs contribute one row.
ParityCheckMatrix expand_parity_check(const TannerGraph& graph);

// Exhaustive minimum distance from a nullspace basis of H; requires code
// dimension <= 25 (throws ValidationError beyond). nullopt when the code
// has no nonzero codeword.
std::optional<int> brute_force_min_distance(const ParityCheckMatrix& h);

// Shortest cycle length (always even); INT_MAX when the graph is a forest.
int girth(const TannerGraph& graph);

}  // namespace ldpcdes
