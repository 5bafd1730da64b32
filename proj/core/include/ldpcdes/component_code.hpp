#pragma once

// Local linear block codes placed at check nodes: single parity-check codes
// and the (7,4)/(15,11) Hamming codes, with weight enumerators, MAP erasure
// decoding and exact BEC EXIT functions.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ldpcdes/common.hpp"
#include "ldpcdes/gf2.hpp"

namespace ldpcdes {

class ComponentCode {
public:
    // (s, s-1) even-weight code, s >= 3.
    static std::shared_ptr<const ComponentCode> spc(int s);
    // (2^m-1, 2^m-1-m) Hamming code, m in {3, 4}; H columns enumerate
    // 1..2^m-1 in natural binary counting order.
    static std::shared_ptr<const ComponentCode> hamming(int m);
    // Parses "spc-<s>", "hamming-7-4", "hamming-15-11".
    static std::shared_ptr<const ComponentCode> from_id(const std::string& id);
    // General constructor from an explicit parity-check matrix (used by
    // tests to probe column-order equivalence). Dimension must be <= 20.
    static std::shared_ptr<const ComponentCode> from_parity_check(std::string id, gf2::BitMatrix h);

    int length() const { return s_; }
    int dimension() const { return k_; }
    double rate() const { return static_cast<double>(k_) / s_; }
    int min_distance() const { return r_; }
    const std::string& id() const { return id_; }
    bool is_spc() const { return spc_; }

    const gf2::BitMatrix& generator() const { return g_; }
    const gf2::BitMatrix& parity_check() const { return h_; }
    // A_0..A_s; sums to 2^k.
    const std::vector<std::uint64_t>& weight_enumerator() const { return weight_enum_; }
    std::uint64_t weight_count(int w) const { return weight_enum_[w]; }

    // Fills every erasure whose value agrees across all consistent local
    // codewords (MAP-optimal on the BEC); ambiguous positions stay erased.
    // Throws ValidationError when the known positions match no codeword.
    std::vector<Bit> map_erasure_decode(std::span<const Bit> word) const;

    // P(a position is recovered by MAP erasure decoding | each other
    // position known independently with prob i_a), averaged over positions.
    // Exact: pattern enumeration for s <= 16, closed form i_a^(s-1) for SPC.
    double bec_exit(double i_a) const;
    // Enumeration path regardless of the SPC fast path (s <= 16 only).
    double bec_exit_enumerated(double i_a) const;

    // Allocation-free MAP erasure solve on bit masks (s <= 16): given the
    // erased-position mask and the known one-values mask, reports which
    // erasures resolve and their values. Pattern tables are precomputed at
    // construction, so this is a table lookup plus one parity per position.
    void solve_erasure_masks(std::uint32_t erased, std::uint32_t ones, std::uint32_t& resolved,
                             std::uint32_t& values) const;
    bool has_mask_tables() const { return !resolve_mask_.empty(); }

private:
    ComponentCode() = default;
    static std::shared_ptr<const ComponentCode> finish(std::string id, gf2::BitMatrix h, bool spc);
    void build_exit_table();

    std::string id_;
    int s_ = 0;
    int k_ = 0;
    int r_ = 0;
    bool spc_ = false;
    gf2::BitMatrix g_;
    gf2::BitMatrix h_;
    std::vector<std::uint64_t> weight_enum_;
    // resolve_counts_[j][w] = number of size-w subsets S of the other s-1
    // positions such that MAP decoding recovers position j when exactly the
    // positions in S are known. Empty when enumeration is unsupported.
    std::vector<std::vector<double>> resolve_counts_;
    // Per erasure-pattern mask: resolvable positions, and for each position
    // the known-position combination whose parity gives its value.
    std::vector<std::uint16_t> resolve_mask_;
    std::vector<std::uint16_t> resolve_comb_;  // [pattern * s + j]
};

using CodeRef = std::shared_ptr<const ComponentCode>;

}  // namespace ldpcdes
