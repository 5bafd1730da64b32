#include "ldpcdes/component_code.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>

namespace ldpcdes {

namespace {

constexpr int kMaxEnumLength = 16;  // pattern enumeration cap (2^16 patterns)

}  // namespace

std::shared_ptr<const ComponentCode> ComponentCode::finish(std::string id, gf2::BitMatrix h, bool spc) {
    auto code = std::shared_ptr<ComponentCode>(new ComponentCode());
    code->id_ = std::move(id);
    code->s_ = h.cols();
    code->h_ = std::move(h);
    code->spc_ = spc;
    code->g_ = gf2::nullspace(code->h_);
    code->k_ = code->g_.rows();
    if (code->k_ != code->s_ - gf2::rank(code->h_))
        throw ComputeError("component code: generator rank mismatch for " + code->id_);

    // Weight enumerator by codeword enumeration (Gray code over G rows).
    if (code->k_ > 20) throw ValidationError("component code dimension too large: " + code->id_);
    code->weight_enum_.assign(code->s_ + 1, 0);
    if (code->s_ > 64) throw ValidationError("component code length too large: " + code->id_);
    std::uint64_t word = 0;
    code->weight_enum_[0] = 1;
    std::vector<std::uint64_t> rows(code->k_);
    for (int i = 0; i < code->k_; ++i) rows[i] = code->g_.row(i)[0];
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << code->k_); ++i) {
        word ^= rows[std::countr_zero(i)];
        ++code->weight_enum_[std::popcount(word)];
    }

    code->r_ = 0;
    for (int w = 1; w <= code->s_; ++w) {
        if (code->weight_enum_[w] > 0) {
            code->r_ = w;
            break;
        }
    }

    // Contract checks: G·Hᵀ = 0 and A_0 = 1, Σ A_w = 2^k hold by
    // construction; verify cheaply anyway so broken edits surface here.
    const gf2::BitMatrix prod = gf2::multiply(code->g_, gf2::transpose(code->h_));
    for (int i = 0; i < prod.rows(); ++i)
        if (!prod.row_empty(i)) throw ComputeError("component code: G·Hᵀ != 0 for " + code->id_);

    if (code->s_ <= kMaxEnumLength) code->build_exit_table();
    return code;
}

void ComponentCode::build_exit_table() {
    // For every erasure pattern, eliminate on the erased columns only; a
    // fully reduced pivot row pins its position to the parity of the known
    // positions it touches. One pass fills both the mask tables used by the
    // peeling decoder and the subset counts behind the exact EXIT function.
    const std::uint32_t npat = 1u << s_;
    resolve_mask_.assign(npat, 0);
    resolve_comb_.assign(static_cast<size_t>(npat) * s_, 0);
    resolve_counts_.assign(s_, std::vector<double>(s_, 0.0));

    std::vector<std::uint32_t> hrows(h_.rows());
    for (int r = 0; r < h_.rows(); ++r) hrows[r] = static_cast<std::uint32_t>(h_.row(r)[0]);

    std::vector<std::uint32_t> work(hrows.size());
    std::vector<int> pivot_col(hrows.size());
    for (std::uint32_t pattern = 0; pattern < npat; ++pattern) {
        work = hrows;
        std::fill(pivot_col.begin(), pivot_col.end(), -1);
        size_t next_row = 0;
        for (int c = 0; c < s_ && next_row < work.size(); ++c) {
            if (!(pattern >> c & 1u)) continue;  // pivot on erased columns only
            size_t found = next_row;
            while (found < work.size() && !(work[found] >> c & 1u)) ++found;
            if (found == work.size()) continue;
            std::swap(work[next_row], work[found]);
            for (size_t r = 0; r < work.size(); ++r)
                if (r != next_row && (work[r] >> c & 1u)) work[r] ^= work[next_row];
            pivot_col[next_row] = c;
            ++next_row;
        }
        for (size_t r = 0; r < next_row; ++r) {
            const int j = pivot_col[r];
            if ((work[r] & pattern) != (1u << j)) continue;  // free erased columns remain
            resolve_mask_[pattern] |= 1u << j;
            resolve_comb_[static_cast<size_t>(pattern) * s_ + j] = static_cast<std::uint16_t>(work[r] & ~pattern);
        }
    }

    const std::uint32_t full = npat - 1;
    for (std::uint32_t pattern = 0; pattern < npat; ++pattern) {
        const int known = std::popcount(full & ~pattern);
        std::uint32_t rem = resolve_mask_[pattern];
        while (rem) {
            const int j = std::countr_zero(rem);
            rem &= rem - 1;
            resolve_counts_[j][known] += 1.0;
        }
    }
}

void ComponentCode::solve_erasure_masks(std::uint32_t erased, std::uint32_t ones, std::uint32_t& resolved,
                                        std::uint32_t& values) const {
    resolved = resolve_mask_[erased];
    values = 0;
    std::uint32_t rem = resolved;
    while (rem) {
        const int j = std::countr_zero(rem);
        rem &= rem - 1;
        if (std::popcount(resolve_comb_[static_cast<size_t>(erased) * s_ + j] & ones) & 1) values |= 1u << j;
    }
}

std::shared_ptr<const ComponentCode> ComponentCode::spc(int s) {
    if (s < 3) throw ValidationError("spc length must be >= 3, got " + std::to_string(s));
    gf2::BitMatrix h(1, s);
    for (int c = 0; c < s; ++c) h.set(0, c, true);
    return finish("spc-" + std::to_string(s), std::move(h), true);
}

std::shared_ptr<const ComponentCode> ComponentCode::hamming(int m) {
    if (m != 3 && m != 4) throw ValidationError("hamming: only m in {3,4} supported, got " + std::to_string(m));
    const int s = (1 << m) - 1;
    gf2::BitMatrix h(m, s);
    for (int c = 0; c < s; ++c) {
        const int value = c + 1;  // columns count 1..2^m-1
        for (int b = 0; b < m; ++b)
            if (value >> b & 1) h.set(b, c, true);
    }
    const std::string id = (m == 3) ? "hamming-7-4" : "hamming-15-11";
    return finish(id, std::move(h), false);
}

std::shared_ptr<const ComponentCode> ComponentCode::from_parity_check(std::string id, gf2::BitMatrix h) {
    return finish(std::move(id), std::move(h), false);
}

std::shared_ptr<const ComponentCode> ComponentCode::from_id(const std::string& id) {
    static std::mutex mu;
    static std::map<std::string, CodeRef> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(id);
        if (it != cache.end()) return it->second;
    }
    CodeRef code;
    if (id.rfind("spc-", 0) == 0) {
        int s = 0;
        try {
            s = std::stoi(id.substr(4));
        } catch (const std::exception&) {
            throw ValidationError("bad component code id: " + id);
        }
        code = spc(s);
    } else if (id == "hamming-7-4") {
        code = hamming(3);
    } else if (id == "hamming-15-11") {
        code = hamming(4);
    } else {
        throw ValidationError("unknown component code id: " + id);
    }
    std::lock_guard lock(mu);
    cache.emplace(id, code);
    return code;
}

std::vector<Bit> ComponentCode::map_erasure_decode(std::span<const Bit> word) const {
    if (static_cast<int>(word.size()) != s_)
        throw ValidationError("map_erasure_decode: word length " + std::to_string(word.size()) + " != " + std::to_string(s_));
    std::vector<Bit> out(word.begin(), word.end());
    if (!gf2::solve_erasures(h_, out))
        throw ValidationError("map_erasure_decode: known positions match no codeword of " + id_);
    return out;
}

double ComponentCode::bec_exit(double i_a) const {
    if (spc_) return std::pow(i_a, s_ - 1);
    return bec_exit_enumerated(i_a);
}

double ComponentCode::bec_exit_enumerated(double i_a) const {
    if (resolve_counts_.empty())
        throw ValidationError("bec_exit: enumeration unsupported for length " + std::to_string(s_));
    // (1/s) Σ_j Σ_w counts[j][w] · i_a^w (1-i_a)^(s-1-w)
    std::vector<double> pk(s_), pu(s_);
    pk[0] = pu[0] = 1.0;
    for (int w = 1; w < s_; ++w) {
        pk[w] = pk[w - 1] * i_a;
        pu[w] = pu[w - 1] * (1.0 - i_a);
    }
    double acc = 0.0;
    for (int j = 0; j < s_; ++j)
        for (int w = 0; w < s_; ++w)
            if (resolve_counts_[j][w] != 0.0) acc += resolve_counts_[j][w] * pk[w] * pu[s_ - 1 - w];
    return acc / s_;
}

}  // namespace ldpcdes
