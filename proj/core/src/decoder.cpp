#include "ldpcdes/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ldpcdes {

namespace {

constexpr double kLlrClamp = 30.0;

double boxplus(double a, double b) {
    // exact: sign(a)sign(b) min(|a|,|b|) + log1p(e^-|a+b|) - log1p(e^-|a-b|)
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    const double m = std::min(std::abs(a), std::abs(b));
    return sign * m + std::log1p(std::exp(-std::abs(a + b))) - std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

BecDecodeResult decode_bec(const TannerGraph& graph, std::vector<Bit> received, int i_max) {
    if (static_cast<int>(received.size()) != graph.n) throw ValidationError("decode_bec: word length mismatch");
    BecDecodeResult result{std::move(received), 0};
    auto& word = result.word;

    // Only CNs whose neighborhood changed since their last activation can
    // resolve anything new; start with all of them.
    std::vector<std::uint8_t> dirty(graph.checks.size(), 1);
    std::vector<int> dirty_list(graph.checks.size());
    for (size_t c = 0; c < graph.checks.size(); ++c) dirty_list[c] = static_cast<int>(c);

    std::vector<Bit> local;
    std::vector<std::pair<int, Bit>> resolved;
    for (int round = 1; round <= i_max && !dirty_list.empty(); ++round) {
        resolved.clear();
        for (int c : dirty_list) {
            dirty[c] = 0;
            const auto& cn = graph.checks[c];
            const auto& sockets = cn.sockets;
            int erased = 0;
            for (int vn : sockets) erased += (word[vn] == Bit::Erased);
            if (erased == 0) continue;
            if (cn.code->is_spc()) {
                if (erased != 1) continue;
                bool parity = false;
                int hole = -1;
                for (int vn : sockets) {
                    if (word[vn] == Bit::Erased)
                        hole = vn;
                    else if (word[vn] == Bit::One)
                        parity = !parity;
                }
                resolved.emplace_back(hole, parity ? Bit::One : Bit::Zero);
                continue;
            }
            if (cn.code->has_mask_tables()) {
                std::uint32_t erased_mask = 0, ones_mask = 0;
                for (size_t s = 0; s < sockets.size(); ++s) {
                    if (word[sockets[s]] == Bit::Erased)
                        erased_mask |= 1u << s;
                    else if (word[sockets[s]] == Bit::One)
                        ones_mask |= 1u << s;
                }
                std::uint32_t res = 0, val = 0;
                cn.code->solve_erasure_masks(erased_mask, ones_mask, res, val);
                while (res) {
                    const int s = std::countr_zero(res);
                    res &= res - 1;
                    resolved.emplace_back(sockets[s], (val >> s & 1u) ? Bit::One : Bit::Zero);
                }
                continue;
            }
            local.assign(sockets.size(), Bit::Erased);
            for (size_t s = 0; s < sockets.size(); ++s) local[s] = word[sockets[s]];
            const std::vector<Bit> decoded = cn.code->map_erasure_decode(local);
            for (size_t s = 0; s < sockets.size(); ++s)
                if (local[s] == Bit::Erased && decoded[s] != Bit::Erased) resolved.emplace_back(sockets[s], decoded[s]);
        }
        if (resolved.empty()) break;

        dirty_list.clear();
        for (const auto& [vn, value] : resolved) {
            if (word[vn] != Bit::Erased) {
                if (word[vn] != value)
                    throw ValidationError("decode_bec: conflicting resolutions (received word is inconsistent)");
                continue;
            }
            word[vn] = value;
            for (const auto& [c, socket] : graph.vn_adj[vn]) {
                (void)socket;
                if (!dirty[c]) {
                    dirty[c] = 1;
                    dirty_list.push_back(c);
                }
            }
        }
        result.iterations_used = round;
    }
    return result;
}

AwgnDecodeResult decode_awgn(const TannerGraph& graph, std::span<const double> channel_llrs, int i_max) {
    if (static_cast<int>(channel_llrs.size()) != graph.n) throw ValidationError("decode_awgn: LLR length mismatch");
    for (const auto& cn : graph.checks)
        if (!cn.code->is_spc()) throw ValidationError("decode_awgn: generalized CNs unsupported on the AWGN channel");

    AwgnDecodeResult result;
    result.llr_app.assign(channel_llrs.begin(), channel_llrs.end());

    // Edge storage in CN-socket order.
    const size_t n_edges = static_cast<size_t>(graph.edge_count());
    std::vector<int> edge_vn(n_edges);
    std::vector<size_t> cn_offset(graph.checks.size() + 1, 0);
    {
        size_t e = 0;
        for (size_t c = 0; c < graph.checks.size(); ++c) {
            cn_offset[c] = e;
            for (int vn : graph.checks[c].sockets) edge_vn[e++] = vn;
        }
        cn_offset[graph.checks.size()] = e;
    }

    std::vector<double> vc(n_edges), cv(n_edges, 0.0);
    for (size_t e = 0; e < n_edges; ++e) vc[e] = std::clamp(channel_llrs[edge_vn[e]], -kLlrClamp, kLlrClamp);

    auto hard_bit = [](double llr) -> std::uint8_t { return llr < 0.0 ? 1 : 0; };

    std::vector<double> pre, suf;
    for (int it = 1; it <= i_max; ++it) {
        // CN update: extrinsic boxplus via prefix/suffix combination.
        for (size_t c = 0; c < graph.checks.size(); ++c) {
            const size_t begin = cn_offset[c], end = cn_offset[c + 1];
            const size_t deg = end - begin;
            pre.assign(deg + 1, 0.0);
            suf.assign(deg + 1, 0.0);
            bool have_pre = false;
            for (size_t i = 0; i < deg; ++i) {
                pre[i + 1] = have_pre ? boxplus(pre[i], vc[begin + i]) : vc[begin + i];
                have_pre = true;
            }
            bool have_suf = false;
            for (size_t i = deg; i-- > 0;) {
                suf[i] = have_suf ? boxplus(suf[i + 1], vc[begin + i]) : vc[begin + i];
                have_suf = true;
            }
            for (size_t i = 0; i < deg; ++i) {
                double msg;
                if (deg == 1)
                    msg = 0.0;
                else if (i == 0)
                    msg = suf[1];
                else if (i == deg - 1)
                    msg = pre[deg - 1];
                else
                    msg = boxplus(pre[i], suf[i + 1]);
                cv[begin + i] = std::clamp(msg, -kLlrClamp, kLlrClamp);
            }
        }

        // VN update + a-posteriori.
        std::vector<double> total(graph.n);
        for (int v = 0; v < graph.n; ++v) total[v] = channel_llrs[v];
        for (size_t e = 0; e < n_edges; ++e) total[edge_vn[e]] += cv[e];
        for (size_t e = 0; e < n_edges; ++e) vc[e] = std::clamp(total[edge_vn[e]] - cv[e], -kLlrClamp, kLlrClamp);
        result.llr_app = total;
        result.iterations_used = it;

        // Early exit on a zero syndrome.
        bool all_even = true;
        for (size_t c = 0; c < graph.checks.size() && all_even; ++c) {
            int parity = 0;
            for (size_t e = cn_offset[c]; e < cn_offset[c + 1]; ++e) parity ^= hard_bit(result.llr_app[edge_vn[e]]);
            all_even = (parity == 0);
        }
        if (all_even) {
            result.syndrome_ok = true;
            break;
        }
    }

    result.hard.resize(graph.n);
    for (int v = 0; v < graph.n; ++v) result.hard[v] = hard_bit(result.llr_app[v]);
    if (!result.syndrome_ok) {
        bool all_even = true;
        for (size_t c = 0; c < graph.checks.size() && all_even; ++c) {
            int parity = 0;
            for (size_t e = cn_offset[c]; e < cn_offset[c + 1]; ++e) parity ^= result.hard[edge_vn[e]];
            all_even = (parity == 0);
        }
        result.syndrome_ok = all_even;
    }
    return result;
}

}  // namespace ldpcdes
