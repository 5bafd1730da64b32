#include "ldpcdes/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace ldpcdes {

VariableDistribution::VariableDistribution(std::map<int, double> entries) {
    double sum = 0.0;
    for (const auto& [d, f] : entries) {
        if (d < 2) throw ValidationError("lambda: VN degree must be >= 2, got " + std::to_string(d));
        if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("lambda: fraction for degree " + std::to_string(d) + " outside [0,1]");
        sum += f;
    }
    if (std::abs(sum - 1.0) > kDistributionTol)
        throw ValidationError("lambda: fractions sum to " + std::to_string(sum) + ", not 1 within 1e-9");
    for (const auto& [d, f] : entries)
        if (f >= kFractionPrune) entries_.emplace(d, f);
    if (entries_.empty()) throw ValidationError("lambda: empty support");
}

double VariableDistribution::fraction(int degree) const {
    auto it = entries_.find(degree);
    return it == entries_.end() ? 0.0 : it->second;
}

double VariableDistribution::integral() const {
    double acc = 0.0;
    for (const auto& [d, f] : entries_) acc += f / d;
    return acc;
}

double VariableDistribution::evaluate(double x) const {
    double acc = 0.0;
    for (const auto& [d, f] : entries_) acc += f * std::pow(x, d - 1);
    return acc;
}

CheckDistribution::CheckDistribution(std::vector<CheckType> types) {
    double sum = 0.0;
    for (const auto& t : types) {
        if (!t.code) throw ValidationError("rho: null component code");
        if (t.code->length() < 3) throw ValidationError("rho: component code length must be >= 3");
        if (!(t.fraction >= 0.0 && t.fraction <= 1.0))
            throw ValidationError("rho: fraction for " + t.code->id() + " outside [0,1]");
        sum += t.fraction;
    }
    if (std::abs(sum - 1.0) > kDistributionTol)
        throw ValidationError("rho: fractions sum to " + std::to_string(sum) + ", not 1 within 1e-9");
    for (auto& t : types)
        if (t.fraction >= kFractionPrune) types_.push_back(std::move(t));
    if (types_.empty()) throw ValidationError("rho: empty support");
}

bool CheckDistribution::all_spc() const {
    return std::all_of(types_.begin(), types_.end(), [](const CheckType& t) { return t.code->is_spc(); });
}

double CheckDistribution::rate_deficit() const {
    double acc = 0.0;
    for (const auto& t : types_) acc += t.fraction * (1.0 - t.code->rate());
    return acc;
}

double CheckDistribution::derivative_at_one() const {
    double acc = 0.0;
    for (const auto& t : types_) acc += t.fraction * (t.code->length() - 1);
    return acc;
}

double CheckDistribution::evaluate(double x) const {
    double acc = 0.0;
    for (const auto& t : types_) acc += t.fraction * std::pow(x, t.code->length() - 1);
    return acc;
}

double design_rate(const DegreeDistributionPair& ddp) {
    return 1.0 - ddp.rho.rate_deficit() / ddp.lambda.integral();
}

long edge_count(const DegreeDistributionPair& ddp, long block_length) {
    if (block_length < 1) throw ValidationError("block length must be >= 1");
    return std::lround(static_cast<double>(block_length) / ddp.lambda.integral());
}

double stability_product(const DegreeDistributionPair& ddp) {
    if (!ddp.rho.all_spc())
        throw ValidationError("stability_product: generalized CN types present, use weight2_functional");
    return ddp.lambda.lambda2() * ddp.rho.derivative_at_one();
}

double weight2_functional(const DegreeDistributionPair& ddp) {
    double c = 0.0;
    for (const auto& t : ddp.rho.types()) {
        if (t.code->min_distance() == 2)
            c += 2.0 * t.fraction * static_cast<double>(t.code->weight_count(2)) / t.code->length();
    }
    return ddp.lambda.lambda2() * c;
}

bool good_growth(const DegreeDistributionPair& ddp) {
    const double slope = ddp.rho.all_spc() ? stability_product(ddp) : weight2_functional(ddp);
    return slope < 1.0;
}

namespace {

// Largest-remainder apportionment of `total` units across quotas.
std::vector<long> largest_remainder(const std::vector<double>& quotas, long total) {
    std::vector<long> out(quotas.size());
    std::vector<std::pair<double, size_t>> rem(quotas.size());
    long assigned = 0;
    for (size_t i = 0; i < quotas.size(); ++i) {
        out[i] = static_cast<long>(std::floor(quotas[i]));
        assigned += out[i];
        rem[i] = {quotas[i] - std::floor(quotas[i]), i};
    }
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (long i = 0; i < total - assigned; ++i) ++out[rem[static_cast<size_t>(i) % rem.size()].second];
    return out;
}

// Minimal sequence of single-node degree moves realizing a socket delta.
std::optional<std::vector<std::pair<int, int>>> plan_moves(long delta, const std::vector<int>& degrees,
                                                           const std::vector<long>& counts) {
    if (delta == 0) return std::vector<std::pair<int, int>>{};
    if (degrees.size() < 2) return std::nullopt;

    const long maxdiff = degrees.back() - degrees.front();
    const long bound = std::llabs(delta) + 2 * maxdiff + 2;
    const long size = 2 * bound + 1;
    const int unseen = std::numeric_limits<int>::max();
    std::vector<int> dist(size, unseen);
    std::vector<std::pair<long, std::pair<int, int>>> parent(size, {0, {0, 0}});
    std::vector<long> frontier{0};
    dist[bound] = 0;
    while (!frontier.empty() && dist[bound + delta] == unseen) {
        std::vector<long> next;
        for (long v : frontier) {
            for (size_t i = 0; i < degrees.size(); ++i) {
                for (size_t j = 0; j < degrees.size(); ++j) {
                    if (i == j) continue;
                    const long w = v + degrees[j] - degrees[i];
                    if (std::llabs(w) > bound || dist[bound + w] != unseen) continue;
                    dist[bound + w] = dist[bound + v] + 1;
                    parent[bound + w] = {v, {degrees[i], degrees[j]}};
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }
    if (dist[bound + delta] == unseen) return std::nullopt;

    std::vector<std::pair<int, int>> moves;
    for (long v = delta; v != 0;) {
        moves.push_back(parent[bound + v].second);
        v = parent[bound + v].first;
    }
    // Check donor availability.
    std::map<int, long> budget;
    for (size_t i = 0; i < degrees.size(); ++i) budget[degrees[i]] = counts[i];
    for (const auto& [from, to] : moves) {
        if (budget[from] <= 0) return std::nullopt;
        --budget[from];
        ++budget[to];
    }
    return moves;
}

// CN counts per type summing (in sockets) to exactly e_total, close to the
// edge-fraction quotas. Count adjustments around the rounded quotas may go
// in either direction (e.g. residual 6 with socket sizes {7,15} needs
// 3*7 - 1*15); solved as a shortest path over the signed residual.
std::optional<std::vector<long>> plan_cn(long e_total, const std::vector<double>& fractions,
                                         const std::vector<int>& lengths) {
    const size_t nt = fractions.size();
    std::vector<long> counts(nt);
    long used = 0;
    int max_len = 0;
    for (size_t t = 0; t < nt; ++t) {
        counts[t] = static_cast<long>(std::floor(e_total * fractions[t] / lengths[t]));
        used += counts[t] * lengths[t];
        max_len = std::max(max_len, lengths[t]);
    }
    const long residual = e_total - used;
    if (residual < 0) return std::nullopt;

    std::vector<size_t> order(nt);
    for (size_t i = 0; i < nt; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fractions[a] > fractions[b]; });

    const long bound = residual + 2L * max_len * max_len + 2;
    const long size = 2 * bound + 1;
    const int unseen = std::numeric_limits<int>::max();
    std::vector<int> dist(size, unseen);
    std::vector<std::pair<long, long>> parent(size, {0, 0});  // (previous value, signed type step)
    std::vector<long> frontier{0};
    dist[bound] = 0;
    while (!frontier.empty() && dist[bound + residual] == unseen) {
        std::vector<long> next;
        for (long v : frontier) {
            for (size_t t : order) {
                for (int sign : {+1, -1}) {
                    const long w = v + sign * lengths[t];
                    if (std::labs(w) > bound || dist[bound + w] != unseen) continue;
                    dist[bound + w] = dist[bound + v] + 1;
                    parent[bound + w] = {v, sign * static_cast<long>(t + 1)};
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }
    if (dist[bound + residual] == unseen) return std::nullopt;
    for (long v = residual; v != 0;) {
        const auto& [prev, step] = parent[bound + v];
        counts[std::labs(step) - 1] += (step > 0) ? 1 : -1;
        v = prev;
    }
    for (long c : counts)
        if (c < 0) return std::nullopt;
    return counts;
}

}  // namespace

Realization node_counts(const DegreeDistributionPair& ddp, long block_length) {
    if (block_length < 1) throw ValidationError("block length must be >= 1");
    const double il = ddp.lambda.integral();
    const double e_star = block_length / il;

    std::map<int, long> cmap;
    {
        std::vector<int> degrees;
        std::vector<double> quotas;
        for (const auto& [d, f] : ddp.lambda.entries()) {
            degrees.push_back(d);
            quotas.push_back(block_length * (f / d) / il);
        }
        const std::vector<long> counts = largest_remainder(quotas, block_length);
        for (size_t i = 0; i < degrees.size(); ++i) cmap[degrees[i]] = counts[i];
    }

    std::vector<double> rho_fracs;
    std::vector<int> rho_lens;
    int max_len = 3, max_deg = 2;
    for (const auto& t : ddp.rho.types()) {
        rho_fracs.push_back(t.fraction);
        rho_lens.push_back(t.code->length());
        max_len = std::max(max_len, t.code->length());
    }
    for (const auto& [d, f] : ddp.lambda.entries()) max_deg = std::max(max_deg, d);
    const long delta_bound = 3L * max_len + 3L * max_deg + 64;

    for (int pass = 0; pass < 64; ++pass) {
        std::vector<int> degrees;
        std::vector<long> counts;
        long e_vn = 0;
        for (const auto& [d, c] : cmap) {
            degrees.push_back(d);
            counts.push_back(c);
            e_vn += static_cast<long>(d) * c;
        }

        bool found = false;
        std::vector<long> cn;
        for (long step = 0; step <= delta_bound && !found; ++step) {
            for (int sign = 0; sign < (step == 0 ? 1 : 2); ++sign) {
                const long delta = (sign == 0) ? step : -step;
                const long e_total = e_vn + delta;
                if (e_total <= 0) continue;
                auto moves = plan_moves(delta, degrees, counts);
                if (!moves) continue;
                auto plan = plan_cn(e_total, rho_fracs, rho_lens);
                if (!plan) continue;
                for (const auto& [from, to] : *moves) {
                    --cmap[from];
                    ++cmap[to];
                }
                cn = std::move(*plan);
                found = true;
                break;
            }
        }
        if (!found)
            throw ComputeError("node_counts: no consistent integer realization at N=" + std::to_string(block_length));

        long n_checks = 0;
        for (long m : cn) n_checks += m;
        if (n_checks < 1) throw ComputeError("node_counts: realization has no check nodes");

        // A VN cannot have more distinct CN neighbors than there are CNs;
        // cap oversized degrees and re-balance (toy block lengths only).
        // Capped nodes get staggered degrees M, M-1, ... so no two of them
        // are forced onto identical CN neighborhoods (which would plant a
        // structural weight-2 codeword).
        bool capped = false;
        for (auto it = cmap.rbegin(); it != cmap.rend();) {
            if (it->first > n_checks && it->second > 0) {
                const long c = it->second;
                cmap.erase(std::next(it).base());
                for (long i = 0; i < c; ++i) {
                    int d = static_cast<int>(n_checks);
                    while (d > 2 && cmap.count(d) && cmap[d] > 0) --d;
                    cmap[d] += 1;
                }
                capped = true;
                it = cmap.rbegin();
            } else {
                ++it;
            }
        }
        if (!capped) {
            Realization out;
            long edges = 0;
            for (const auto& [d, c] : cmap) {
                if (c < 0) throw ComputeError("node_counts: negative node count");
                if (c > 0) out.vn_counts[d] = c;
                edges += static_cast<long>(d) * c;
            }
            out.cn_counts = std::move(cn);
            out.edges = edges;
            out.slack = std::abs(edges - e_star);
            return out;
        }
    }
    throw ComputeError("node_counts: degree capping failed to stabilize at N=" + std::to_string(block_length));
}

}  // namespace ldpcdes
