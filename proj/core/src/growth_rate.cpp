#include "ldpcdes/growth_rate.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace ldpcdes {

namespace {

constexpr double kNegInf = -1e300;

double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double softplus(double x) {  // ln(1 + e^x)
    if (x > 36.0) return x;
    if (x < -36.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

double entropy2(double b) {  // natural-log binary entropy
    if (b <= 0.0 || b >= 1.0) return 0.0;
    return -b * std::log(b) - (1.0 - b) * std::log(1.0 - b);
}

struct NodeSide {
    std::vector<double> degrees;  // VN degrees or CN weight supports
    std::vector<double> nu;       // node fractions (per block symbol)
};

// Solve Σ nu_d σ(ly + d·lx) = alpha for ly (monotone in ly).
double solve_ly(const NodeSide& side, double lx, double alpha) {
    double lo = -9000.0, hi = 9000.0;
    for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (lo + hi);
        double acc = 0.0;
        for (size_t i = 0; i < side.degrees.size(); ++i) acc += side.nu[i] * logistic(mid + side.degrees[i] * lx);
        (acc < alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// VN-side exponent: inf over x,y of Σ ν_d ln(1+y x^d) − α ln y − es ln x,
// where es = β·E/N is the socket weight per block symbol.
double vn_term(const NodeSide& side, double alpha, double es) {
    auto tilted_mean = [&](double lx, double& ly_out) {
        const double ly = solve_ly(side, lx, alpha);
        ly_out = ly;
        double acc = 0.0;
        for (size_t i = 0; i < side.degrees.size(); ++i)
            acc += side.nu[i] * side.degrees[i] * logistic(ly + side.degrees[i] * lx);
        return acc;
    };
    double lo = -300.0, hi = 300.0;
    double ly = 0.0;
    const double slack = 1e-9 * (1.0 + std::abs(es));
    if (tilted_mean(lo, ly) > es + slack || tilted_mean(hi, ly) < es - slack) return kNegInf;  // infeasible beta
    for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (lo + hi);
        (tilted_mean(mid, ly) < es ? lo : hi) = mid;
    }
    const double lx = 0.5 * (lo + hi);
    tilted_mean(lx, ly);
    double value = 0.0;
    for (size_t i = 0; i < side.degrees.size(); ++i) value += side.nu[i] * softplus(ly + side.degrees[i] * lx);
    return value - alpha * ly - es * lx;
}

struct CnSideType {
    std::vector<double> log_aw;    // ln A_w over the support
    std::vector<double> weights;   // matching w values
    double node_fraction = 0.0;    // CNs of this type per block symbol
};

double cn_log_gf(const CnSideType& t, double lz, double& mean_weight) {
    double m = -1e308;
    for (size_t i = 0; i < t.weights.size(); ++i) m = std::max(m, t.log_aw[i] + t.weights[i] * lz);
    double z0 = 0.0, z1 = 0.0;
    for (size_t i = 0; i < t.weights.size(); ++i) {
        const double e = std::exp(t.log_aw[i] + t.weights[i] * lz - m);
        z0 += e;
        z1 += e * t.weights[i];
    }
    mean_weight = z1 / z0;
    return m + std::log(z0);
}

// CN-side exponent: inf over z of Σ μ_t ln A_t(z) − es ln z.
double cn_term(const std::vector<CnSideType>& types, double es) {
    auto mean_at = [&](double lz) {
        double acc = 0.0;
        for (const auto& t : types) {
            double mw = 0.0;
            cn_log_gf(t, lz, mw);
            acc += t.node_fraction * mw;
        }
        return acc;
    };
    double lo = -300.0, hi = 300.0;
    const double slack = 1e-9 * (1.0 + std::abs(es));
    if (mean_at(lo) > es + slack || mean_at(hi) < es - slack) return kNegInf;
    for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_at(mid) < es ? lo : hi) = mid;
    }
    const double lz = 0.5 * (lo + hi);
    double value = 0.0;
    for (const auto& t : types) {
        double mw = 0.0;
        value += t.node_fraction * cn_log_gf(t, lz, mw);
    }
    return value - es * lz;
}

struct SaddleProblem {
    NodeSide vn;
    std::vector<CnSideType> cn;
    double ebar = 0.0;  // edges per block symbol

    double objective(double alpha, double beta) const {
        const double es = beta * ebar;
        const double v = vn_term(vn, alpha, es);
        if (v <= kNegInf) return kNegInf;
        const double c = cn_term(cn, es);
        if (c <= kNegInf) return kNegInf;
        return v + c - ebar * entropy2(beta);
    }
};

SaddleProblem build_problem(const DegreeDistributionPair& ddp) {
    SaddleProblem p;
    const double il = ddp.lambda.integral();
    p.ebar = 1.0 / il;
    for (const auto& [d, f] : ddp.lambda.entries()) {
        p.vn.degrees.push_back(d);
        p.vn.nu.push_back((f / d) / il);
    }
    for (const auto& t : ddp.rho.types()) {
        CnSideType ct;
        ct.node_fraction = (t.fraction / t.code->length()) / il;
        const auto& aw = t.code->weight_enumerator();
        for (size_t w = 0; w < aw.size(); ++w) {
            if (aw[w] > 0) {
                ct.log_aw.push_back(std::log(static_cast<double>(aw[w])));
                ct.weights.push_back(static_cast<double>(w));
            }
        }
        p.cn.push_back(std::move(ct));
    }
    return p;
}

// Feasible socket-weight window for VN weight alpha: fill the cheapest /
// costliest degrees first.
std::pair<double, double> vn_socket_window(const NodeSide& side, double alpha) {
    auto fill = [&](bool ascending) {
        std::vector<size_t> order(side.degrees.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return ascending ? side.degrees[a] < side.degrees[b] : side.degrees[a] > side.degrees[b];
        });
        double remaining = alpha, sockets = 0.0;
        for (size_t i : order) {
            const double take = std::min(remaining, side.nu[i]);
            sockets += take * side.degrees[i];
            remaining -= take;
            if (remaining <= 0.0) break;
        }
        return sockets;
    };
    return {fill(true), fill(false)};
}

}  // namespace

double growth_rate(const DegreeDistributionPair& ddp, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("growth_rate: alpha must be in (0,1)");
    const SaddleProblem p = build_problem(ddp);

    const auto [es_min, es_max] = vn_socket_window(p.vn, alpha);
    double cn_cap = 0.0;  // max CN-side socket weight per block symbol
    for (const auto& t : p.cn) cn_cap += t.node_fraction * t.weights.back();

    double beta_lo = es_min / p.ebar;
    double beta_hi = std::min(es_max, cn_cap) / p.ebar;
    if (beta_hi < beta_lo) throw ComputeError("growth_rate: empty feasible socket-weight window");

    const double width = beta_hi - beta_lo;
    if (width < 1e-9) return p.objective(alpha, 0.5 * (beta_lo + beta_hi));
    const double margin = std::max(1e-12, 1e-7 * width);
    beta_lo += margin;
    beta_hi -= margin;

    // Coarse scan, then golden-section refinement around the best cell.
    const int grid = 48;
    int best = 0;
    double best_val = kNegInf;
    std::vector<double> betas(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        betas[i] = beta_lo + (beta_hi - beta_lo) * i / grid;
        const double v = p.objective(alpha, betas[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best_val <= kNegInf) throw ComputeError("growth_rate: saddle-point evaluation failed to converge");

    double a = betas[std::max(0, best - 1)];
    double b = betas[std::min(grid, best + 1)];
    const double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = p.objective(alpha, x1), f2 = p.objective(alpha, x2);
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = p.objective(alpha, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = p.objective(alpha, x1);
        }
    }
    return std::max({best_val, f1, f2});
}

std::optional<double> alpha_star(const DegreeDistributionPair& ddp) {
    if (!good_growth(ddp))
        throw ValidationError("alpha_star: ensemble does not have good growth rate behavior");
    const int points = 240;
    const double lo = 1e-4, hi = 0.5;
    double prev_alpha = lo;
    double prev_g = growth_rate(ddp, lo);
    for (int i = 1; i <= points; ++i) {
        const double a = lo * std::pow(hi / lo, static_cast<double>(i) / points);
        const double g = growth_rate(ddp, a);
        if (prev_g < 0.0 && g >= 0.0) {
            double xa = prev_alpha, xb = a;
            while (xb - xa > 1e-6) {
                const double mid = 0.5 * (xa + xb);
                (growth_rate(ddp, mid) < 0.0 ? xa : xb) = mid;
            }
            return 0.5 * (xa + xb);
        }
        prev_alpha = a;
        prev_g = g;
    }
    return std::nullopt;
}

GrowthRateCurve growth_rate_curve(const DegreeDistributionPair& ddp, int points) {
    if (points < 2) throw ValidationError("growth_rate_curve: need at least 2 points");
    GrowthRateCurve curve;
    curve.good_growth = good_growth(ddp);
    const double lo = 1e-3, hi = 0.5;
    for (int i = 0; i < points; ++i) {
        const double a = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
        curve.samples.push_back({a, growth_rate(ddp, a)});
    }
    if (curve.good_growth) curve.alpha_star = alpha_star(ddp);
    return curve;
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::vector<BigInt> binomial_row(long n) {
    std::vector<BigInt> row(n + 1);
    row[0] = 1;
    for (long k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
    return row;
}

}  // namespace

std::vector<double> brute_force_average_enumerator(const FiniteEnsemble& ensemble) {
    long n = 0, e_vn = 0, e_cn = 0;
    for (const auto& [d, c] : ensemble.vn_counts) {
        if (d < 1 || c < 0) throw ValidationError("enumerator: bad VN counts");
        n += c;
        e_vn += static_cast<long>(d) * c;
    }
    for (const auto& [code, c] : ensemble.cn_counts) {
        if (!code || c < 0) throw ValidationError("enumerator: bad CN counts");
        e_cn += code->length() * c;
    }
    if (n < 1 || n > 64) throw ValidationError("enumerator: block length must be in [1, 64]");
    if (e_vn != e_cn)
        throw ValidationError("enumerator: socket totals disagree (unrealizable), vn=" + std::to_string(e_vn) +
                              " cn=" + std::to_string(e_cn));
    const long e = e_vn;

    // VN side: V[w][s] = #ways to pick weight-w node set with socket weight s.
    std::vector<std::vector<BigInt>> v(n + 1, std::vector<BigInt>(e + 1));
    v[0][0] = 1;
    for (const auto& [d, c] : ensemble.vn_counts) {
        for (long node = 0; node < c; ++node) {
            for (long w = n; w >= 1; --w)
                for (long s = e; s >= d; --s)
                    if (!v[w - 1][s - d].is_zero()) v[w][s] += v[w - 1][s - d];
        }
    }

    // CN side: product of local weight enumerators.
    std::vector<BigInt> cn(e + 1);
    cn[0] = 1;
    for (const auto& [code, c] : ensemble.cn_counts) {
        const auto& aw = code->weight_enumerator();
        for (long node = 0; node < c; ++node) {
            std::vector<BigInt> next(e + 1);
            for (long s = 0; s <= e; ++s) {
                if (cn[s].is_zero()) continue;
                for (size_t u = 0; u < aw.size() && s + static_cast<long>(u) <= e; ++u)
                    if (aw[u] > 0) next[s + u] += cn[s] * aw[u];
            }
            cn = std::move(next);
        }
    }

    const std::vector<BigInt> binom = binomial_row(e);
    std::vector<double> out(n + 1, 0.0);
    for (long w = 0; w <= n; ++w) {
        boost::multiprecision::cpp_rational acc = 0;
        for (long s = 0; s <= e; ++s) {
            if (v[w][s].is_zero() || cn[s].is_zero()) continue;
            acc += boost::multiprecision::cpp_rational(v[w][s] * cn[s], binom[s]);
        }
        out[w] = acc.convert_to<double>();
    }
    return out;
}

std::vector<double> brute_force_average_enumerator(const DegreeDistributionPair& ddp, long block_length) {
    if (block_length > 64) throw ValidationError("enumerator: block length must be <= 64");
    const Realization r = node_counts(ddp, block_length);
    FiniteEnsemble ens;
    ens.vn_counts = r.vn_counts;
    const auto& types = ddp.rho.types();
    for (size_t t = 0; t < types.size(); ++t)
        if (r.cn_counts[t] > 0) ens.cn_counts.emplace_back(types[t].code, r.cn_counts[t]);
    return brute_force_average_enumerator(ens);
}

}  // namespace ldpcdes
