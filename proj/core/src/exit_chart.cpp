#include "ldpcdes/exit_chart.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace ldpcdes {

namespace {

constexpr double kSigmaMax = 60.0;
constexpr double kLn2 = 0.6931471805599453;

double log2_1p_exp_neg(double l) {
    // log2(1 + e^-l), stable across the whole real line
    if (l < -36.0) return -l / kLn2;
    if (l > 36.0) return std::exp(-l) / kLn2;
    return std::log1p(std::exp(-l)) / kLn2;
}

// Composite Simpson over [mu - 12 sigma, mu + 12 sigma].
double j_exact(double sigma) {
    if (sigma == 0.0) return 0.0;
    const double mu = sigma * sigma / 2.0;
    const double lo = mu - 12.0 * sigma;
    const double hi = mu + 12.0 * sigma;
    const int n = 4000;  // even
    const double h = (hi - lo) / n;
    const double inv_norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
    auto f = [&](double l) {
        const double z = (l - mu) / sigma;
        return inv_norm * std::exp(-0.5 * z * z) * log2_1p_exp_neg(l);
    };
    double acc = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) acc += f(lo + i * h) * ((i & 1) ? 4.0 : 2.0);
    const double integral = acc * h / 3.0;
    return std::clamp(1.0 - integral, 0.0, 1.0);
}

struct JTable {
    // sigma grid with step 2^-9 over [0, kSigmaMax]
    static constexpr double kStep = 1.0 / 512.0;
    std::vector<double> values;

    JTable() {
        const int n = static_cast<int>(kSigmaMax / kStep) + 2;
        values.resize(n);
        for (int i = 0; i < n; ++i) values[i] = j_exact(i * kStep);
        // enforce monotonicity against quadrature jitter in the saturated tail
        for (int i = 1; i < n; ++i) values[i] = std::max(values[i], values[i - 1]);
    }

    double forward(double sigma) const {
        if (sigma >= kSigmaMax) return values.back();
        const double pos = sigma / kStep;
        const int i = static_cast<int>(pos);
        const double frac = pos - i;
        return values[i] + frac * (values[i + 1] - values[i]);
    }

    double inverse(double i_target) const {
        if (i_target <= 0.0) return 0.0;
        if (i_target >= values.back()) return kSigmaMax;
        // binary search for the bracketing cell, then invert the lerp
        size_t lo = 0, hi = values.size() - 1;
        while (hi - lo > 1) {
            const size_t mid = (lo + hi) / 2;
            (values[mid] <= i_target ? lo : hi) = mid;
        }
        const double span = values[hi] - values[lo];
        const double frac = span > 0.0 ? (i_target - values[lo]) / span : 0.0;
        return (lo + frac) * kStep;
    }
};

const JTable& j_table() {
    static const JTable table;
    return table;
}

// Memoized BEC EXIT curves of generalized CNs on a 2^-12-spaced grid; the
// optimizer re-evaluates these heavily.
class CnExitTable {
public:
    static constexpr int kPoints = 4097;

    explicit CnExitTable(const ComponentCode& code) {
        values_.resize(kPoints);
        for (int i = 0; i < kPoints; ++i) values_[i] = code.bec_exit(static_cast<double>(i) / (kPoints - 1));
    }

    double operator()(double i_a) const {
        const double pos = i_a * (kPoints - 1);
        const int i = std::min(static_cast<int>(pos), kPoints - 2);
        const double frac = pos - i;
        return values_[i] + frac * (values_[i + 1] - values_[i]);
    }

private:
    std::vector<double> values_;
};

const CnExitTable& cn_table(const ComponentCode& code) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<CnExitTable>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(code.id());
    if (it == cache.end()) it = cache.emplace(code.id(), std::make_unique<CnExitTable>(code)).first;
    return *it->second;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double AwgnParameter::llr_sigma() const { return std::sqrt(8.0 * code_rate * std::pow(10.0, eb_n0_db / 10.0)); }

ChannelKind channel_kind(const ChannelParameter& ch) {
    return std::holds_alternative<BecParameter>(ch) ? ChannelKind::Bec : ChannelKind::Awgn;
}

double j_function(double sigma) {
    if (sigma < 0.0) throw ValidationError("j_function: sigma must be >= 0");
    return j_exact(std::min(sigma, kSigmaMax));
}

double j_inverse(double i) {
    if (!(i >= 0.0 && i < 1.0)) throw ValidationError("j_inverse: argument must be in [0,1)");
    if (i == 0.0) return 0.0;
    double lo = 0.0, hi = kSigmaMax;
    if (j_exact(hi) < i) return hi;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (j_exact(mid) < i ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double j_function_fast(double sigma) {
    if (sigma < 0.0) throw ValidationError("j_function: sigma must be >= 0");
    return j_table().forward(sigma);
}

double j_inverse_fast(double i) {
    if (!(i >= 0.0 && i < 1.0)) throw ValidationError("j_inverse: argument must be in [0,1)");
    return j_table().inverse(i);
}

double vn_exit(int degree, const ChannelParameter& ch, double i_a, ExitMode mode) {
    if (degree < 2) throw ValidationError("vn_exit: degree must be >= 2");
    if (!(i_a >= 0.0 && i_a <= 1.0)) throw ValidationError("vn_exit: i_a outside [0,1]");
    if (const auto* bec = std::get_if<BecParameter>(&ch))
        return 1.0 - bec->epsilon * std::pow(1.0 - i_a, degree - 1);
    const auto& awgn = std::get<AwgnParameter>(ch);
    const double ia = std::min(i_a, 1.0 - 1e-12);
    const double sj = (mode == ExitMode::Fast) ? j_inverse_fast(ia) : j_inverse(ia);
    const double arg = std::sqrt((degree - 1) * sj * sj + awgn.llr_sigma() * awgn.llr_sigma());
    return (mode == ExitMode::Fast) ? j_function_fast(arg) : j_function(std::min(arg, kSigmaMax));
}

double cn_exit(const ComponentCode& code, ChannelKind kind, double i_a, ExitMode mode) {
    if (!(i_a >= 0.0 && i_a <= 1.0)) throw ValidationError("cn_exit: i_a outside [0,1]");
    if (kind == ChannelKind::Bec) {
        if (code.is_spc()) return std::pow(i_a, code.length() - 1);
        return (mode == ExitMode::Fast) ? cn_table(code)(i_a) : code.bec_exit(i_a);
    }
    if (!code.is_spc()) throw ValidationError("cn_exit: generalized CNs unsupported on the AWGN channel");
    const double ia = std::clamp(i_a, 1e-12, 1.0 - 1e-12);
    const double sj = (mode == ExitMode::Fast) ? j_inverse_fast(1.0 - ia) : j_inverse(1.0 - ia);
    const double arg = std::sqrt(static_cast<double>(code.length() - 1)) * sj;
    const double j = (mode == ExitMode::Fast) ? j_function_fast(arg) : j_function(std::min(arg, kSigmaMax));
    return clamp01(1.0 - j);
}

ExitTrajectory run_trajectory(const DegreeDistributionPair& ddp, const ChannelParameter& ch, int i_max, ExitMode mode,
                              std::optional<double> xi) {
    if (i_max < 0) throw ValidationError("run_trajectory: i_max must be >= 0");
    const ChannelKind kind = channel_kind(ch);
    ExitTrajectory traj;
    traj.i_max = i_max;
    traj.points.reserve(i_max);
    double incoming = 0.0;  // a-priori at the VN side
    for (int it = 0; it < i_max; ++it) {
        double i_ev = 0.0;
        for (const auto& [d, f] : ddp.lambda.entries()) i_ev += f * vn_exit(d, ch, incoming, mode);
        i_ev = clamp01(i_ev);
        double i_ec = 0.0;
        for (const auto& t : ddp.rho.types()) i_ec += t.fraction * cn_exit(*t.code, kind, i_ev, mode);
        i_ec = clamp01(i_ec);
        traj.points.push_back({incoming, i_ev, i_ev, i_ec});
        incoming = i_ec;
    }
    if (xi && i_max > 0) traj.achieved = traj.final_i_ev() >= *xi;
    return traj;
}

namespace {

// Node-perspective a-posteriori information after the final VN update.
double final_a_posteriori(const DegreeDistributionPair& ddp, const ChannelParameter& ch, const ExitTrajectory& traj,
                          ExitMode mode) {
    if (traj.points.empty()) return 0.0;
    const double i_av = traj.points.back().i_av;
    const double il = ddp.lambda.integral();
    double acc = 0.0;
    for (const auto& [d, f] : ddp.lambda.entries()) {
        const double node_frac = (f / d) / il;
        if (const auto* bec = std::get_if<BecParameter>(&ch)) {
            acc += node_frac * (1.0 - bec->epsilon * std::pow(1.0 - i_av, d));
        } else {
            const auto& awgn = std::get<AwgnParameter>(ch);
            const double sj = (mode == ExitMode::Fast) ? j_inverse_fast(std::min(i_av, 1.0 - 1e-12))
                                                       : j_inverse(std::min(i_av, 1.0 - 1e-12));
            const double arg = std::sqrt(d * sj * sj + awgn.llr_sigma() * awgn.llr_sigma());
            acc += node_frac * ((mode == ExitMode::Fast) ? j_function_fast(arg) : j_function(std::min(arg, kSigmaMax)));
        }
    }
    return acc;
}

}  // namespace

bool better_threshold(ChannelKind kind, double a, double b) {
    return kind == ChannelKind::Bec ? a > b : a < b;
}

ChannelParameter iteration_constrained_threshold(const ThresholdQuery& query) {
    if (query.i_max < 1) throw ValidationError("threshold: i_max must be >= 1");
    if (!(query.xi > 0.0 && query.xi < 1.0)) throw ValidationError("threshold: xi must be in (0,1)");
    if (!(query.tolerance > 0.0)) throw ValidationError("threshold: tolerance must be > 0");

    const double rate = design_rate(query.ddp);
    auto make_param = [&](double v) -> ChannelParameter {
        if (query.channel == ChannelKind::Bec) return BecParameter{v};
        return AwgnParameter{v, rate};
    };
    auto passes = [&](double v) {
        const ChannelParameter ch = make_param(v);
        const ExitTrajectory traj = run_trajectory(query.ddp, ch, query.i_max, query.mode);
        const double metric =
            query.a_posteriori ? final_a_posteriori(query.ddp, ch, traj, query.mode) : traj.final_i_ev();
        return metric >= query.xi;
    };

    constexpr int kMaxSteps = 40;
    if (query.channel == ChannelKind::Bec) {
        // Requirement weakens as epsilon grows; find the highest passing eps.
        if (!passes(0.0)) throw ComputeError("threshold: requirement unsatisfiable even at epsilon=0");
        if (passes(1.0)) return make_param(1.0);
        double lo = 0.0, hi = 1.0;  // lo passes, hi fails
        for (int step = 0; step < kMaxSteps && hi - lo > query.tolerance; ++step) {
            const double mid = 0.5 * (lo + hi);
            (passes(mid) ? lo : hi) = mid;
        }
        return make_param(lo);
    }
    // AWGN: requirement strengthens with Eb/N0; find the lowest passing dB.
    constexpr double kDbLo = -2.0, kDbHi = 10.0;
    if (passes(kDbLo)) return make_param(kDbLo);
    if (!passes(kDbHi)) throw ComputeError("threshold: requirement unsatisfiable in [-2, 10] dB");
    double lo = kDbLo, hi = kDbHi;  // lo fails, hi passes
    for (int step = 0; step < kMaxSteps && hi - lo > query.tolerance; ++step) {
        const double mid = 0.5 * (lo + hi);
        (passes(mid) ? hi : lo) = mid;
    }
    return make_param(hi);
}

}  // namespace ldpcdes
