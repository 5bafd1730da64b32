// End-to-end acceptance suite. Each criterion prints one [PASS]/[FAIL]
// line; the process exits nonzero if any selected criterion fails.
//
//   acceptance_tests               run everything
//   acceptance_tests --criterion N run one criterion
//   acceptance_tests --full        full-scale variant of criterion 7
//                                  (N=10000; the default uses N=4000)

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <ldpcdes/ddp_io.hpp>
#include <ldpcdes/diff_evolution.hpp>
#include <ldpcdes/exit_chart.hpp>
#include <ldpcdes/growth_rate.hpp>
#include <ldpcdes/monte_carlo.hpp>
#include <ldpcdes/reference_ensembles.hpp>
#include <ldpcdes/rng.hpp>
#include <ldpcdes/tanner_graph.hpp>

using namespace ldpcdes;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------- 1
void criterion_design_rates() {
    bool ok = true;
    std::ostringstream detail;
    for (const auto& [name, ddp] : reference::all()) {
        const double r = design_rate(ddp);
        ok = ok && std::abs(r - 0.5) < 1e-3;
        detail << name << "=" << fmt(r) << " ";
    }
    report(1, ok, "design rates 0.5 +/- 1e-3: " + detail.str());
}

// ---------------------------------------------------------------------- 2
void criterion_stability() {
    const double a = weight2_functional(reference::ensemble_a());
    const double b = stability_product(reference::ensemble_b());
    const double c = stability_product(reference::ensemble_c());
    bool ok = std::abs(a - 0.805878) < 1e-6 && b == 0.0 && std::abs(c - 1.908343) < 1e-5;
    std::ostringstream detail;
    detail << "A=" << fmt(a) << " B=" << fmt(b) << " C=" << fmt(c) << "; classification:";
    for (const auto& [name, ddp] : reference::all()) {
        const bool good = good_growth(ddp);
        const bool expected = (name == "A" || name == "B" || name == "E");
        ok = ok && good == expected;
        detail << " " << name << (good ? "+" : "-");
    }
    report(2, ok, "stability functionals and growth classification: " + detail.str());
}

// ---------------------------------------------------------------------- 3
void criterion_bec_thresholds() {
    const ThresholdQuery qb{reference::ensemble_b(), ChannelKind::Bec, 10, 0.99, 1e-6, false, ExitMode::Fast};
    const double tb = threshold_value(iteration_constrained_threshold(qb));
    const ThresholdQuery qc{reference::ensemble_c(), ChannelKind::Bec, 200, 0.99, 1e-6, false, ExitMode::Fast};
    const double tc = threshold_value(iteration_constrained_threshold(qc));
    const bool ok = tb >= 0.355 && tb <= 0.375 && tc >= 0.475 && tc <= 0.495;
    report(3, ok, "BEC thresholds at default xi: B@10=" + fmt(tb) + " in [0.355,0.375], C@200=" + fmt(tc) +
                      " in [0.475,0.495]");
}

// ---------------------------------------------------------------------- 4
double de_recursion_threshold(const DegreeDistributionPair& ddp) {
    auto converges = [&](double eps) {
        double x = eps;
        for (long it = 0; it < 200000; ++it) {
            const double next = eps * ddp.lambda.evaluate(1.0 - ddp.rho.evaluate(1.0 - x));
            if (next < 1e-12) return true;
            if (std::abs(next - x) < 1e-15) return false;
            x = next;
        }
        return false;
    };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        (converges(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

void criterion_threshold_oracle() {
    const auto ddp = reference::regular(3, 6);
    const ThresholdQuery q{ddp, ChannelKind::Bec, 5000, 0.9999, 1e-6, false, ExitMode::Fast};
    const double impl = threshold_value(iteration_constrained_threshold(q));
    const double oracle = de_recursion_threshold(ddp);
    const bool ok = std::abs(impl - oracle) <= 0.002 && std::abs(impl - 0.4294) <= 0.002;
    report(4, ok, "(3,6) i_max=5000 xi=0.9999: impl=" + fmt(impl) + " DE-recursion oracle=" + fmt(oracle) +
                      " (0.4294 +/- 0.002)");
}

// ---------------------------------------------------------------------- 5
void criterion_optimizer() {
    DeConfig config;
    for (int d = 2; d <= 30; ++d) config.vn_degrees.push_back(d);
    config.cn_codes = {ComponentCode::from_id("spc-7"), ComponentCode::from_id("hamming-7-4"),
                       ComponentCode::from_id("hamming-15-11")};
    config.target_rate = 0.5;
    config.channel = ChannelKind::Bec;
    config.i_max = 10;
    config.xi = 0.99;
    config.population = 70;
    config.max_generations = 300;
    config.stall_generations = 300;  // run the full budget
    config.seed = 20260808;

    const DeResult result = evolve(config);
    bool monotone = true;
    for (size_t g = 1; g < result.best_per_generation.size(); ++g)
        monotone = monotone && result.best_per_generation[g] >= result.best_per_generation[g - 1] - 1e-15;
    const bool ok = result.best_threshold >= 0.35 && monotone;
    report(5, ok, "seeded DE (Np=70, i_max=10, <=300 gens): best threshold=" + fmt(result.best_threshold) +
                      " >= 0.35, per-generation best " + (monotone ? "monotone" : "NOT monotone"));
}

// ---------------------------------------------------------------------- 6
void criterion_decoder_oracles() {
    // (a) BEC BP vs ML elimination on a tiny GLDPC code with a Hamming CN
    std::vector<CheckType> mix{{ComponentCode::hamming(3), 7.0 / 13.0}, {ComponentCode::spc(3), 6.0 / 13.0}};
    const DegreeDistributionPair ddp{VariableDistribution({{2, 1.0}}), CheckDistribution(mix)};
    const TannerGraph g = sample_random_code(ddp, 13, 23);
    const auto h = expand_parity_check(g).dense();
    Rng rng(6);
    bool bp_ok = true;
    for (int trial = 0; trial < 10000 && bp_ok; ++trial) {
        std::vector<Bit> word(g.n);
        for (int i = 0; i < g.n; ++i) word[i] = rng.uniform() < 0.5 ? Bit::Erased : Bit::Zero;
        const auto bp = decode_bec(g, word, 100);
        std::vector<Bit> ml = word;
        bp_ok = bp_ok && gf2::solve_erasures(h, ml);
        for (int i = 0; i < g.n && bp_ok; ++i)
            if (bp.word[i] != Bit::Erased) bp_ok = (ml[i] == bp.word[i]);
    }

    // (b) AWGN sum-product vs exact MAP marginals on a cycle-free toy graph
    TannerGraph toy;
    toy.n = 3;
    toy.vn_degrees.assign(3, 1);
    toy.checks.push_back({ComponentCode::spc(3), {0, 1, 2}});
    toy.rebuild_adjacency();
    bool map_ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> llr(3);
        for (double& l : llr) l = 4.0 * rng.normal();
        const auto out = decode_awgn(toy, llr, 1);
        for (int v = 0; v < 3; ++v) {
            double num = 0.0, den = 0.0;
            for (int w = 0; w < 8; ++w) {
                if (((w & 1) ^ ((w >> 1) & 1) ^ ((w >> 2) & 1)) != 0) continue;
                double e = 0.0;
                for (int bit = 0; bit < 3; ++bit) e += ((w >> bit) & 1) * llr[bit];
                (((w >> v) & 1) ? den : num) += std::exp(-e);
            }
            const double err = std::abs(out.llr_app[v] - std::log(num / den));
            worst = std::max(worst, err);
            map_ok = map_ok && err <= 1e-9;
        }
    }
    report(6, bp_ok && map_ok,
           std::string("BP-vs-ML on 10^4 erasure patterns ") + (bp_ok ? "consistent" : "INCONSISTENT") +
               "; cycle-free sum-product vs MAP worst |delta|=" + fmt(worst) + " <= 1e-9");
}

// ---------------------------------------------------------------------- 7
// Ensemble-typical BER: the median over independently sampled codes. A
// single draw from Ensemble A carries a small SPC-only stopping pair with
// noticeable probability, which would turn the comparison into a coin flip.
void criterion_figure2_ordering(long n) {
    constexpr int kSamples = 5;
    const std::vector<std::pair<std::string, DegreeDistributionPair>> ensembles{
        {"A", reference::ensemble_a()}, {"B", reference::ensemble_b()}, {"C", reference::ensemble_c()}};

    auto median_ber = [&](const std::string& name, const DegreeDistributionPair& ddp, double eps, int imax) {
        std::vector<double> bers;
        for (int s = 0; s < kSamples; ++s) {
            const TannerGraph code = sample_random_code(ddp, n, mix_seed(42, name[0], s));
            SimulationTask task;
            task.grid = {BecParameter{eps}};
            task.i_max = imax;
            task.min_bit_errors = 200;
            task.max_codewords = 1000000;
            task.seed = mix_seed(42, 0xf2, name[0], static_cast<std::uint64_t>(imax) * 100 + s);
            bers.push_back(monte_carlo(code, task).points[0].ber);
        }
        std::sort(bers.begin(), bers.end());
        return bers[kSamples / 2];
    };

    std::map<std::string, double> b10, b200;
    for (const auto& [name, ddp] : ensembles) b10[name] = median_ber(name, ddp, 0.30, 10);
    const bool ok10 = b10["A"] <= b10["B"] && b10["B"] < b10["C"];
    report(7, ok10, "N=" + std::to_string(n) + " i_max=10 eps=0.30, median of " + std::to_string(kSamples) +
                        " codes: BER A=" + fmt(b10["A"]) + " <= B=" + fmt(b10["B"]) + " < C=" + fmt(b10["C"]));
    if (!ok10 && b10["A"] > b10["B"]) {
        std::printf(
            "       note: at eps=0.30 both A and B sit below their waterfalls; A's all-degree-2 ensemble keeps\n"
            "       an O(1) number of small SPC-only stopping sets per sampled code (floor ~ eps^2 * c/N), while\n"
            "       B (no degree-2 VNs) floors near zero, so A <= B is unattainable at this operating point for\n"
            "       any N. The supplementary waterfall check below probes the region the comparison comes from.\n");
    }
    // Supplementary (not part of the stated criterion): inside the common
    // waterfall window the iteration-constrained ordering shows directly.
    std::map<std::string, double> b35;
    for (const auto& [name, ddp] : ensembles) b35[name] = median_ber(name, ddp, 0.35, 10);
    std::printf("[%s] criterion 7 supplementary: i_max=10 eps=0.35 waterfall: BER A=%s < B=%s < C=%s\n",
                (b35["A"] < b35["B"] && b35["B"] < b35["C"]) ? "PASS" : "FAIL", fmt(b35["A"]).c_str(),
                fmt(b35["B"]).c_str(), fmt(b35["C"]).c_str());
    std::fflush(stdout);

    for (const auto& [name, ddp] : ensembles) b200[name] = median_ber(name, ddp, 0.45, 200);
    const bool ok200 = b200["C"] < b200["A"] && b200["C"] < b200["B"];
    report(7, ok200, "N=" + std::to_string(n) + " i_max=200 eps=0.45, median of " + std::to_string(kSamples) +
                         " codes: BER C=" + fmt(b200["C"]) + " < A=" + fmt(b200["A"]) + " and < B=" +
                         fmt(b200["B"]));
}

// ---------------------------------------------------------------------- 8
void criterion_growth_oracle() {
    const auto ddp = reference::regular(3, 6);
    bool ok = true;
    std::ostringstream detail;
    for (double alpha : {0.1, 0.2, 0.3}) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (long n : {20L, 40L, 60L}) {
            const auto e = brute_force_average_enumerator(ddp, n);
            const double y = std::log(e[std::lround(alpha * n)]) / n;
            const double x = 1.0 / n;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / 3;
        const double g = growth_rate(ddp, alpha);
        ok = ok && std::abs(intercept - g) <= 0.02;
        detail << "G(" << alpha << ")=" << fmt(g) << " oracle=" << fmt(intercept) << " ";
    }
    bool signs = true;
    for (const auto& [name, e] : reference::all())
        signs = signs && ((growth_rate(e, 1e-3) < 0.0) == good_growth(e));
    ok = ok && signs;
    report(8, ok, "(3,6) tiny-N extrapolation within 0.02: " + detail.str() +
                      (signs ? "; G(1e-3) signs match classification" : "; SIGN MISMATCH"));
}

// ---------------------------------------------------------------------- 9
void criterion_min_distance() {
    const auto fast_ddp = reference::ensemble_e();
    const auto slow_ddp = reference::constrained_reference();
    const long n = 48;

    auto min_dist = [](const TannerGraph& g) {
        const auto d = brute_force_min_distance(expand_parity_check(g));
        return d ? *d : 0;
    };

    auto median = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    };
    int wins = 0;
    std::vector<int> fast_peg, slow_peg, fast_random, slow_random;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        fast_peg.push_back(min_dist(peg_construct(fast_ddp, n, seed)));
        slow_peg.push_back(min_dist(peg_construct(slow_ddp, n, seed)));
        if (fast_peg.back() >= slow_peg.back()) ++wins;
        fast_random.push_back(min_dist(sample_random_code(fast_ddp, n, seed)));
        slow_random.push_back(min_dist(sample_random_code(slow_ddp, n, seed)));
    }
    const bool ok = wins >= 12 && median(fast_peg) > median(fast_random) && median(slow_peg) > median(slow_random);
    std::ostringstream detail;
    detail << "PEG(E) >= PEG(constrained) in " << wins << "/20 pairs; PEG medians " << fmt(median(fast_peg)) << "/"
           << fmt(median(slow_peg)) << " vs random medians " << fmt(median(fast_random)) << "/"
           << fmt(median(slow_random));
    report(9, ok, detail.str());
}

// --------------------------------------------------------------------- 10
void criterion_determinism(const std::string& tool) {
    if (tool.empty()) {
        report(10, false, "tool path not provided (define LDPCDES_TOOL)");
        return;
    }
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto run = [&](const std::string& args) {
        const std::string cmd = tool + " " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };

    bool ok = true;
    std::ostringstream detail;

    // design twice
    ok = ok && run("design --vn-degrees 2-8 --cn-codes spc-7 --np 10 --generations 5 --seed 5 --imax 5 "
                   "--out acc_design_1.json");
    ok = ok && run("design --vn-degrees 2-8 --cn-codes spc-7 --np 10 --generations 5 --seed 5 --imax 5 "
                   "--out acc_design_2.json");
    const bool design_same = ok && slurp("acc_design_1.json") == slurp("acc_design_2.json");
    detail << "design " << (design_same ? "identical" : "DIFFERS");

    // build twice
    ok = ok && run("build --ddp acc_design_1.json --n 256 --seed 9 --method random --out acc_build_1.alist");
    ok = ok && run("build --ddp acc_design_1.json --n 256 --seed 9 --method random --out acc_build_2.alist");
    const bool build_same = ok && slurp("acc_build_1.alist") == slurp("acc_build_2.alist");
    detail << ", build " << (build_same ? "identical" : "DIFFERS");

    // simulate twice, different thread counts
    ok = ok && run("--threads 1 simulate --code acc_build_1.alist --grid 0.3:0.4:0.05 --imax 20 "
                   "--target-errors 50 --max-words 2000 --seed 3 --out acc_sim_1.csv");
    ok = ok && run("--threads 2 simulate --code acc_build_1.alist --grid 0.3:0.4:0.05 --imax 20 "
                   "--target-errors 50 --max-words 2000 --seed 3 --out acc_sim_2.csv");
    const bool sim_same = ok && slurp("acc_sim_1.csv") == slurp("acc_sim_2.csv");
    detail << ", simulate (1 vs 2 threads) " << (sim_same ? "identical" : "DIFFERS");

    for (const char* f : {"acc_design_1.json", "acc_design_2.json", "acc_build_1.alist", "acc_build_2.alist",
                          "acc_sim_1.csv", "acc_sim_2.csv"})
        std::remove(f);
    report(10, ok && design_same && build_same && sim_same, "byte-identical reruns: " + detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    long n7 = 4000;
    std::string tool;
#ifdef LDPCDES_TOOL
    tool = LDPCDES_TOOL;
#endif
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--full") == 0) n7 = 10000;
        if (std::strcmp(argv[i], "--tool") == 0 && i + 1 < argc) tool = argv[++i];
    }

    auto want = [&](int c) { return only == 0 || only == c; };
    try {
        if (want(1)) criterion_design_rates();
        if (want(2)) criterion_stability();
        if (want(3)) criterion_bec_thresholds();
        if (want(4)) criterion_threshold_oracle();
        if (want(5)) criterion_optimizer();
        if (want(6)) criterion_decoder_oracles();
        if (want(7)) criterion_figure2_ordering(n7);
        if (want(8)) criterion_growth_oracle();
        if (want(9)) criterion_min_distance();
        if (want(10)) criterion_determinism(tool);
    } catch (const std::exception& e) {
        std::printf("[FAIL] unexpected exception: %s\n", e.what());
        return 1;
    }
    return g_failures == 0 ? 0 : 1;
}
