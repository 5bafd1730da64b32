#include <doctest.h>

#include <cmath>
#include <ldpcdes/decoder.hpp>
#include <ldpcdes/monte_carlo.hpp>
#include <ldpcdes/reference_ensembles.hpp>
#include <ldpcdes/rng.hpp>

using namespace ldpcdes;

namespace {

// Tiny GLDPC graph: one Hamming(7,4) CN plus SPC-3 CNs over 13 bits.
TannerGraph tiny_gldpc() {
    std::vector<CheckType> mix{{ComponentCode::hamming(3), 7.0 / 13.0}, {ComponentCode::spc(3), 6.0 / 13.0}};
    const DegreeDistributionPair ddp{VariableDistribution({{2, 1.0}}), CheckDistribution(mix)};
    return sample_random_code(ddp, 13, 23);
}

TannerGraph single_cn(const CodeRef& code) {
    TannerGraph g;
    g.n = code->length();
    g.vn_degrees.assign(g.n, 1);
    std::vector<int> sockets(g.n);
    for (int i = 0; i < g.n; ++i) sockets[i] = i;
    g.checks.push_back({code, sockets});
    g.rebuild_adjacency();
    return g;
}

}  // namespace

TEST_CASE("bec decoding: trivial cases") {
    const auto g = single_cn(ComponentCode::spc(3));
    const std::vector<Bit> clean{Bit::Zero, Bit::Zero, Bit::Zero};
    const auto unchanged = decode_bec(g, clean, 10);
    CHECK(unchanged.word == clean);
    CHECK(unchanged.iterations_used == 0);

    const auto one_hole = decode_bec(g, {Bit::Zero, Bit::Erased, Bit::Zero}, 10);
    CHECK(one_hole.word == clean);
    CHECK(one_hole.iterations_used == 1);

    const auto two_holes = decode_bec(g, {Bit::Erased, Bit::Erased, Bit::Zero}, 10);
    CHECK(two_holes.word[0] == Bit::Erased);
    CHECK(two_holes.word[1] == Bit::Erased);

    // i_max = 0 decodes nothing
    const auto frozen = decode_bec(g, {Bit::Zero, Bit::Erased, Bit::Zero}, 0);
    CHECK(frozen.word[1] == Bit::Erased);
}

TEST_CASE("bec decoding: generalized CN resolves like its MAP decoder") {
    const auto g = single_cn(ComponentCode::hamming(3));
    std::vector<Bit> word(7, Bit::Zero);
    word[4] = Bit::Erased;
    const auto out = decode_bec(g, word, 5);
    CHECK(out.word == std::vector<Bit>(7, Bit::Zero));
    CHECK(out.iterations_used == 1);
}

TEST_CASE("bec decoding: monotone in the iteration cap and consistent with ML") {
    const auto g = tiny_gldpc();
    const auto h = expand_parity_check(g).dense();
    Rng rng(5);
    int bp_resolved = 0, ml_resolved = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<Bit> word(g.n);
        for (int i = 0; i < g.n; ++i) word[i] = rng.uniform() < 0.45 ? Bit::Erased : Bit::Zero;

        std::vector<Bit> previous = word;
        for (int cap = 0; cap <= 4; ++cap) {
            const auto out = decode_bec(g, word, cap);
            // resolved set grows with the cap and never contradicts 0
            for (int i = 0; i < g.n; ++i) {
                if (previous[i] != Bit::Erased) CHECK(out.word[i] == previous[i]);
                if (out.word[i] != Bit::Erased) CHECK(out.word[i] == Bit::Zero);
            }
            previous = out.word;
        }

        const auto bp = decode_bec(g, word, 100);
        std::vector<Bit> ml = word;
        CHECK(gf2::solve_erasures(h, ml));  // ML oracle on the full matrix
        for (int i = 0; i < g.n; ++i) {
            if (bp.word[i] != Bit::Erased) {
                ++bp_resolved;
                CHECK(ml[i] == bp.word[i]);  // BP never contradicts ML
            }
            if (ml[i] != Bit::Erased) ++ml_resolved;
        }
    }
    CHECK(bp_resolved > 0);
    CHECK(ml_resolved >= bp_resolved);  // ML resolves at least as much
}

TEST_CASE("awgn decoding: a-posteriori equals exact MAP marginals on a cycle-free graph") {
    const auto g = single_cn(ComponentCode::spc(3));
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> llr(3);
        for (double& l : llr) l = 4.0 * rng.normal();
        const auto out = decode_awgn(g, llr, 1);

        for (int v = 0; v < 3; ++v) {
            // brute force over the 4 codewords of SPC-3
            double num = 0.0, den = 0.0;
            for (int w = 0; w < 8; ++w) {
                const int b0 = w & 1, b1 = (w >> 1) & 1, b2 = (w >> 2) & 1;
                if ((b0 ^ b1 ^ b2) != 0) continue;
                const double p = std::exp(-(b0 * llr[0] + b1 * llr[1] + b2 * llr[2]));
                (((w >> v) & 1) ? den : num) += p;
            }
            const double map_llr = std::log(num / den);
            CHECK(out.llr_app[v] == doctest::Approx(map_llr).epsilon(1e-9));
        }
    }
}

TEST_CASE("awgn decoding: saturation and the zero-iteration contract") {
    const auto g = sample_random_code(reference::regular(3, 6), 24, 3);
    std::vector<double> strong(24, 25.0);
    const auto one = decode_awgn(g, strong, 10);
    CHECK(one.iterations_used == 1);  // syndrome already clean
    CHECK(one.syndrome_ok);
    for (auto b : one.hard) CHECK(b == 0);

    std::vector<double> mixed(24);
    Rng rng(9);
    for (double& l : mixed) l = rng.normal();
    const auto zero = decode_awgn(g, mixed, 0);
    for (int i = 0; i < 24; ++i) CHECK(zero.hard[i] == (mixed[i] < 0.0 ? 1 : 0));

    CHECK_THROWS_AS(decode_awgn(tiny_gldpc(), std::vector<double>(13, 1.0), 5), ValidationError);
}

TEST_CASE("monte carlo: degenerate channels and reproducibility") {
    const auto g = sample_random_code(reference::regular(3, 6), 48, 13);

    SimulationTask task;
    task.grid = {BecParameter{0.0}, BecParameter{1.0}};
    task.i_max = 10;
    task.min_bit_errors = 50;
    task.max_codewords = 200;
    task.seed = 21;
    const auto curve = monte_carlo(g, task);
    CHECK(curve.points[0].ber == 0.0);
    CHECK(curve.points[1].ber == 1.0);  // unresolved erasures count as errors

    task.grid = {BecParameter{0.35}};
    task.threads = 1;
    const auto a = monte_carlo(g, task);
    task.threads = 2;
    const auto b = monte_carlo(g, task);
    CHECK(a.points[0].bit_errors == b.points[0].bit_errors);  // thread-count independent
    CHECK(a.points[0].words == b.points[0].words);
    CHECK(a.points[0].mean_iterations == b.points[0].mean_iterations);
}

TEST_CASE("monte carlo: BER is monotone in the iteration cap on the BEC") {
    const auto g = sample_random_code(reference::ensemble_b(), 1000, 4);
    SimulationTask task;
    task.grid = {BecParameter{0.32}};
    task.min_bit_errors = 300;
    task.max_codewords = 3000;
    task.seed = 8;
    task.i_max = 3;
    const auto few = monte_carlo(g, task);
    task.i_max = 30;
    const auto many = monte_carlo(g, task);
    CHECK(few.points[0].ber >= many.points[0].ber);
}

TEST_CASE("monte carlo: encoded validation mode agrees with all-zero transmission") {
    const auto g = sample_random_code(reference::regular(3, 6), 96, 6);
    SimulationTask task;
    task.grid = {BecParameter{0.30}};
    task.i_max = 40;
    task.min_bit_errors = 400;
    task.max_codewords = 4000;
    task.seed = 77;
    const auto zero = monte_carlo(g, task);
    task.encoded = true;
    const auto enc = monte_carlo(g, task);
    CHECK(enc.points[0].ber == doctest::Approx(zero.points[0].ber).epsilon(0.25));
    CHECK(enc.points[0].ber > 0.0);
}

TEST_CASE("monte carlo: iteration histogram accounts for every word") {
    const auto g = sample_random_code(reference::regular(3, 6), 48, 2);
    SimulationTask task;
    task.grid = {BecParameter{0.35}};
    task.i_max = 8;
    task.min_bit_errors = 100;
    task.max_codewords = 600;
    task.seed = 12;
    const auto curve = monte_carlo(g, task);
    const auto& p = curve.points[0];
    REQUIRE(p.iteration_histogram.size() == 9);
    long total = 0, weighted = 0;
    for (int i = 0; i <= 8; ++i) {
        total += p.iteration_histogram[i];
        weighted += i * p.iteration_histogram[i];
    }
    CHECK(total == p.words);
    CHECK(static_cast<double>(weighted) / total == doctest::Approx(p.mean_iterations));
}

TEST_CASE("awgn monte carlo runs and improves with SNR") {
    const auto g = sample_random_code(reference::ensemble_e(), 512, 10);
    SimulationTask task;
    task.grid = {AwgnParameter{0.5, 0.5}, AwgnParameter{3.0, 0.5}};
    task.i_max = 10;
    task.min_bit_errors = 100;
    task.max_codewords = 400;
    task.seed = 3;
    const auto curve = monte_carlo(g, task);
    CHECK(curve.points[0].ber > curve.points[1].ber);
    CHECK(curve.points[1].mean_iterations <= task.i_max);
}
