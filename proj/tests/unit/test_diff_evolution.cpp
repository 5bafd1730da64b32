#include <doctest.h>

#include <cmath>
#include <ldpcdes/diff_evolution.hpp>

using namespace ldpcdes;

namespace {

DesignSpace gldpc_space() {
    std::vector<int> degrees;
    for (int d = 2; d <= 30; ++d) degrees.push_back(d);
    return DesignSpace(degrees,
                       {ComponentCode::from_id("spc-7"), ComponentCode::from_id("hamming-7-4"),
                        ComponentCode::from_id("hamming-15-11")},
                       0.5);
}

}  // namespace

TEST_CASE("mutant: hand arithmetic") {
    CHECK(mutant({0.5, 0.5}, {1.0, 0.0}, {0.0, 1.0}, 0.5) == std::vector<double>{1.0, 0.0});
    const std::vector<double> r1{0.2, 0.8};
    CHECK(mutant(r1, {0.6, 0.4}, {0.6, 0.4}, 0.7) == r1);  // r2 == r3
    CHECK(mutant(r1, {0.9, 0.1}, {0.3, 0.7}, 0.0) == r1);  // F == 0
    CHECK_THROWS_AS(mutant({0.1}, {0.1, 0.2}, {0.3}, 0.5), ValidationError);
}

TEST_CASE("crossover: eta extremes and the frozen seeded vector") {
    const std::vector<double> x{0.1, 0.2, 0.3, 0.4};
    const std::vector<double> v{0.9, 0.8, 0.7, 0.6};
    {
        Rng rng(1);
        CHECK(crossover(x, v, 1.0, rng) == v);
    }
    {
        Rng rng(2);
        const auto u = crossover(x, v, 0.0, rng);
        int from_v = 0;
        for (size_t j = 0; j < u.size(); ++j) from_v += (u[j] == v[j]);
        CHECK(from_v == 1);  // only the forced coordinate
    }
    {
        Rng rng(123);
        const auto u = crossover({0.0, 0.0, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0}, 0.5, rng);
        CHECK(u == std::vector<double>{1.0, 0.0, 0.0, 1.0});  // golden, recorded from this seed
    }
}

TEST_CASE("repair: feasible input unchanged, violated sums fixed, range rejection") {
    const auto space = gldpc_space();

    Rng rng(7);
    const DesignVector feasible = space.sample(rng);
    const auto again = space.repair(feasible.values);
    REQUIRE(again.has_value());
    for (size_t j = 0; j < feasible.values.size(); ++j)
        CHECK(again->values[j] == doctest::Approx(feasible.values[j]).epsilon(1e-12));

    // inflate the lambda sum; repair must restore all three constraints
    auto bent = feasible.values;
    bent[5] += 0.1;
    REQUIRE_FALSE(space.satisfied(bent, 1e-9));
    const auto fixed = space.repair(bent);
    REQUIRE(fixed.has_value());
    CHECK(space.satisfied(fixed->values, 1e-9));

    // a repair that would need a negative entry is rejected
    auto hopeless = feasible.values;
    for (auto& val : hopeless) val = 0.0;
    hopeless[0] = 5.0;                       // lambda far off, nothing to absorb it
    hopeless[space.vn_degrees().size()] = 1.0;  // rho already normalized
    CHECK_FALSE(space.repair(hopeless).has_value());
}

TEST_CASE("random population: validity and the N_p floor") {
    DeConfig config;
    config.vn_degrees = gldpc_space().vn_degrees();
    config.cn_codes = gldpc_space().cn_codes();
    config.population = 70;
    config.seed = 11;
    const auto pop = random_population(config);
    CHECK(pop.size() == 70);
    const auto space = gldpc_space();
    for (const auto& member : pop) CHECK(space.satisfied(member.values, 1e-9));

    config.population = 4;
    CHECK_THROWS_AS(random_population(config), ValidationError);
}

TEST_CASE("single rate-feasible point collapses the population") {
    // lambda over {2,3} with SPC-6 at R=1/2 forces lambda_3 = 1.
    DeConfig config;
    config.vn_degrees = {2, 3};
    config.cn_codes = {ComponentCode::from_id("spc-6")};
    config.population = 8;
    config.seed = 3;
    const auto pop = random_population(config);
    for (const auto& member : pop) {
        CHECK(member.values[0] == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(member.values[1] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("evolve: zero generations returns the best initial member") {
    DeConfig config;
    config.vn_degrees = {2, 3, 4};
    config.cn_codes = {ComponentCode::from_id("spc-7")};
    config.population = 8;
    config.max_generations = 0;
    config.i_max = 5;
    config.seed = 5;
    const auto result = evolve(config);
    CHECK(result.generations_run == 0);
    CHECK(result.best_per_generation.size() == 1);
    CHECK(result.best_threshold > 0.0);
}

TEST_CASE("evolve: awgn channel fitness improves the Eb/N0 threshold") {
    DeConfig config;
    config.vn_degrees = {2, 3, 4, 5, 6};
    config.cn_codes = {ComponentCode::from_id("spc-8")};
    config.channel = ChannelKind::Awgn;
    config.threshold_tolerance = 1e-3;
    config.population = 8;
    config.max_generations = 4;
    config.i_max = 10;
    config.seed = 17;
    const auto result = evolve(config);
    CHECK(result.best_threshold < 10.0);  // satisfiable within the bracket
    for (size_t g = 1; g < result.best_per_generation.size(); ++g)
        CHECK(result.best_per_generation[g] <= result.best_per_generation[g - 1] + 1e-15);  // dB decreases
}

TEST_CASE("evolve: deterministic, monotone best, constraint-preserving") {
    DeConfig config;
    config.vn_degrees = {2, 3, 4, 5, 6, 7, 8};
    config.cn_codes = {ComponentCode::from_id("spc-7")};
    config.population = 12;
    config.max_generations = 15;
    config.i_max = 10;
    config.seed = 99;
    config.threads = 2;

    const auto a = evolve(config);
    const auto b = evolve(config);
    CHECK(a.best.values == b.best.values);  // bit-identical
    CHECK(a.best_per_generation == b.best_per_generation);

    for (size_t g = 1; g < a.best_per_generation.size(); ++g)
        CHECK(a.best_per_generation[g] >= a.best_per_generation[g - 1] - 1e-15);

    const DesignSpace space(config.vn_degrees, config.cn_codes, config.target_rate);
    CHECK(space.satisfied(a.best.values, 1e-6));
    CHECK(std::abs(design_rate(a.ddp) - 0.5) < 1e-6);
    CHECK(a.best_threshold > 0.2);  // loose sanity floor for this small run
}
