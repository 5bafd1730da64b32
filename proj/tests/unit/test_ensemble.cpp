#include <doctest.h>

#include <cmath>
#include <ldpcdes/ensemble.hpp>
#include <ldpcdes/reference_ensembles.hpp>
#include <ldpcdes/rng.hpp>

using namespace ldpcdes;

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(VariableDistribution({{1, 1.0}}), ValidationError);
    CHECK_THROWS_AS(VariableDistribution({{2, 1.2}}), ValidationError);
    CHECK_THROWS_AS(VariableDistribution({{2, 0.5}, {3, 0.5 + 1e-6}}), ValidationError);  // rejected, not renormalized
    const VariableDistribution pruned({{2, 1.0 - 1e-13}, {3, 1e-13}});
    CHECK(pruned.entries().size() == 1);
    CHECK_THROWS_AS(CheckDistribution({{ComponentCode::spc(6), 0.9}}), ValidationError);
}

TEST_CASE("design rate: published and regular ensembles") {
    CHECK(design_rate(reference::ensemble_a()) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(design_rate(reference::regular(3, 6)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(design_rate(reference::ensemble_b()) == doctest::Approx(0.50005).epsilon(1e-4));
    for (const auto& [name, ddp] : reference::all()) {
        INFO("ensemble ", name);
        CHECK(std::abs(design_rate(ddp) - 0.5) < 1e-3);
    }
}

TEST_CASE("design rate invariant under type relabeling and merging") {
    // Ensemble A with its SPC-7 fraction split across two identical types.
    const auto whole = reference::ensemble_a();
    std::vector<CheckType> split = {{ComponentCode::spc(7), 0.07},
                                    {ComponentCode::from_id("hamming-15-11"), whole.rho.types()[1].fraction},
                                    {ComponentCode::spc(7), whole.rho.types()[0].fraction - 0.07}};
    const DegreeDistributionPair split_ddp{whole.lambda, CheckDistribution(split)};
    CHECK(design_rate(split_ddp) == doctest::Approx(design_rate(whole)).epsilon(1e-12));
}

TEST_CASE("edge_count follows round(N / integral)") {
    CHECK(edge_count(reference::ensemble_a(), 10) == 20);
    CHECK(edge_count(reference::regular(3, 6), 6) == 18);
    // N / 0.2857428... = 34996.503; the realization below settles the exact
    // integer graph counts.
    CHECK(edge_count(reference::ensemble_b(), 10000) == 34997);
}

TEST_CASE("stability product and weight-2 functional") {
    CHECK(stability_product(reference::ensemble_c()) == doctest::Approx(1.908343).epsilon(1e-5));
    CHECK(stability_product(reference::ensemble_b()) == 0.0);
    CHECK(stability_product(reference::regular(3, 6)) == 0.0);
    CHECK_THROWS_AS(stability_product(reference::ensemble_a()), ValidationError);  // generalized CN present

    CHECK(weight2_functional(reference::ensemble_a()) == doctest::Approx(0.805878).epsilon(1e-6));
    // all CN types with r_t >= 3 contribute nothing
    const DegreeDistributionPair pure_hamming{VariableDistribution({{2, 1.0}}),
                                              CheckDistribution({{ComponentCode::hamming(4), 1.0}})};
    CHECK(weight2_functional(pure_hamming) == 0.0);
    const DegreeDistributionPair spc3{VariableDistribution({{2, 1.0}}),
                                      CheckDistribution({{ComponentCode::spc(3), 1.0}})};
    CHECK(weight2_functional(spc3) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("stability product equals finite-difference derivatives on random SPC DDPs") {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        std::map<int, double> lambda;
        double sum = 0.0;
        for (int d : {2, 3, 5, 9}) sum += (lambda[d] = rng.exponential());
        for (auto& [d, f] : lambda) f /= sum;
        std::vector<CheckType> rho{{ComponentCode::spc(5), 0.0}, {ComponentCode::spc(8), 0.0}};
        const double a = rng.uniform();
        rho[0].fraction = a;
        rho[1].fraction = 1.0 - a;
        const DegreeDistributionPair ddp{VariableDistribution(lambda), CheckDistribution(rho)};

        const double h = 1e-6;
        const double dl0 = ddp.lambda.evaluate(h) / h;  // lambda(0)=0
        const double dr1 = (ddp.rho.evaluate(1.0) - ddp.rho.evaluate(1.0 - h)) / h;
        CHECK(stability_product(ddp) == doctest::Approx(dl0 * dr1).epsilon(1e-4));
    }
}

TEST_CASE("good growth classification of the published ensembles") {
    CHECK(good_growth(reference::ensemble_a()));
    CHECK(good_growth(reference::ensemble_b()));
    CHECK(good_growth(reference::ensemble_e()));
    CHECK_FALSE(good_growth(reference::ensemble_c()));
    CHECK_FALSE(good_growth(reference::ensemble_d()));
    CHECK_FALSE(good_growth(reference::ensemble_f()));
    CHECK_FALSE(good_growth(reference::ensemble_g()));
}

TEST_CASE("node_counts produces consistent integer realizations") {
    auto check_realization = [](const DegreeDistributionPair& ddp, long n) {
        const Realization r = node_counts(ddp, n);
        long vn_total = 0, socket_total = 0;
        for (const auto& [d, c] : r.vn_counts) {
            CHECK(c > 0);
            vn_total += c;
            socket_total += static_cast<long>(d) * c;
        }
        CHECK(vn_total == n);
        long cn_sockets = 0;
        const auto& types = ddp.rho.types();
        for (size_t t = 0; t < types.size(); ++t) {
            CHECK(r.cn_counts[t] >= 0);
            cn_sockets += r.cn_counts[t] * types[t].code->length();
        }
        CHECK(socket_total == r.edges);
        CHECK(cn_sockets == r.edges);
        CHECK(std::abs(r.edges - n / ddp.lambda.integral()) <= r.slack + 1e-9);
        return r;
    };

    const auto r36 = check_realization(reference::regular(3, 6), 6);
    CHECK(r36.edges == 18);
    CHECK(r36.cn_counts[0] == 3);

    const auto rb = check_realization(reference::ensemble_b(), 10000);
    long m = 0;
    for (long c : rb.cn_counts) m += c;
    CHECK(std::abs(1.0 - static_cast<double>(m) / 10000 - 0.5) < 2e-3);  // realized rate near 0.5
    CHECK(rb.slack < 60.0);

    const auto ra = check_realization(reference::ensemble_a(), 1500);
    CHECK(ra.edges == 3000);

    for (const auto& [name, ddp] : reference::all()) {
        INFO("ensemble ", name);
        check_realization(ddp, 4000);
    }
    // tiny realization with an oversized degree: cap at the CN count
    const auto rtiny = check_realization(reference::constrained_reference(), 48);
    long m_tiny = 0;
    for (long c : rtiny.cn_counts) m_tiny += c;
    for (const auto& [d, c] : rtiny.vn_counts) CHECK(d <= m_tiny);
}
