#include "ldpcdes/diff_evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace ldpcdes {

namespace {

void parallel_for_n(int n, int threads, const std::function<void(int)>& fn) {
    int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    t = std::max(1, std::min(t, n));
    if (t <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<double> mutant(const std::vector<double>& r1, const std::vector<double>& r2,
                           const std::vector<double>& r3, double f) {
    if (r1.size() != r2.size() || r1.size() != r3.size()) throw ValidationError("mutant: dimension mismatch");
    std::vector<double> v(r1.size());
    for (size_t j = 0; j < v.size(); ++j) v[j] = r1[j] + f * (r2[j] - r3[j]);
    return v;
}

std::vector<double> crossover(const std::vector<double>& x, const std::vector<double>& v, double eta, Rng& rng) {
    if (x.size() != v.size()) throw ValidationError("crossover: dimension mismatch");
    std::vector<double> u(x.size());
    const size_t forced = rng.below(x.size());  // Y[i]
    for (size_t j = 0; j < x.size(); ++j) {
        const double draw = rng.uniform();  // X[j]
        u[j] = (draw <= eta || j == forced) ? v[j] : x[j];
    }
    return u;
}

DesignSpace::DesignSpace(std::vector<int> vn_degrees, std::vector<CodeRef> cn_codes, double target_rate)
    : vn_degrees_(std::move(vn_degrees)), cn_codes_(std::move(cn_codes)), target_rate_(target_rate) {
    if (vn_degrees_.empty() || cn_codes_.empty()) throw ValidationError("design space: empty support");
    std::sort(vn_degrees_.begin(), vn_degrees_.end());
    if (std::adjacent_find(vn_degrees_.begin(), vn_degrees_.end()) != vn_degrees_.end())
        throw ValidationError("design space: duplicate VN degree");
    for (int d : vn_degrees_)
        if (d < 2) throw ValidationError("design space: VN degree must be >= 2");
    for (const auto& c : cn_codes_)
        if (!c) throw ValidationError("design space: null component code");
    if (!(target_rate_ > 0.0 && target_rate_ < 1.0)) throw ValidationError("design space: rate must be in (0,1)");
}

bool DesignSpace::satisfied(const std::vector<double>& raw, double tol) const {
    const size_t L = vn_degrees_.size();
    if (raw.size() != static_cast<size_t>(dimension())) return false;
    double sl = 0.0, sr = 0.0, integral = 0.0, deficit = 0.0;
    for (size_t i = 0; i < L; ++i) {
        if (raw[i] < -tol || raw[i] > 1.0 + tol) return false;
        sl += raw[i];
        integral += raw[i] / vn_degrees_[i];
    }
    for (size_t t = 0; t < cn_codes_.size(); ++t) {
        const double f = raw[L + t];
        if (f < -tol || f > 1.0 + tol) return false;
        sr += f;
        deficit += f * (1.0 - cn_codes_[t]->rate());
    }
    return std::abs(sl - 1.0) <= tol && std::abs(sr - 1.0) <= tol &&
           std::abs(deficit - (1.0 - target_rate_) * integral) <= tol;
}

std::optional<DesignVector> DesignSpace::repair(std::vector<double> raw) const {
    const size_t L = vn_degrees_.size();
    const size_t T = cn_codes_.size();
    if (raw.size() != static_cast<size_t>(dimension())) throw ValidationError("repair: dimension mismatch");

    double sum_l = 0.0, sum_r = 0.0, integral = 0.0, deficit = 0.0;
    for (size_t i = 0; i < L; ++i) {
        sum_l += raw[i];
        integral += raw[i] / vn_degrees_[i];
    }
    for (size_t t = 0; t < T; ++t) {
        sum_r += raw[L + t];
        deficit += raw[L + t] * (1.0 - cn_codes_[t]->rate());
    }
    const double r1 = 1.0 - sum_l;
    const double r2 = 1.0 - sum_r;
    const double g = deficit - (1.0 - target_rate_) * integral;  // want 0 after repair

    auto finish = [&]() -> std::optional<DesignVector> {
        for (double& x : raw) {
            if (x < -1e-12 || x > 1.0 + 1e-12) return std::nullopt;
            x = std::clamp(x, 0.0, 1.0);
        }
        if (!satisfied(raw, 1e-9)) return std::nullopt;
        return DesignVector{std::move(raw)};
    };

    if (L >= 2) {
        // Adjust: lambda entry of the largest fraction, lambda entry of the
        // smallest in-support degree, rho entry of the largest fraction.
        const size_t b = 0;  // degrees sorted ascending
        size_t a = 1;
        for (size_t i = 1; i < L; ++i)
            if (raw[i] > raw[a]) a = i;
        size_t c = 0;
        for (size_t t = 1; t < T; ++t)
            if (raw[L + t] > raw[L + c]) c = t;

        const double dc = r2;
        const double u = g + (1.0 - cn_codes_[c]->rate()) * dc;
        const double da_deg = vn_degrees_[a];
        const double db_deg = vn_degrees_[b];
        const double det = 1.0 / da_deg - 1.0 / db_deg;
        if (std::abs(det) < 1e-15) return std::nullopt;  // singular repair system
        const double da = (u / (1.0 - target_rate_) - r1 / db_deg) / det;
        const double db = r1 - da;
        raw[a] += da;
        raw[b] += db;
        raw[L + c] += dc;
        return finish();
    }

    // Single-degree lambda support: the simplex pins lambda, adjust two rho
    // entries (largest fractions first, skipping equal-rate pairs).
    raw[0] += r1;
    if (T == 1) {
        raw[L] += r2;
        return std::abs(g - (1.0 - target_rate_) * (r1 / vn_degrees_[0])) < 1e-9 ? finish() : std::nullopt;
    }
    std::vector<size_t> order(T);
    for (size_t t = 0; t < T; ++t) order[t] = t;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return raw[L + x] > raw[L + y]; });
    const double w = (1.0 - target_rate_) * (r1 / vn_degrees_[0]) - g;
    for (size_t i = 0; i + 1 < order.size(); ++i) {
        for (size_t j = i + 1; j < order.size(); ++j) {
            const size_t c = order[i], d = order[j];
            const double rc = 1.0 - cn_codes_[c]->rate();
            const double rd = 1.0 - cn_codes_[d]->rate();
            if (std::abs(rc - rd) < 1e-15) continue;
            const double dc = (w - rd * r2) / (rc - rd);
            const double dd = r2 - dc;
            auto candidate = raw;
            candidate[L + c] += dc;
            candidate[L + d] += dd;
            std::swap(raw, candidate);
            auto result = finish();
            if (result) return result;
            std::swap(raw, candidate);
        }
    }
    return std::nullopt;
}

DesignVector DesignSpace::sample(Rng& rng, int retry_cap) const {
    const size_t L = vn_degrees_.size();
    const size_t T = cn_codes_.size();
    // Attainable lambda integrals: all mass on the largest / smallest degree.
    const double int_min = 1.0 / vn_degrees_.back();
    const double int_max = 1.0 / vn_degrees_.front();

    for (int attempt = 0; attempt < retry_cap; ++attempt) {
        std::vector<double> raw(dimension());
        double sl = 0.0, sr = 0.0;
        for (size_t i = 0; i < L; ++i) sl += (raw[i] = rng.exponential());
        for (size_t t = 0; t < T; ++t) sr += (raw[L + t] = rng.exponential());
        for (size_t i = 0; i < L; ++i) raw[i] /= sl;
        for (size_t t = 0; t < T; ++t) raw[L + t] /= sr;

        // A raw simplex draw is usually far from the rate manifold (the
        // three-element repair only absorbs small residuals), so project
        // first: blend rho until the required lambda integral is attainable,
        // then blend lambda onto it exactly.
        auto deficit = [&] {
            double acc = 0.0;
            for (size_t t = 0; t < T; ++t) acc += raw[L + t] * (1.0 - cn_codes_[t]->rate());
            return acc;
        };
        double required = deficit() / (1.0 - target_rate_);
        if (required < int_min - 1e-12 || required > int_max + 1e-12) {
            const double goal = std::clamp(required, int_min, int_max);
            const double target_deficit = goal * (1.0 - target_rate_);
            size_t anchor = 0;
            for (size_t t = 1; t < T; ++t) {
                const bool lower = target_deficit < deficit();
                const double dt = 1.0 - cn_codes_[t]->rate();
                const double da = 1.0 - cn_codes_[anchor]->rate();
                if (lower ? dt < da : dt > da) anchor = t;
            }
            const double da = 1.0 - cn_codes_[anchor]->rate();
            if (std::abs(da - deficit()) < 1e-15) continue;
            double t_mix = (target_deficit - deficit()) / (da - deficit());
            if (!(t_mix >= -1e-9 && t_mix <= 1.0 + 1e-9)) continue;  // support cannot reach the rate
            t_mix = std::clamp(t_mix, 0.0, 1.0);
            for (size_t t = 0; t < T; ++t) raw[L + t] *= (1.0 - t_mix);
            raw[L + anchor] += t_mix;
            required = deficit() / (1.0 - target_rate_);
        }
        double integral = 0.0;
        for (size_t i = 0; i < L; ++i) integral += raw[i] / vn_degrees_[i];
        const size_t anchor = (required > integral) ? 0 : L - 1;  // degrees sorted ascending
        const double anchor_int = 1.0 / vn_degrees_[anchor];
        if (std::abs(anchor_int - integral) > 1e-15) {
            double t_mix = (required - integral) / (anchor_int - integral);
            if (!(t_mix >= -1e-9 && t_mix <= 1.0 + 1e-9)) continue;
            t_mix = std::clamp(t_mix, 0.0, 1.0);
            for (size_t i = 0; i < L; ++i) raw[i] *= (1.0 - t_mix);
            raw[anchor] += t_mix;
        }
        if (auto repaired = repair(std::move(raw))) return std::move(*repaired);
    }
    throw ComputeError("design space: no feasible vector found for the given supports and rate (infeasible support)");
}

DegreeDistributionPair DesignSpace::to_ddp(const DesignVector& v) const {
    const size_t L = vn_degrees_.size();
    std::map<int, double> lambda;
    for (size_t i = 0; i < L; ++i) lambda[vn_degrees_[i]] = v.values[i];
    std::vector<CheckType> rho;
    for (size_t t = 0; t < cn_codes_.size(); ++t) rho.push_back({cn_codes_[t], v.values[L + t]});
    return {VariableDistribution(std::move(lambda)), CheckDistribution(std::move(rho))};
}

namespace {

void validate_config(const DeConfig& config) {
    if (config.population < 5)
        throw ValidationError("de: population must be >= 5 (mutation draws three distinct partners)");
    if (!(config.weight_f > 0.0)) throw ValidationError("de: F must be > 0");
    if (!(config.crossover_eta > 0.0 && config.crossover_eta < 1.0))
        throw ValidationError("de: eta must be in (0,1)");
    if (config.i_max < 1) throw ValidationError("de: i_max must be >= 1");
    if (config.max_generations < 0) throw ValidationError("de: generations must be >= 0");
}

struct Fitness {
    std::optional<double> value;  // threshold; nullopt = unsatisfiable
};

bool fitness_better(ChannelKind kind, const Fitness& a, const Fitness& b) {
    if (!a.value) return false;
    if (!b.value) return true;
    return better_threshold(kind, *a.value, *b.value);
}

}  // namespace

std::vector<DesignVector> random_population(const DeConfig& config) {
    validate_config(config);
    DesignSpace space(config.vn_degrees, config.cn_codes, config.target_rate);
    std::vector<DesignVector> pop;
    pop.reserve(config.population);
    for (int i = 0; i < config.population; ++i) {
        Rng rng(mix_seed(config.seed, 0, static_cast<std::uint64_t>(i) + 1));
        pop.push_back(space.sample(rng));
    }
    return pop;
}

DeResult evolve(const DeConfig& config, const DeProgress& progress) {
    validate_config(config);
    DesignSpace space(config.vn_degrees, config.cn_codes, config.target_rate);
    const int np = config.population;

    auto evaluate = [&](const DesignVector& v) -> Fitness {
        const ThresholdQuery q{space.to_ddp(v), config.channel,          config.i_max, config.xi,
                               config.threshold_tolerance, /*a_post=*/false, ExitMode::Fast};
        try {
            return {threshold_value(iteration_constrained_threshold(q))};
        } catch (const ComputeError&) {
            return {std::nullopt};
        }
    };

    std::vector<DesignVector> pop = random_population(config);
    std::vector<Fitness> fitness(np);
    parallel_for_n(np, config.threads, [&](int i) { fitness[i] = evaluate(pop[i]); });

    auto best_index = [&]() {
        int best = 0;
        for (int i = 1; i < np; ++i)
            if (fitness_better(config.channel, fitness[i], fitness[best])) best = i;
        return best;
    };

    std::vector<double> best_curve;
    int best = best_index();
    if (!fitness[best].value) throw ComputeError("de: no feasible member in the initial population");
    best_curve.push_back(*fitness[best].value);
    if (progress) progress(0, *fitness[best].value);

    double last_best = *fitness[best].value;
    int stall = 0;
    int gen = 0;
    for (gen = 1; gen <= config.max_generations && stall < config.stall_generations; ++gen) {
        // Build all trials serially (cheap), evaluate them concurrently,
        // select in member order so the run is schedule-independent.
        std::vector<std::optional<DesignVector>> trials(np);
        for (int i = 0; i < np; ++i) {
            Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(gen), static_cast<std::uint64_t>(i) + 1));
            for (int attempt = 0; attempt < config.repair_retry_cap && !trials[i]; ++attempt) {
                int r1 = i, r2 = i, r3 = i;
                while (r1 == i) r1 = static_cast<int>(rng.below(np));
                while (r2 == i || r2 == r1) r2 = static_cast<int>(rng.below(np));
                while (r3 == i || r3 == r1 || r3 == r2) r3 = static_cast<int>(rng.below(np));
                auto v = mutant(pop[r1].values, pop[r2].values, pop[r3].values, config.weight_f);
                auto u = crossover(pop[i].values, v, config.crossover_eta, rng);
                trials[i] = space.repair(std::move(u));
            }
        }

        std::vector<Fitness> trial_fitness(np);
        parallel_for_n(np, config.threads, [&](int i) {
            if (trials[i]) trial_fitness[i] = evaluate(*trials[i]);
        });

        for (int i = 0; i < np; ++i) {
            if (trials[i] && fitness_better(config.channel, trial_fitness[i], fitness[i])) {
                pop[i] = std::move(*trials[i]);
                fitness[i] = trial_fitness[i];
            }
        }

        best = best_index();
        const double current = *fitness[best].value;
        best_curve.push_back(current);
        if (progress) progress(gen, current);

        const double improvement = config.channel == ChannelKind::Bec ? current - last_best : last_best - current;
        if (improvement >= config.stall_improvement) {
            stall = 0;
            last_best = current;
        } else {
            ++stall;
        }
    }

    return DeResult{pop[best], *fitness[best].value, space.to_ddp(pop[best]), gen - 1, std::move(best_curve)};
}

}  // namespace ldpcdes
