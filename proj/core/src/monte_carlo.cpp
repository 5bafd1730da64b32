#include "ldpcdes/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <thread>

#include "ldpcdes/rng.hpp"

namespace ldpcdes {

namespace {

constexpr long kBatchWords = 64;
constexpr int kBatchGroup = 4;  // stop checks happen every group

struct BatchResult {
    long words = 0, word_errors = 0, bits = 0, bit_errors = 0;
    long iter_sum = 0;
    std::vector<long> iter_hist;
};

// Systematic encoder derived from the expanded parity-check matrix
// (validation mode): free columns carry information, pivots are solved.
struct Encoder {
    gf2::BitMatrix rr;
    std::vector<int> pivots;
    std::vector<int> free_cols;

    explicit Encoder(const TannerGraph& graph) {
        const auto rref = gf2::rref(expand_parity_check(graph).dense());
        rr = rref.m;
        pivots = rref.pivot_cols;
        std::vector<bool> is_pivot(rr.cols(), false);
        for (int c : pivots) is_pivot[c] = true;
        for (int c = 0; c < rr.cols(); ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
    }

    void encode(Rng& rng, std::vector<std::uint8_t>& word) const {
        std::fill(word.begin(), word.end(), 0);
        for (int f : free_cols) word[f] = static_cast<std::uint8_t>(rng.below(2));
        for (size_t r = 0; r < pivots.size(); ++r) {
            int parity = 0;
            for (int f : free_cols)
                if (rr.get(static_cast<int>(r), f) && word[f]) parity ^= 1;
            word[pivots[r]] = static_cast<std::uint8_t>(parity);
        }
    }
};

}  // namespace

BerCurve monte_carlo(const TannerGraph& graph, const SimulationTask& task) {
    if (task.grid.empty()) throw ValidationError("monte_carlo: empty channel grid");
    if (task.i_max < 1) throw ValidationError("monte_carlo: i_max must be >= 1");
    if (task.min_bit_errors < 1 || task.max_codewords < 1)
        throw ValidationError("monte_carlo: stopping targets must be >= 1");

    const int n = graph.n;
    std::unique_ptr<Encoder> encoder;
    if (task.encoded) encoder = std::make_unique<Encoder>(graph);

    int threads = task.threads > 0 ? task.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, threads);

    BerCurve curve;
    for (size_t point = 0; point < task.grid.size(); ++point) {
        const ChannelParameter& ch = task.grid[point];
        const ChannelKind kind = channel_kind(ch);

        auto run_batch = [&](long batch_index) {
            Rng rng(mix_seed(task.seed, point + 1, static_cast<std::uint64_t>(batch_index) + 1));
            BatchResult out;
            out.iter_hist.assign(task.i_max + 1, 0);
            std::vector<std::uint8_t> sent(n, 0);
            std::vector<Bit> word(n);
            std::vector<double> llrs(n);
            for (long w = 0; w < kBatchWords; ++w) {
                if (encoder) encoder->encode(rng, sent);
                long errors = 0;
                int iterations = 0;
                if (kind == ChannelKind::Bec) {
                    const double eps = std::get<BecParameter>(ch).epsilon;
                    for (int i = 0; i < n; ++i)
                        word[i] = rng.uniform() < eps ? Bit::Erased : (sent[i] ? Bit::One : Bit::Zero);
                    auto result = decode_bec(graph, word, task.i_max);
                    iterations = result.iterations_used;
                    for (int i = 0; i < n; ++i) {
                        const Bit expect = sent[i] ? Bit::One : Bit::Zero;
                        if (result.word[i] != expect) ++errors;  // unresolved or wrong
                    }
                } else {
                    const auto& awgn = std::get<AwgnParameter>(ch);
                    const double sigma_ch = awgn.llr_sigma();
                    const double sigma_n = 2.0 / sigma_ch;
                    for (int i = 0; i < n; ++i) {
                        const double s = sent[i] ? -1.0 : 1.0;  // BPSK, bit 0 -> +1
                        const double y = s + sigma_n * rng.normal();
                        llrs[i] = 2.0 * y / (sigma_n * sigma_n);
                    }
                    auto result = decode_awgn(graph, llrs, task.i_max);
                    iterations = result.iterations_used;
                    for (int i = 0; i < n; ++i)
                        if (result.hard[i] != sent[i]) ++errors;
                }
                ++out.words;
                out.bits += n;
                out.bit_errors += errors;
                out.word_errors += (errors > 0);
                out.iter_sum += iterations;
                ++out.iter_hist[iterations];
            }
            return out;
        };

        BerPoint acc;
        acc.param = threshold_value(ch);
        acc.iteration_histogram.assign(task.i_max + 1, 0);
        long iter_sum = 0;
        long next_batch = 0;
        while (acc.bit_errors < task.min_bit_errors && acc.words < task.max_codewords) {
            // One group of batches, executed on the pool, merged in batch
            // order; identical counts for any thread count.
            std::vector<BatchResult> group(kBatchGroup);
            std::atomic<int> cursor{0};
            auto worker = [&] {
                for (int g = cursor.fetch_add(1); g < kBatchGroup; g = cursor.fetch_add(1))
                    group[g] = run_batch(next_batch + g);
            };
            if (threads <= 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                const int t = std::min(threads, kBatchGroup);
                pool.reserve(t);
                for (int i = 0; i < t; ++i) pool.emplace_back(worker);
                for (auto& th : pool) th.join();
            }
            for (const auto& b : group) {
                acc.words += b.words;
                acc.word_errors += b.word_errors;
                acc.bits += b.bits;
                acc.bit_errors += b.bit_errors;
                iter_sum += b.iter_sum;
                for (int i = 0; i <= task.i_max; ++i) acc.iteration_histogram[i] += b.iter_hist[i];
            }
            next_batch += kBatchGroup;
        }
        acc.ber = acc.bits > 0 ? static_cast<double>(acc.bit_errors) / acc.bits : 0.0;
        acc.cer = acc.words > 0 ? static_cast<double>(acc.word_errors) / acc.words : 0.0;
        acc.mean_iterations = acc.words > 0 ? static_cast<double>(iter_sum) / acc.words : 0.0;
        curve.points.push_back(acc);
    }
    return curve;
}

}  // namespace ldpcdes
