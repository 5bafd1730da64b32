#pragma once

// Monte Carlo BER/CER measurement: all-zero-codeword transmission (both
// channels are symmetric), per-point stopping on a bit-error target or a
// codeword cap, deterministic under the task seed for any worker count.

#include <cstdint>

#include "ldpcdes/decoder.hpp"
#include "ldpcdes/exit_chart.hpp"

namespace ldpcdes {

struct SimulationTask {
    std::vector<ChannelParameter> grid;
    int i_max = 10;
    long min_bit_errors = 200;
    long max_codewords = 1000000;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = hardware concurrency
    // Transmit random codewords through a systematic encoder instead of the
    // all-zero word (validation mode; slower).
    bool encoded = false;
};

struct BerPoint {
    double param = 0.0;  // epsilon or Eb/N0 [dB]
    long words = 0;
    long word_errors = 0;
    long bits = 0;
    long bit_errors = 0;
    double ber = 0.0;
    double cer = 0.0;
    double mean_iterations = 0.0;
    // words by iterations-used (index 0..i_max), for convergence studies
    std::vector<long> iteration_histogram;
};

struct BerCurve {
    std::vector<BerPoint> points;
};

// An unresolved BEC erasure counts as one bit error. Word counts advance in
// fixed-size batch groups so results do not depend on scheduling or the
// worker count.
BerCurve monte_carlo(const TannerGraph& graph, const SimulationTask& task);

}  // namespace ldpcdes
