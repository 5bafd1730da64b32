#pragma once

// alist sparse-matrix text format (N M header, max degrees, per-column and
// per-row degree lists, then 1-based zero-padded index lists).

#include <string>

#include "ldpcdes/tanner_graph.hpp"

namespace ldpcdes {

std::string to_alist(const ParityCheckMatrix& h);
ParityCheckMatrix parse_alist(const std::string& text);

void write_alist(const ParityCheckMatrix& h, const std::string& path);
ParityCheckMatrix read_alist(const std::string& path);

// Treats each alist row as a single parity-check constraint (LDPC view);
// rows lighter than weight 3 are rejected.
TannerGraph graph_from_parity_check(const ParityCheckMatrix& h);

}  // namespace ldpcdes
