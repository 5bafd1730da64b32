#pragma once

// DDP file format shared by every CLI command: a JSON document with fields
//   rate:   target design rate
//   lambda: { "<degree>": fraction, ... }
//   rho:    [ { "type": n, "code": "spc-7"|"hamming-7-4"|"hamming-15-11",
//               "fraction": f }, ... ]

#include <string>

#include "ldpcdes/ensemble.hpp"

namespace ldpcdes {

DegreeDistributionPair parse_ddp(const std::string& json_text);
DegreeDistributionPair load_ddp(const std::string& path);

std::string ddp_to_json(const DegreeDistributionPair& ddp, double rate);
// Atomic write (temp file + rename).
void save_ddp(const DegreeDistributionPair& ddp, double rate, const std::string& path);

}  // namespace ldpcdes
