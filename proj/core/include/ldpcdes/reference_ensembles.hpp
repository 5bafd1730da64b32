#pragma once

// The seven published DDPs (A-C for the BEC, D-G for the AWGN channel), the
// degree-2-constrained comparison DDP, and a few standard regular
// ensembles. Printed table values are 6-decimal truncations; they are
// rescaled to sum exactly to one before validation.

#include <string>
#include <utility>
#include <vector>

#include "ldpcdes/ensemble.hpp"

namespace ldpcdes::reference {

DegreeDistributionPair ensemble_a();  // BEC GLDPC, designed for i_max = 10
DegreeDistributionPair ensemble_b();  // BEC LDPC, i_max = 10
DegreeDistributionPair ensemble_c();  // BEC GLDPC supports, i_max = 200
DegreeDistributionPair ensemble_d();  // AWGN, unlimited iterations
DegreeDistributionPair ensemble_e();  // AWGN, i_max = 10
DegreeDistributionPair ensemble_f();  // AWGN, i_max = 20
DegreeDistributionPair ensemble_g();  // AWGN, i_max = 30

// "A".."G" (case-insensitive); throws ValidationError otherwise.
DegreeDistributionPair by_name(const std::string& name);
std::vector<std::pair<std::string, DegreeDistributionPair>> all();

// Threshold-optimized reference with the growth-rate side constraint
// lambda'(0) rho'(1) < 0.5; used by the minimum-distance comparison.
DegreeDistributionPair constrained_reference();

DegreeDistributionPair regular(int vn_degree, int cn_degree);  // e.g. (3,6)

}  // namespace ldpcdes::reference
