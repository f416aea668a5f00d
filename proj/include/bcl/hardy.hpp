// Truncated-degree realization of the commuting isometry pair
// V1 = (I (x) P + Mz (x) Pperp)(I (x) U*), V2 = (I (x) U)(Mz (x) P + I (x) Pperp)
// on the degree-truncated vector-valued Hardy space, with checks of
// V1 V2 = V2 V1 = Mz (x) I, isometry below the edge, and the defect block.

#pragma once

#include <string>

#include "bcl/bclbuild.hpp"
#include "bcl/matcore.hpp"

namespace bcl {

struct HardyRealization {
    std::size_t n = 0;  // coefficient dimension
    std::size_t N = 0;  // truncation degree; matrices act on (N+1)*n coordinates
    Matrix v1, v2, mz;  // degree-major blocks: coordinate index = degree*n + i
    BCLTriple source;
};

// Requires N >= 2. Truncated Mz sends the top degree to 0.
HardyRealization realize(const BCLTriple& t, std::size_t N);

struct DefectBlockReport {
    Matrix degree0_block;     // n x n leading block of C(V1, V2)
    double offblock_max = 0;  // all entries of C outside that block, degrees <= N-2
    double edge_max = 0;      // entries touching the top two degrees (reported only)
};

// C = I - V1 V1* - V2 V2* + V1 V2 V1* V2*; away from the truncation edge it
// is supported on the degree-0 block, where it equals Pperp - U Pperp U*.
DefectBlockReport defect_block(const HardyRealization& h);

struct IsometryReport {
    double v1_defect = 0.0;  // max |(Vi* Vi - I)| over degrees < N
    double v2_defect = 0.0;
    double edge_defect = 0.0;  // deviation on the top degree (truncation artifact)
};

IsometryReport isometry_check(const HardyRealization& h);

// max |V1 V2 - Mz (x) I| and |V1 V2 - V2 V1| over all degrees
double commutation_residual(const HardyRealization& h);

// {"N": int, "n": int, "V1": <matrix>, "V2": <matrix>}
std::string realization_to_json(const HardyRealization& h);

}  // namespace bcl
