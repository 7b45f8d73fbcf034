#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidity/numbers.hpp"
#include "rigidity/params.hpp"

namespace rigidity {

// The hypertangent-divisor schedule at the singular point: counting tables,
// the divisor levels in standard order (by level, then index), and the slope
// (b+1)/b each level-b divisor contributes to the multiplicity/degree ratio.
struct HypertangentSchedule {
    bool degenerate = false;          // no hypertangent levels at all
    std::optional<int> first_level;   // a = min{j : c(j) >= 1}
    std::vector<int> c_table;         // c_table[j-1] = c(j), j = 1 .. d_k - 1
    std::vector<int> m_table;         // m_table[j-1] = m(j) = c(j) - c(j-1)
    std::vector<int> levels;          // level of each divisor, standard order
    std::vector<Rat> slopes;          // (b+1)/b per divisor, non-increasing
    int m_total = 0;                  // sum_i (d_i - xi_i)
};

struct RatioChainStep {
    int index = 0;   // 1-based position of the divisor in standard order
    Rat slope;
    Rat bound;       // running bound after multiplying by this slope
};

// The normalized multiplicity/degree chain. The seed 4*mu/deg is the ratio
// forced on the self-intersection cycle; each step past the second divisor
// multiplies it by that divisor's slope.
struct RatioChain {
    Rat seed;
    std::vector<RatioChainStep> steps;
    Rat final_bound;
    bool short_chain = false;   // fewer than three divisors, no steps taken
};

struct Certificate {
    bool ok = false;
    Rat margin;         // final_bound - 1
    std::string note;
};

// c(j) = #{(i, alpha) : 1 <= i <= k, xi_i <= alpha <= min(j, d_i - 1)}.
int c_of_j(const RigidityParams& p, int j);

HypertangentSchedule build_schedule(const RigidityParams& p);

// Product of all slopes, exactly; 1 for the empty schedule.
Rat slope_product(const HypertangentSchedule& s);

// Builds the chain seeded at 4*mu/deg, multiplying by slopes from the third
// divisor on. Schedules with fewer than three divisors yield an empty step
// list and the short_chain flag.
RatioChain ratio_chain(const RigidityParams& p, const HypertangentSchedule& s);

// Certifies final_bound >= 1: the chain forces multiplicity strictly above
// degree on the last cycle, which no effective cycle can satisfy, so no
// maximal singularity sits at the point. Strictness comes from the strict
// seed inequality; the certificate itself tests the non-strict bound.
Certificate certify_exclusion(const RatioChain& chain);

}  // namespace rigidity
