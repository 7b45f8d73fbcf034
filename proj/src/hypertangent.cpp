#include "rigidity/hypertangent.hpp"

#include <algorithm>

namespace rigidity {

int c_of_j(const RigidityParams& p, int j) {
    int count = 0;
    for (int i = 0; i < p.k; ++i) {
        const int lo = p.multiplicities.entries[i];
        const int hi = std::min(j, p.degrees.entries[i] - 1);
        if (hi >= lo) count += hi - lo + 1;
    }
    return count;
}

HypertangentSchedule build_schedule(const RigidityParams& p) {
    HypertangentSchedule s;
    for (int i = 0; i < p.k; ++i)
        s.m_total += p.degrees.entries[i] - p.multiplicities.entries[i];

    const int top = p.degrees.entries.back() - 1;
    int prev = 0;
    for (int j = 1; j <= top; ++j) {
        const int cj = c_of_j(p, j);
        s.c_table.push_back(cj);
        s.m_table.push_back(cj - prev);
        if (!s.first_level && cj >= 1) s.first_level = j;
        prev = cj;
    }

    if (s.m_total == 0) {
        s.degenerate = true;
        return s;
    }

    // Standard order: ascending level, so slopes (j+1)/j never increase.
    for (int j = 1; j <= top; ++j) {
        for (int copy = 0; copy < s.m_table[j - 1]; ++copy) {
            s.levels.push_back(j);
            s.slopes.emplace_back(j + 1, j);
        }
    }
    return s;
}

Rat slope_product(const HypertangentSchedule& s) {
    Rat prod = 1;
    for (const Rat& b : s.slopes) prod *= b;
    return prod;
}

RatioChain ratio_chain(const RigidityParams& p, const HypertangentSchedule& s) {
    RatioChain chain;
    chain.seed = Rat(4 * p.mu, p.deg_v);
    chain.final_bound = chain.seed;
    const int m = static_cast<int>(s.slopes.size());
    if (m < 3) {
        chain.short_chain = true;
        return chain;
    }
    // The first two divisors are consumed reaching the codimension-2 cycle;
    // the gain starts with the third.
    for (int i = 3; i <= m; ++i) {
        chain.final_bound *= s.slopes[i - 1];
        chain.steps.push_back({i, s.slopes[i - 1], chain.final_bound});
    }
    return chain;
}

Certificate certify_exclusion(const RatioChain& chain) {
    Certificate cert;
    cert.ok = chain.final_bound >= 1;
    cert.margin = chain.final_bound - 1;
    cert.note = cert.ok
                    ? "chain bound >= 1; the strict seed makes mult exceed deg "
                      "on the final cycle, excluding a maximal singularity"
                    : "chain bound below 1; no exclusion certificate";
    return cert;
}

}  // namespace rigidity
