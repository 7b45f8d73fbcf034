#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/numbers.hpp"
#include "rigidity/params.hpp"

namespace rigidity {

// One admissible tuple with everything the survey reports about it. Records
// exist only for tuples passing the shape check and both hypothesis
// inequalities.
struct AdmissibleRecord {
    RigidityParams params;
    Rat mu_over_d;
    int m_total = 0;
    Rat final_bound;
    bool all_codim_ok = false;
};

struct ExploreOptions {
    // Candidate xi tuples are counted before enumeration starts; crossing
    // this cap raises ResourceError instead of grinding.
    unsigned long long tuple_cap = 10'000'000ULL;
    int workers = 1;
};

// Every admissible tuple with the given k and M in [M_min, M_max], ordered
// by (M, degree vector, xi vector) lexicographically. M values below the
// structural floor 2k+1 are skipped. Output is independent of the worker
// count.
std::vector<AdmissibleRecord> enumerate_admissible(int k, int M_min, int M_max,
                                                   const ExploreOptions& opts = {});

struct RatioTrendPoint {
    int M = 0;
    Rat max_ratio;
};

struct SurveySummary {
    unsigned long long count = 0;
    Rat max_ratio;                                  // 0 when empty
    std::optional<RigidityParams> max_ratio_witness;
    int min_m = 0;
    std::optional<RigidityParams> min_m_witness;
    // admissible tuples whose codimension assembly nevertheless failed;
    // expected to stay empty
    std::vector<RigidityParams> failures;
    // per-M maximum of mu/deg across the whole k range, reported as data
    // (monotonicity in M is observed, not asserted)
    std::vector<RatioTrendPoint> trend;

    bool empty() const { return count == 0; }
};

SurveySummary survey(int k_min, int k_max, int M_min, int M_max,
                     const ExploreOptions& opts = {});

// CSV schema (one row per record, '\n' line ends, ';' inside list cells):
//   k,M,d,xi,c_star,mu,deg,mu_over_d,m_total,final_bound,
//   eq1_lhs,eq1_rhs,eq2_ok,codim_ok
void export_csv(const std::vector<AdmissibleRecord>& records, std::ostream& os);

// Same data as a JSON array; numbers that can outgrow 64 bits are strings.
void export_json(const std::vector<AdmissibleRecord>& records, std::ostream& os);

// format is "csv" or "json". Throws IOError when the file cannot be written
// and ShapeError for an unknown format.
void export_report(const std::vector<AdmissibleRecord>& records,
                   const std::string& format,
                   const std::filesystem::path& destination);

}  // namespace rigidity
