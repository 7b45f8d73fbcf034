#pragma once

#include <string>
#include <vector>

#include "rigidity/numbers.hpp"
#include "rigidity/params.hpp"

namespace rigidity {

// Degrees of the M-1 restricted equations in standard order:
// {j : 1 <= i <= k, 2 <= j <= d_i} minus one copy of d_k, non-decreasing.
struct DegreeMultiset {
    std::vector<int> degrees;
};

enum class Direction { GE, EQ };

// One counted quantity with its bound. `holds` is value >= threshold for GE
// records and value == threshold for EQ records (dual-route identities).
struct Verdict {
    std::string name;
    Int value;
    Int threshold;
    Direction dir = Direction::GE;
    bool holds = false;
};

Verdict make_ge(std::string name, Int value, Int threshold);
Verdict make_eq(std::string name, Int value, Int threshold);

// Every codimension quantity with its threshold and verdict, in a fixed
// display order ending with the assembled total.
struct CodimReport {
    std::vector<Verdict> records;

    bool all_ok() const;
    const Verdict* find(const std::string& name) const;  // nullptr if absent
};

DegreeMultiset standard_degrees(const RigidityParams& p);

// Closed form sum_{i<k} d_i(d_i+1)/2 + (d_k-1)d_k/2 - k of the degrees above.
Int sum_deg(const RigidityParams& p);

// sum_deg >= 2M - 2.
Verdict lemma21_check(const RigidityParams& p);

struct MinimizeResult {
    Int min_value;
    std::vector<DegreeVector> argmin;   // every minimizer, lexicographic
};

// Exhaustive minimum of sum_deg over sorted degree vectors with entries >= 2
// and sum M + k.
MinimizeResult minimize_sum_deg(int k, int M);

// The balanced vector d_1=..=d_{k-l}=a+1, rest a+2, where M = ka + l;
// always among the minimizers (not always uniquely).
DegreeVector balanced_degree_vector(int k, int M);

// Line avoiding the marked point: value = sum_deg - M + 3, needs >= M + 1.
Verdict b_minus_line_codim(const RigidityParams& p);

// Conditions cut by one equation's components vanishing on a line through
// the marked point: [(d+1)(d+2) - xi(xi+1)] / 2.
Int lemma22_count(int d, int xi);

// Same for the last equation with its top component dropped:
// [d(d+1) - xi(xi+1)] / 2 = lemma22_count - (d+1).
Int lemma23_count(int d, int xi);

// Line through the marked point: value needs >= M + 1 + c_* - k. Holds
// exactly when the main inequality holds (same inequality rearranged).
Verdict b_plus_line_check(const RigidityParams& p);

// Codimension of the locus of special tangent configurations:
// k + #{i : xi_i <= d_i - 1} = 2k - c_*.
Int special_union_codim(const RigidityParams& p);

// Linear-projection bound C(M - i - 1 + deg p_i, deg p_i) for the i-th
// restricted equation, 1-based. Throws IndexError outside 1 .. M-1.
Int remark21_binomial(const RigidityParams& p, int i);

// Common floor C(M-k+1, 2) of the bounds above for i <= k.
Int remark21_floor(int k, int M);

// Quadratic lower-bound profiles; both concave over the integers (second
// difference -2), so interval minima sit at endpoints.
Int phi1(const Int& t, const Int& M);
Int phi2(const Int& t, const Int& M);

// Good-sequence bound for a component spanning a codimension-b subspace:
// (2b+3)(M-1-b) - 2.
Int lemma24_bound(const Int& b, const Int& M);

// Per-index bounds for the higher equations (i = k+1 .. M-1): minimum over
// admissible b of lemma24_bound(b, M) - b(M-b), needs >= M + 1. Computed by
// brute force over b and cross-checked against the endpoint closed form;
// disagreement throws InternalError.
std::vector<Verdict> prop23_check(const RigidityParams& p);

// Combined line bound: min of the two line branches vs M + 1 + c_* - k.
Verdict prop22_check(const RigidityParams& p);

// Full assembly: special-configuration codimension plus the weakest branch
// bound, against the target M + k + 1.
CodimReport theorem21_assemble(const RigidityParams& p);

}  // namespace rigidity
