#pragma once

#include <vector>

#include "rigidity/numbers.hpp"

namespace rigidity {

// Degrees d_1 <= ... <= d_k of the defining equations, each >= 2.
struct DegreeVector {
    std::vector<int> entries;
};

// Multiplicities xi_1 ... xi_k at the marked point, 1 <= xi_i <= d_i.
struct MultiplicityVector {
    std::vector<int> entries;
};

// A complete-intersection parameter tuple (k, M, d, xi) together with the
// invariants derived from it. Immutable by convention; build through
// validate_shape (or derive_params when shape checks are not wanted).
struct RigidityParams {
    int k = 0;
    int M = 0;
    DegreeVector degrees;
    MultiplicityVector multiplicities;

    int c_star = 0;                // #{i : xi_i = d_i}
    std::vector<int> sing_type;    // non-decreasing list of the xi_i >= 2
    Int mu = 1;                    // product of all xi_i
    Int deg_v = 1;                 // product of all d_i

    int l() const { return static_cast<int>(sing_type.size()); }
};

// Both sides of an inequality, so reports can show margins.
struct HypothesisVerdict {
    bool holds = false;
    Int lhs;
    Int rhs;
};

// Fills in the derived fields without enforcing the shape constraints.
// Lengths of d and xi must still match k.
RigidityParams derive_params(int k, int M, DegreeVector d, MultiplicityVector xi);

// Full structural validation: k >= 2, M >= 2k+1, d sorted with entries >= 2,
// sum d_i = M + k, 1 <= xi_i <= d_i. Throws ShapeError naming the first
// violated constraint. Degree vectors are required pre-sorted; sorting here
// would silently break the positional pairing of xi_i with d_i.
RigidityParams validate_shape(int k, int M, const DegreeVector& d,
                              const MultiplicityVector& xi);

// sum_i [(d_i+1)(d_i+2) - xi_i(xi_i+1)]  >=  4M + 2 d_k + 2 c_* - 2k
HypothesisVerdict check_main_inequality(const RigidityParams& p);

// M >= 3 + sum over xi_i >= 2 of (xi_i + 1)
HypothesisVerdict check_dimension_inequality(const RigidityParams& p);

// mu / deg as a reduced rational in (0, 1].
Rat mu_over_d(const RigidityParams& p);

}  // namespace rigidity
