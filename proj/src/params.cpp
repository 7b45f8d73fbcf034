#include "rigidity/params.hpp"

#include <algorithm>

#include "rigidity/errors.hpp"

namespace rigidity {

RigidityParams derive_params(int k, int M, DegreeVector d, MultiplicityVector xi) {
    if (static_cast<int>(d.entries.size()) != k)
        throw ShapeError("degree vector length mismatch");
    if (static_cast<int>(xi.entries.size()) != k)
        throw ShapeError("xi vector length mismatch");

    RigidityParams p;
    p.k = k;
    p.M = M;
    p.degrees = std::move(d);
    p.multiplicities = std::move(xi);
    for (int i = 0; i < k; ++i) {
        const int di = p.degrees.entries[i];
        const int xii = p.multiplicities.entries[i];
        if (xii == di) ++p.c_star;
        if (xii >= 2) p.sing_type.push_back(xii);
        p.mu *= xii;
        p.deg_v *= di;
    }
    std::sort(p.sing_type.begin(), p.sing_type.end());
    return p;
}

RigidityParams validate_shape(int k, int M, const DegreeVector& d,
                              const MultiplicityVector& xi) {
    if (k < 2) throw ShapeError("k below 2");
    if (M < 2 * k + 1) throw ShapeError("M below 2k+1");
    if (static_cast<int>(d.entries.size()) != k)
        throw ShapeError("degree vector length mismatch");
    if (static_cast<int>(xi.entries.size()) != k)
        throw ShapeError("xi vector length mismatch");

    long long sum = 0;
    for (int i = 0; i < k; ++i) {
        if (d.entries[i] < 2) throw ShapeError("degree below 2");
        if (i > 0 && d.entries[i - 1] > d.entries[i])
            throw ShapeError("degrees not sorted");
        sum += d.entries[i];
    }
    if (sum != static_cast<long long>(M) + k)
        throw ShapeError("degree sum mismatch");
    for (int i = 0; i < k; ++i) {
        if (xi.entries[i] < 1) throw ShapeError("xi below 1");
        if (xi.entries[i] > d.entries[i]) throw ShapeError("xi exceeds degree");
    }
    return derive_params(k, M, d, xi);
}

HypothesisVerdict check_main_inequality(const RigidityParams& p) {
    HypothesisVerdict v;
    v.lhs = 0;
    for (int i = 0; i < p.k; ++i) {
        const Int di = p.degrees.entries[i];
        const Int xii = p.multiplicities.entries[i];
        v.lhs += (di + 1) * (di + 2) - xii * (xii + 1);
    }
    v.rhs = Int(4) * p.M + 2 * Int(p.degrees.entries.back()) + 2 * Int(p.c_star) -
            2 * Int(p.k);
    v.holds = v.lhs >= v.rhs;
    return v;
}

HypothesisVerdict check_dimension_inequality(const RigidityParams& p) {
    HypothesisVerdict v;
    v.lhs = p.M;
    v.rhs = 3;
    for (int t : p.sing_type) v.rhs += t + 1;
    v.holds = v.lhs >= v.rhs;
    return v;
}

Rat mu_over_d(const RigidityParams& p) { return Rat(p.mu, p.deg_v); }

}  // namespace rigidity
