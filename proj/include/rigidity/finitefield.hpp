#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rigidity/numbers.hpp"
#include "rigidity/params.hpp"

namespace rigidity {

bool is_prime(std::uint64_t n);

// Arithmetic in the p-element field. Elements carry their modulus; mixing
// moduli is a programming error and throws InternalError.
struct PrimeFieldElement {
    std::uint32_t value = 0;
    std::uint32_t modulus = 0;
};

// Canonical constructor: reduces v mod p, rejects non-prime p (ShapeError).
PrimeFieldElement fp(std::uint64_t v, std::uint32_t p);

PrimeFieldElement operator+(PrimeFieldElement a, PrimeFieldElement b);
PrimeFieldElement operator-(PrimeFieldElement a, PrimeFieldElement b);
PrimeFieldElement operator*(PrimeFieldElement a, PrimeFieldElement b);
PrimeFieldElement operator/(PrimeFieldElement a, PrimeFieldElement b);
bool operator==(PrimeFieldElement a, PrimeFieldElement b);
PrimeFieldElement inverse(PrimeFieldElement a);   // std::domain_error on 0
PrimeFieldElement pow_fp(PrimeFieldElement a, std::uint64_t e);

// Sparse multivariate polynomial over the p-element field. Exponent vectors
// have fixed length nvars; zero coefficients are never stored.
class MultiPoly {
public:
    MultiPoly(int nvars, std::uint32_t prime);

    int nvars() const { return nvars_; }
    std::uint32_t prime() const { return prime_; }
    const std::map<std::vector<int>, std::uint32_t>& terms() const {
        return terms_;
    }

    // accumulates mod p; erases the monomial when the sum cancels
    void add_term(const std::vector<int>& exps, std::uint64_t coeff);

    bool is_zero() const { return terms_.empty(); }
    int degree() const;              // -1 for the zero polynomial
    bool is_homogeneous() const;     // vacuously true when zero
    PrimeFieldElement coefficient(const std::vector<int>& exps) const;

    std::uint32_t evaluate(const std::vector<std::uint32_t>& point) const;

    MultiPoly times_var(int var) const;
    MultiPoly scaled(std::uint32_t c) const;
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

private:
    int nvars_;
    std::uint32_t prime_;
    std::map<std::vector<int>, std::uint32_t> terms_;
};

struct FfOptions {
    unsigned long long point_cap = 10'000'000ULL;   // max p^N per sweep
    int workers = 1;
};

// A sampled equation tuple: polys[i][t] is the homogeneous component
// q_{i, xi_i + t} of equation i, degree xi_i + t, in N = M + k variables.
struct TupleSample {
    RigidityParams params;
    std::uint32_t prime = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<MultiPoly>> polys;

    int nvars() const { return params.M + params.k; }
    // all components flattened in (equation, degree) lexicographic order
    std::vector<const MultiPoly*> forms_in_order() const;
    // one monomial per line: exponents then coefficient; reproducible
    std::string dump() const;
};

// Uniform random components, deterministic in the seed. Coefficients are
// drawn per monomial in a documented fixed order (equations ascending,
// degrees ascending, exponent vectors lexicographic); an all-zero component
// is redrawn so every q_{i,j} has degree exactly j. BudgetError when p^N
// exceeds the point cap.
TupleSample random_tuple(const RigidityParams& p, std::uint32_t prime,
                         std::uint64_t seed, const FfOptions& opts = {});

// Degree-graded pieces of f(z) rewritten at the shifted point: returns
// Phi_0 .. Phi_d with Phi_e homogeneous of degree e in the u-variables and
// f(1 + u_1, u_2, ..., u_N) = sum_e Phi_e(u). Input is the graded list
// q_xi .. q_d of one equation; components failing their declared grading
// throw GradingError. Computed by binomial recombination and cross-checked
// in place against the substitution route (InternalError on divergence).
std::vector<MultiPoly> shift_expand(const std::vector<MultiPoly>& graded,
                                    int xi);

// The independent route: substitute z_1 = 1 + u_1 term by term, sum, and
// split the result by total degree.
std::vector<MultiPoly> shift_expand_substitution(
    const std::vector<MultiPoly>& graded, int xi);

// Exact number of common zeros in affine N-space over the p-element field,
// by exhaustive enumeration. The empty system has p^N zeros.
unsigned long long count_affine_zeros(const std::vector<MultiPoly>& polys,
                                      std::uint32_t prime, int N,
                                      const FfOptions& opts = {});

// Zero counts of every prefix of the form list, against the geometric decay
// a regular sequence would show.
struct RegularityVerdict {
    bool pass = false;
    std::vector<unsigned long long> prefix_counts;   // N(s') for s' = 1 .. s
    std::vector<Rat> thresholds;                     // factor * p^(N - s')
    std::vector<bool> prefix_ok;
};

// N(s') <= factor * p^(N-s') for every prefix s'. One sweep over all p^N
// points; the histogram of first-nonvanishing positions yields every prefix
// count at once.
RegularityVerdict check_R02(const TupleSample& sample,
                            const Rat& threshold_factor = Rat(4),
                            const FfOptions& opts = {});

struct BatchStats {
    std::vector<std::uint64_t> seeds;
    std::vector<RegularityVerdict> verdicts;
    unsigned long long n_pass = 0;

    unsigned long long n_seeds() const { return seeds.size(); }
    Rat pass_rate() const;   // 0 for an empty batch
};

BatchStats check_R02_batch(const RigidityParams& p, std::uint32_t prime,
                           const std::vector<std::uint64_t>& seeds,
                           const Rat& threshold_factor = Rat(4),
                           const FfOptions& opts = {});

}  // namespace rigidity
