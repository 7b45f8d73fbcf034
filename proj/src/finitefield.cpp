#include "rigidity/finitefield.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rigidity/errors.hpp"

namespace rigidity {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t i = 3; i * i <= n; i += 2)
        if (n % i == 0) return false;
    return true;
}

PrimeFieldElement fp(std::uint64_t v, std::uint32_t p) {
    if (!is_prime(p)) throw ShapeError("modulus " + std::to_string(p) + " is not prime");
    return {static_cast<std::uint32_t>(v % p), p};
}

namespace {

std::uint32_t require_same_modulus(PrimeFieldElement a, PrimeFieldElement b) {
    if (a.modulus == 0 || a.modulus != b.modulus)
        throw InternalError("field elements with mismatched moduli");
    return a.modulus;
}

}  // namespace

PrimeFieldElement operator+(PrimeFieldElement a, PrimeFieldElement b) {
    const std::uint32_t p = require_same_modulus(a, b);
    return {static_cast<std::uint32_t>((std::uint64_t(a.value) + b.value) % p), p};
}

PrimeFieldElement operator-(PrimeFieldElement a, PrimeFieldElement b) {
    const std::uint32_t p = require_same_modulus(a, b);
    return {static_cast<std::uint32_t>((std::uint64_t(a.value) + p - b.value) % p), p};
}

PrimeFieldElement operator*(PrimeFieldElement a, PrimeFieldElement b) {
    const std::uint32_t p = require_same_modulus(a, b);
    return {static_cast<std::uint32_t>(std::uint64_t(a.value) * b.value % p), p};
}

PrimeFieldElement operator/(PrimeFieldElement a, PrimeFieldElement b) {
    return a * inverse(b);
}

bool operator==(PrimeFieldElement a, PrimeFieldElement b) {
    return a.modulus == b.modulus && a.value == b.value;
}

PrimeFieldElement inverse(PrimeFieldElement a) {
    if (a.modulus == 0) throw InternalError("field element without modulus");
    if (a.value == 0) throw std::domain_error("zero has no inverse");
    std::int64_t t = 0, nt = 1;
    std::int64_t r = a.modulus, nr = a.value;
    while (nr != 0) {
        const std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt; nt = tmp;
        tmp = r - q * nr;
        r = nr; nr = tmp;
    }
    if (t < 0) t += a.modulus;
    return {static_cast<std::uint32_t>(t), a.modulus};
}

PrimeFieldElement pow_fp(PrimeFieldElement a, std::uint64_t e) {
    if (a.modulus == 0) throw InternalError("field element without modulus");
    std::uint64_t base = a.value, acc = 1 % a.modulus;
    while (e) {
        if (e & 1) acc = acc * base % a.modulus;
        base = base * base % a.modulus;
        e >>= 1;
    }
    return {static_cast<std::uint32_t>(acc), a.modulus};
}

MultiPoly::MultiPoly(int nvars, std::uint32_t prime)
    : nvars_(nvars), prime_(prime) {
    if (nvars < 1) throw ShapeError("polynomial needs at least one variable");
    if (!is_prime(prime))
        throw ShapeError("modulus " + std::to_string(prime) + " is not prime");
}

void MultiPoly::add_term(const std::vector<int>& exps, std::uint64_t coeff) {
    if (static_cast<int>(exps.size()) != nvars_)
        throw ShapeError("exponent vector length mismatch");
    for (int e : exps)
        if (e < 0) throw ShapeError("negative exponent");
    const std::uint32_t c = static_cast<std::uint32_t>(coeff % prime_);
    if (c == 0 && terms_.find(exps) == terms_.end()) return;
    auto [it, fresh] = terms_.emplace(exps, 0);
    it->second = static_cast<std::uint32_t>((std::uint64_t(it->second) + c) % prime_);
    if (it->second == 0) terms_.erase(it);
}

int MultiPoly::degree() const {
    int deg = -1;
    for (const auto& [exps, c] : terms_) {
        int total = 0;
        for (int e : exps) total += e;
        deg = std::max(deg, total);
    }
    return deg;
}

bool MultiPoly::is_homogeneous() const {
    int common = -1;
    for (const auto& [exps, c] : terms_) {
        int total = 0;
        for (int e : exps) total += e;
        if (common == -1) common = total;
        else if (total != common) return false;
    }
    return true;
}

PrimeFieldElement MultiPoly::coefficient(const std::vector<int>& exps) const {
    const auto it = terms_.find(exps);
    return {it == terms_.end() ? 0u : it->second, prime_};
}

std::uint32_t MultiPoly::evaluate(const std::vector<std::uint32_t>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw ShapeError("evaluation point length mismatch");
    std::uint64_t acc = 0;
    for (const auto& [exps, c] : terms_) {
        std::uint64_t prod = c;
        for (int v = 0; v < nvars_; ++v) {
            std::uint64_t b = point[v] % prime_;
            for (int e = 0; e < exps[v]; ++e) prod = prod * b % prime_;
        }
        acc = (acc + prod) % prime_;
    }
    return static_cast<std::uint32_t>(acc);
}

MultiPoly MultiPoly::times_var(int var) const {
    if (var < 0 || var >= nvars_) throw IndexError("variable index out of range");
    MultiPoly out(nvars_, prime_);
    for (const auto& [exps, c] : terms_) {
        std::vector<int> e = exps;
        ++e[var];
        out.terms_.emplace(std::move(e), c);
    }
    return out;
}

MultiPoly MultiPoly::scaled(std::uint32_t c) const {
    MultiPoly out(nvars_, prime_);
    const std::uint32_t cc = c % prime_;
    if (cc == 0) return out;
    for (const auto& [exps, v] : terms_)
        out.terms_.emplace(exps, static_cast<std::uint32_t>(std::uint64_t(v) * cc % prime_));
    return out;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_ || a.prime_ != b.prime_)
        throw InternalError("adding polynomials from different rings");
    MultiPoly out = a;
    for (const auto& [exps, c] : b.terms_) out.add_term(exps, c);
    return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.prime_ == b.prime_ && a.terms_ == b.terms_;
}

namespace {

// p^exp if it stays within cap, otherwise nothing
bool pow_within(std::uint64_t base, int exp, unsigned long long cap,
                unsigned long long& out) {
    unsigned long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return false;
        r *= base;
    }
    out = r;
    return r <= cap;
}

// exponent vectors of length left..nvars-1 summing to deg, lexicographic
template <typename F>
void monomials_rec(std::vector<int>& cur, int pos, int deg, F&& emit) {
    const int nvars = static_cast<int>(cur.size());
    if (pos == nvars - 1) {
        cur[pos] = deg;
        emit(cur);
        return;
    }
    for (int e = 0; e <= deg; ++e) {
        cur[pos] = e;
        monomials_rec(cur, pos + 1, deg - e, emit);
    }
}

std::uint32_t draw_mod(std::mt19937_64& eng, std::uint32_t p) {
    // rejection keeps the distribution exactly uniform
    const std::uint64_t rem = (0 - std::uint64_t(p)) % p;   // 2^64 mod p
    for (;;) {
        const std::uint64_t r = eng();
        if (rem == 0 || r < std::uint64_t(0) - rem) return static_cast<std::uint32_t>(r % p);
    }
}

}  // namespace

std::vector<const MultiPoly*> TupleSample::forms_in_order() const {
    std::vector<const MultiPoly*> out;
    for (const auto& eq : polys)
        for (const auto& q : eq) out.push_back(&q);
    return out;
}

std::string TupleSample::dump() const {
    std::ostringstream os;
    os << "prime " << prime << "\nvars " << nvars() << "\nseed " << seed << '\n';
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const int xi = params.multiplicities.entries[i];
        for (std::size_t t = 0; t < polys[i].size(); ++t) {
            os << "form " << i + 1 << ' ' << xi + static_cast<int>(t) << '\n';
            for (const auto& [exps, c] : polys[i][t].terms()) {
                for (int e : exps) os << e << ' ';
                os << c << '\n';
            }
        }
    }
    return os.str();
}

TupleSample random_tuple(const RigidityParams& p, std::uint32_t prime,
                         std::uint64_t seed, const FfOptions& opts) {
    if (!is_prime(prime))
        throw ShapeError("modulus " + std::to_string(prime) + " is not prime");
    const int N = p.M + p.k;
    unsigned long long points = 0;
    if (!pow_within(prime, N, opts.point_cap, points))
        throw BudgetError("p^N exceeds the point cap " +
                          std::to_string(opts.point_cap));

    TupleSample sample;
    sample.params = p;
    sample.prime = prime;
    sample.seed = seed;
    std::mt19937_64 eng(seed);
    std::vector<int> cur(N);
    for (int i = 0; i < p.k; ++i) {
        sample.polys.emplace_back();
        for (int j = p.multiplicities.entries[i]; j <= p.degrees.entries[i]; ++j) {
            MultiPoly q(N, prime);
            do {
                q = MultiPoly(N, prime);
                monomials_rec(cur, 0, j, [&](const std::vector<int>& exps) {
                    q.add_term(exps, draw_mod(eng, prime));
                });
            } while (q.is_zero());   // degree must be exactly j
            sample.polys.back().push_back(std::move(q));
        }
    }
    return sample;
}

namespace {

void require_graded(const std::vector<MultiPoly>& graded, int xi) {
    if (graded.empty()) throw ShapeError("empty graded list");
    if (xi < 0) throw ShapeError("negative lowest degree");
    for (std::size_t t = 1; t < graded.size(); ++t)
        if (graded[t].nvars() != graded[0].nvars() ||
            graded[t].prime() != graded[0].prime())
            throw ShapeError("graded components from different rings");
    for (std::size_t t = 0; t < graded.size(); ++t) {
        const auto& q = graded[t];
        if (q.is_zero()) continue;
        if (!q.is_homogeneous() || q.degree() != xi + static_cast<int>(t))
            throw GradingError("component " + std::to_string(t) +
                               " is not homogeneous of degree " +
                               std::to_string(xi + static_cast<int>(t)));
    }
}

}  // namespace

std::vector<MultiPoly> shift_expand_substitution(
    const std::vector<MultiPoly>& graded, int xi) {
    require_graded(graded, xi);
    const int N = graded[0].nvars();
    const std::uint32_t p = graded[0].prime();
    const int d = xi + static_cast<int>(graded.size()) - 1;

    // substitute z1 = 1 + u1 with plain repeated multiplication, then split
    // the sum by total degree
    MultiPoly g(N, p);
    for (const auto& q : graded)
        for (const auto& [exps, c] : q.terms()) {
            std::vector<int> tail = exps;
            const int a1 = tail[0];
            tail[0] = 0;
            MultiPoly term(N, p);
            term.add_term(tail, c);
            for (int rep = 0; rep < a1; ++rep)
                term = term + term.times_var(0);   // *= (1 + u1)
            g = g + term;
        }

    std::vector<MultiPoly> phi(d + 1, MultiPoly(N, p));
    for (const auto& [exps, c] : g.terms()) {
        int total = 0;
        for (int e : exps) total += e;
        if (total > d) throw InternalError("shift raised the degree");
        phi[total].add_term(exps, c);
    }
    return phi;
}

std::vector<MultiPoly> shift_expand(const std::vector<MultiPoly>& graded,
                                    int xi) {
    require_graded(graded, xi);
    const int N = graded[0].nvars();
    const std::uint32_t p = graded[0].prime();
    const int d = xi + static_cast<int>(graded.size()) - 1;

    // recombination route: a term of q_j with z1-exponent a1 lands in
    // Phi_e for e = (j - a1) .. j with coefficient C(a1, e - (j - a1))
    std::vector<MultiPoly> phi(d + 1, MultiPoly(N, p));
    for (std::size_t t = 0; t < graded.size(); ++t) {
        const int j = xi + static_cast<int>(t);
        for (const auto& [exps, c] : graded[t].terms()) {
            const int a1 = exps[0];
            const int alpha = j - a1;
            std::vector<int> mono = exps;
            for (int e = alpha; e <= j; ++e) {
                mono[0] = e - alpha;
                const Int binom = binomial(a1, e - alpha) % p;
                phi[e].add_term(mono,
                                std::uint64_t(c) * binom.convert_to<std::uint64_t>());
            }
        }
    }

    const auto check = shift_expand_substitution(graded, xi);
    for (int e = 0; e <= d; ++e)
        if (!(phi[e] == check[e]))
            throw InternalError("shift recombination routes diverge at degree " +
                                std::to_string(e));
    return phi;
}

namespace {

// forms flattened for the sweep: per-term coefficient plus (variable,
// exponent) factor pairs indexing a global value-power table
struct CompiledForm {
    std::vector<std::uint64_t> coeff;
    std::vector<int> begin;                               // nterms + 1
    std::vector<std::pair<std::uint16_t, std::uint16_t>> fac;
    bool premod = false;   // true when products must be reduced per term
};

struct CompiledSystem {
    std::uint32_t p = 0;
    int nvars = 0;
    int e1 = 1;                        // max exponent + 1, table stride
    std::vector<std::uint32_t> powtab; // powtab[v * e1 + e] = v^e mod p
    std::vector<CompiledForm> forms;
};

CompiledSystem compile(const std::vector<const MultiPoly*>& forms,
                       std::uint32_t p, int N) {
    CompiledSystem sys;
    sys.p = p;
    sys.nvars = N;
    int maxe = 0;
    for (const auto* f : forms)
        for (const auto& [exps, c] : f->terms())
            for (int e : exps) maxe = std::max(maxe, e);
    sys.e1 = maxe + 1;
    sys.powtab.assign(std::size_t(p) * sys.e1, 0);
    for (std::uint32_t v = 0; v < p; ++v) {
        std::uint64_t pw = 1 % p;
        for (int e = 0; e <= maxe; ++e) {
            sys.powtab[std::size_t(v) * sys.e1 + e] = static_cast<std::uint32_t>(pw);
            pw = pw * v % p;
        }
    }
    const long double limit = 9.0e18L;
    for (const auto* f : forms) {
        CompiledForm cf;
        cf.begin.push_back(0);
        long double acc_bound = 0;
        for (const auto& [exps, c] : f->terms()) {
            cf.coeff.push_back(c);
            long double prod_bound = p - 1;
            for (int v = 0; v < N; ++v)
                if (exps[v] > 0) {
                    cf.fac.emplace_back(static_cast<std::uint16_t>(v),
                                        static_cast<std::uint16_t>(exps[v]));
                    prod_bound *= p - 1;
                }
            cf.begin.push_back(static_cast<int>(cf.fac.size()));
            acc_bound += prod_bound;
        }
        cf.premod = acc_bound >= limit;
        sys.forms.push_back(std::move(cf));
    }
    return sys;
}

std::uint32_t eval_compiled(const CompiledForm& f, const std::uint32_t* z,
                            const CompiledSystem& sys) {
    std::uint64_t acc = 0;
    const std::size_t nt = f.coeff.size();
    for (std::size_t t = 0; t < nt; ++t) {
        std::uint64_t prod = f.coeff[t];
        for (int s = f.begin[t]; s < f.begin[t + 1]; ++s) {
            const auto& fc = f.fac[s];
            prod *= sys.powtab[std::size_t(z[fc.first]) * sys.e1 + fc.second];
            if (f.premod) prod %= sys.p;
        }
        acc += f.premod ? prod % sys.p : prod;
    }
    return static_cast<std::uint32_t>(acc % sys.p);
}

// histogram over all p^N points of the first index whose form evaluates
// nonzero; slot s (= number of forms) collects the common zeros
std::vector<unsigned long long> first_nonzero_histogram(
    const std::vector<const MultiPoly*>& forms, std::uint32_t p, int N,
    int workers) {
    for (const auto* f : forms)
        if (f->nvars() != N || f->prime() != p)
            throw ShapeError("form does not live in the swept space");

    const CompiledSystem sys = compile(forms, p, N);
    const std::size_t s = forms.size();
    unsigned long long inner = 1;
    for (int i = 1; i < N; ++i) inner *= p;

    const auto run_block = [&](std::uint32_t z0) {
        std::vector<unsigned long long> hist(s + 1, 0);
        std::vector<std::uint32_t> z(N, 0);
        z[0] = z0;
        for (unsigned long long it = 0; it < inner; ++it) {
            std::size_t idx = 0;
            while (idx < s && eval_compiled(sys.forms[idx], z.data(), sys) == 0)
                ++idx;
            ++hist[idx];
            for (int v = N - 1; v >= 1; --v) {
                if (++z[v] < p) break;
                z[v] = 0;
            }
        }
        return hist;
    };

    std::vector<unsigned long long> hist(s + 1, 0);
    const int nw = std::max(1, std::min<int>(workers, static_cast<int>(p)));
    if (nw == 1) {
        for (std::uint32_t z0 = 0; z0 < p; ++z0) {
            const auto h = run_block(z0);
            for (std::size_t i = 0; i <= s; ++i) hist[i] += h[i];
        }
    } else {
        std::vector<std::vector<unsigned long long>> partial(p);
        std::atomic<std::uint32_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint32_t z0 = next.fetch_add(1);
                    if (z0 >= p) return;
                    partial[z0] = run_block(z0);
                }
            });
        for (auto& t : pool) t.join();
        // integer addition commutes: the merge is worker-count independent
        for (const auto& h : partial)
            for (std::size_t i = 0; i <= s; ++i) hist[i] += h[i];
    }
    return hist;
}

}  // namespace

unsigned long long count_affine_zeros(const std::vector<MultiPoly>& polys,
                                      std::uint32_t prime, int N,
                                      const FfOptions& opts) {
    if (!is_prime(prime))
        throw ShapeError("modulus " + std::to_string(prime) + " is not prime");
    if (N < 1) throw ShapeError("need at least one variable");
    unsigned long long points = 0;
    if (!pow_within(prime, N, opts.point_cap, points))
        throw BudgetError("p^N exceeds the point cap " +
                          std::to_string(opts.point_cap));
    std::vector<const MultiPoly*> forms;
    for (const auto& q : polys) forms.push_back(&q);
    return first_nonzero_histogram(forms, prime, N, opts.workers).back();
}

RegularityVerdict check_R02(const TupleSample& sample,
                            const Rat& threshold_factor,
                            const FfOptions& opts) {
    const int N = sample.nvars();
    unsigned long long points = 0;
    if (!pow_within(sample.prime, N, opts.point_cap, points))
        throw BudgetError("p^N exceeds the point cap " +
                          std::to_string(opts.point_cap));

    const auto forms = sample.forms_in_order();
    const std::size_t s = forms.size();
    const auto hist = first_nonzero_histogram(forms, sample.prime, N, opts.workers);

    RegularityVerdict v;
    v.pass = true;
    unsigned long long suffix = hist[s];
    std::vector<unsigned long long> counts(s, 0);
    for (std::size_t sp = s; sp >= 1; --sp) {
        counts[sp - 1] = suffix;           // forms 0 .. sp-1 all vanish
        suffix += hist[sp - 1];
    }
    for (std::size_t sp = 1; sp <= s; ++sp) {
        Int scale = 1;
        for (int i = 0; i < N - static_cast<int>(sp); ++i) scale *= sample.prime;
        const Rat limit = threshold_factor * Rat(scale);
        const bool ok = Rat(Int(counts[sp - 1])) <= limit;
        v.prefix_counts.push_back(counts[sp - 1]);
        v.thresholds.push_back(limit);
        v.prefix_ok.push_back(ok);
        if (!ok) v.pass = false;
    }
    return v;
}

Rat BatchStats::pass_rate() const {
    if (seeds.empty()) return 0;
    return Rat(Int(n_pass), Int(seeds.size()));
}

BatchStats check_R02_batch(const RigidityParams& p, std::uint32_t prime,
                           const std::vector<std::uint64_t>& seeds,
                           const Rat& threshold_factor, const FfOptions& opts) {
    BatchStats stats;
    for (const std::uint64_t seed : seeds) {
        const auto sample = random_tuple(p, prime, seed, opts);
        auto verdict = check_R02(sample, threshold_factor, opts);
        if (verdict.pass) ++stats.n_pass;
        stats.seeds.push_back(seed);
        stats.verdicts.push_back(std::move(verdict));
    }
    return stats;
}

}  // namespace rigidity
