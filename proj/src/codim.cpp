#include "rigidity/codim.hpp"

#include <algorithm>

#include "rigidity/errors.hpp"

namespace rigidity {

Verdict make_ge(std::string name, Int value, Int threshold) {
    Verdict v;
    v.name = std::move(name);
    v.value = std::move(value);
    v.threshold = std::move(threshold);
    v.dir = Direction::GE;
    v.holds = v.value >= v.threshold;
    return v;
}

Verdict make_eq(std::string name, Int value, Int threshold) {
    Verdict v;
    v.name = std::move(name);
    v.value = std::move(value);
    v.threshold = std::move(threshold);
    v.dir = Direction::EQ;
    v.holds = v.value == v.threshold;
    return v;
}

bool CodimReport::all_ok() const {
    return std::all_of(records.begin(), records.end(),
                       [](const Verdict& v) { return v.holds; });
}

const Verdict* CodimReport::find(const std::string& name) const {
    for (const auto& v : records)
        if (v.name == name) return &v;
    return nullptr;
}

DegreeMultiset standard_degrees(const RigidityParams& p) {
    DegreeMultiset out;
    for (int d : p.degrees.entries)
        for (int j = 2; j <= d; ++j) out.degrees.push_back(j);
    std::sort(out.degrees.begin(), out.degrees.end());
    // drop one copy of d_k; degrees are sorted so the top entry is d_k
    if (!out.degrees.empty()) out.degrees.pop_back();
    if (static_cast<int>(out.degrees.size()) != p.M - 1)
        throw InternalError("standard degree list is not M-1 long");
    return out;
}

namespace {

Int sum_deg_of(const std::vector<int>& d) {
    const int k = static_cast<int>(d.size());
    Int s = 0;
    for (int i = 0; i + 1 < k; ++i) s += Int(d[i]) * (d[i] + 1) / 2;
    s += Int(d[k - 1] - 1) * d[k - 1] / 2;
    return s - k;
}

}  // namespace

Int sum_deg(const RigidityParams& p) { return sum_deg_of(p.degrees.entries); }

Verdict lemma21_check(const RigidityParams& p) {
    return make_ge("sum_deg", sum_deg(p), Int(2) * p.M - 2);
}

namespace {

// Sorted degree vectors with entries >= 2 summing to `budget`, in
// lexicographic order. Calls `emit` with each completed vector.
template <typename F>
void enumerate_sorted(std::vector<int>& cur, int pos, int k, int budget,
                      int low, F&& emit) {
    if (pos == k) {
        if (budget == 0) emit(cur);
        return;
    }
    const int slots_left = k - pos;
    for (int d = low; d * slots_left <= budget; ++d) {
        cur[pos] = d;
        enumerate_sorted(cur, pos + 1, k, budget - d, d, emit);
    }
}

}  // namespace

MinimizeResult minimize_sum_deg(int k, int M) {
    if (k < 1) throw ShapeError("k below 1");
    MinimizeResult res;
    bool seen = false;
    std::vector<int> cur(k);
    enumerate_sorted(cur, 0, k, M + k, 2, [&](const std::vector<int>& d) {
        Int s = sum_deg_of(d);
        if (!seen || s < res.min_value) {
            seen = true;
            res.min_value = s;
            res.argmin.clear();
        }
        if (s == res.min_value) res.argmin.push_back(DegreeVector{d});
    });
    if (!seen) throw ShapeError("no degree vector fits the budget");
    return res;
}

DegreeVector balanced_degree_vector(int k, int M) {
    if (k < 1) throw ShapeError("k below 1");
    const int a = M / k;
    const int l = M - k * a;
    DegreeVector d;
    d.entries.assign(k - l, a + 1);
    d.entries.insert(d.entries.end(), l, a + 2);
    return d;
}

Verdict b_minus_line_codim(const RigidityParams& p) {
    return make_ge("b_minus_line", sum_deg(p) - p.M + 3, Int(p.M) + 1);
}

Int lemma22_count(int d, int xi) {
    return (Int(d + 1) * (d + 2) - Int(xi) * (xi + 1)) / 2;
}

Int lemma23_count(int d, int xi) {
    return (Int(d) * (d + 1) - Int(xi) * (xi + 1)) / 2;
}

Verdict b_plus_line_check(const RigidityParams& p) {
    Int s = 0;
    for (int i = 0; i < p.k; ++i)
        s += lemma22_count(p.degrees.entries[i], p.multiplicities.entries[i]);
    const int dk = p.degrees.entries.back();
    return make_ge("b_plus_line", s - (dk + 1) - (p.M - 2),
                   Int(p.M) + 1 + p.c_star - p.k);
}

Int special_union_codim(const RigidityParams& p) {
    if (p.degrees.entries.size() != p.multiplicities.entries.size())
        throw ShapeError("degree and multiplicity lengths differ");
    int strict = 0, top = 0;
    for (std::size_t i = 0; i < p.degrees.entries.size(); ++i) {
        if (p.multiplicities.entries[i] < p.degrees.entries[i])
            ++strict;
        else
            ++top;
    }
    if (top != p.c_star) throw InternalError("stored c_* is stale");
    const Int direct = Int(p.k) + strict;
    const Int closed = Int(2) * p.k - p.c_star;
    if (direct != closed) throw InternalError("special union codim routes differ");
    return closed;
}

Int remark21_binomial(const RigidityParams& p, int i) {
    const auto std_degs = standard_degrees(p).degrees;
    if (i < 1 || i > static_cast<int>(std_degs.size()))
        throw IndexError("equation index outside 1..M-1");
    const int deg = std_degs[i - 1];
    return binomial(Int(p.M) - i - 1 + deg, Int(deg));
}

Int remark21_floor(int k, int M) { return binomial(Int(M) - k + 1, 2); }

Int phi1(const Int& t, const Int& M) {
    return (2 * t + 3) * (M - 1 - t) - t * (M - t);
}

Int phi2(const Int& t, const Int& M) { return (M - t - 1) * (t + 2) + 1; }

Int lemma24_bound(const Int& b, const Int& M) {
    return (2 * b + 3) * (M - 1 - b) - 2;
}

std::vector<Verdict> prop23_check(const RigidityParams& p) {
    const Int M = p.M;
    std::vector<Verdict> out;
    for (int i = p.k + 1; i <= p.M - 1; ++i) {
        const int b_max = std::max(0, std::min(i - 1, p.M - 3));

        // subspaces of every admissible codimension b
        Int brute = 0;
        bool first = true;
        for (int b = 0; b <= b_max; ++b) {
            const Int v = lemma24_bound(b, M) - Int(b) * (M - b);
            if (first || v < brute) brute = v;
            first = false;
        }

        // phi1 is concave, so the interval minimum sits at an endpoint
        const Int endpoint =
            std::min(phi1(Int(0), M), phi1(Int(b_max), M)) - 2;

        // closed-form minimum via phi2(b+1) = phi1(b) - 2
        const Int closed = std::min(Int(3 * M - 5), phi2(Int(b_max + 1), M));

        if (brute != endpoint || brute != closed)
            throw InternalError("higher-equation bound routes diverge");
        out.push_back(
            make_ge("prop23[" + std::to_string(i) + "]", brute, M + 1));
    }
    return out;
}

Verdict prop22_check(const RigidityParams& p) {
    const Int bm = b_minus_line_codim(p).value;
    const Int bp = b_plus_line_check(p).value;
    return make_ge("prop22", std::min(bm, bp), Int(p.M) + 1 + p.c_star - p.k);
}

CodimReport theorem21_assemble(const RigidityParams& p) {
    CodimReport rep;
    rep.records.push_back(lemma21_check(p));
    rep.records.push_back(b_minus_line_codim(p));
    rep.records.push_back(b_plus_line_check(p));

    const Int special = special_union_codim(p);
    rep.records.push_back(
        make_eq("special_union", special, Int(2) * p.k - p.c_star));

    for (int i = 0; i < p.k; ++i) {
        const int d = p.degrees.entries[i];
        const int xi = p.multiplicities.entries[i];
        // direct route: lattice points with xi <= a+b <= d
        Int pairs = 0;
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b <= d; ++b)
                if (a + b >= xi) ++pairs;
        rep.records.push_back(make_eq(
            "lemma22_count[" + std::to_string(i + 1) + "]",
            lemma22_count(d, xi), pairs));
    }
    {
        const int dk = p.degrees.entries.back();
        const int xik = p.multiplicities.entries.back();
        rep.records.push_back(make_eq("lemma23_count",
                                      lemma23_count(dk, xik),
                                      lemma22_count(dk, xik) - (dk + 1)));
    }

    for (int i = 1; i <= p.k; ++i)
        rep.records.push_back(make_ge("remark21[" + std::to_string(i) + "]",
                                      remark21_binomial(p, i), Int(p.M) + 1));
    rep.records.push_back(
        make_ge("remark21_floor", remark21_floor(p.k, p.M), Int(p.M) + 1));

    const auto higher = prop23_check(p);
    Int weakest;
    bool have_weakest = false;
    for (const auto& v : higher) {
        if (!have_weakest || v.value < weakest) weakest = v.value;
        have_weakest = true;
        rep.records.push_back(v);
    }

    const Verdict line = prop22_check(p);
    rep.records.push_back(line);
    if (!have_weakest || line.value < weakest) weakest = line.value;

    rep.records.push_back(make_ge("theorem21_total", special + weakest,
                                  Int(p.M) + p.k + 1));
    return rep;
}

}  // namespace rigidity
