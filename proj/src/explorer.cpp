#include "rigidity/explorer.hpp"

#include <json.hpp>

#include <atomic>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>
#include <utility>

#include "rigidity/codim.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/hypertangent.hpp"

namespace rigidity {

namespace {

// Sorted degree tails d_pos <= ... <= d_k with the given budget; leading
// entries are fixed by the caller. Lexicographic by construction.
template <typename F>
void degree_tails(std::vector<int>& d, std::size_t pos, int budget, int low,
                  F&& emit) {
    const int slots = static_cast<int>(d.size() - pos);
    if (slots == 0) {
        if (budget == 0) emit(d);
        return;
    }
    for (int v = low; v * slots <= budget; ++v) {
        d[pos] = v;
        degree_tails(d, pos + 1, budget - v, v, emit);
    }
}

Int projected_tuples(int k, int M_lo, int M_hi) {
    Int total = 0;
    std::vector<int> d(k);
    for (int M = M_lo; M <= M_hi; ++M)
        degree_tails(d, 0, M + k, 2, [&](const std::vector<int>& deg) {
            Int prod = 1;
            for (int v : deg) prod *= v;
            total += prod;
        });
    return total;
}

// All admissible records whose degree vector starts with d1, for one M.
std::vector<AdmissibleRecord> run_block(int k, int M, int d1) {
    std::vector<AdmissibleRecord> out;
    std::vector<int> d(k);
    d[0] = d1;
    degree_tails(d, 1, M + k - d1, d1, [&](const std::vector<int>& deg) {
        std::vector<int> xi(k, 1);
        for (;;) {
            auto p = derive_params(k, M, DegreeVector{deg},
                                   MultiplicityVector{xi});
            if (check_main_inequality(p).holds &&
                check_dimension_inequality(p).holds) {
                AdmissibleRecord rec;
                rec.mu_over_d = mu_over_d(p);
                const auto sched = build_schedule(p);
                rec.m_total = sched.m_total;
                rec.final_bound = ratio_chain(p, sched).final_bound;
                rec.all_codim_ok = theorem21_assemble(p).all_ok();
                rec.params = std::move(p);
                out.push_back(std::move(rec));
            }
            // odometer, last slot fastest
            int pos = k - 1;
            while (pos >= 0 && ++xi[pos] > deg[pos]) xi[pos--] = 1;
            if (pos < 0) break;
        }
    });
    return out;
}

}  // namespace

std::vector<AdmissibleRecord> enumerate_admissible(int k, int M_min, int M_max,
                                                   const ExploreOptions& opts) {
    if (k < 2) throw ShapeError("k below 2");
    const int M_lo = std::max(M_min, 2 * k + 1);
    if (M_max < M_lo) return {};

    const Int projected = projected_tuples(k, M_lo, M_max);
    if (projected > Int(opts.tuple_cap))
        throw ResourceError("projected candidate count " + to_string(projected) +
                            " exceeds cap " + std::to_string(opts.tuple_cap));

    // one block per (M, d1); blocks are independent and merged in block
    // order, so the result does not depend on the worker count
    std::vector<std::pair<int, int>> blocks;
    for (int M = M_lo; M <= M_max; ++M)
        for (int d1 = 2; d1 * k <= M + k; ++d1) blocks.emplace_back(M, d1);

    std::vector<std::vector<AdmissibleRecord>> partial(blocks.size());
    const int workers =
        std::max(1, std::min<int>(opts.workers, static_cast<int>(blocks.size())));
    if (workers == 1) {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            partial[b] = run_block(k, blocks[b].first, blocks[b].second);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t b = next.fetch_add(1);
                    if (b >= blocks.size()) return;
                    partial[b] = run_block(k, blocks[b].first, blocks[b].second);
                }
            });
        for (auto& t : pool) t.join();
    }

    std::vector<AdmissibleRecord> records;
    for (auto& chunk : partial)
        for (auto& rec : chunk) records.push_back(std::move(rec));
    return records;
}

SurveySummary survey(int k_min, int k_max, int M_min, int M_max,
                     const ExploreOptions& opts) {
    if (k_min < 2) throw ShapeError("k below 2");
    if (k_max < k_min) throw ShapeError("empty k range");

    SurveySummary s;
    s.max_ratio = 0;
    std::map<int, Rat> trend;
    for (int k = k_min; k <= k_max; ++k) {
        const auto records = enumerate_admissible(k, M_min, M_max, opts);
        for (const auto& rec : records) {
            ++s.count;
            if (!s.max_ratio_witness || rec.mu_over_d > s.max_ratio) {
                s.max_ratio = rec.mu_over_d;
                s.max_ratio_witness = rec.params;
            }
            if (!s.min_m_witness || rec.m_total < s.min_m) {
                s.min_m = rec.m_total;
                s.min_m_witness = rec.params;
            }
            if (!rec.all_codim_ok) s.failures.push_back(rec.params);
            auto [it, fresh] = trend.emplace(rec.params.M, rec.mu_over_d);
            if (!fresh && rec.mu_over_d > it->second) it->second = rec.mu_over_d;
        }
    }
    for (const auto& [M, ratio] : trend) s.trend.push_back({M, ratio});
    return s;
}

namespace {

std::string join(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

void export_csv(const std::vector<AdmissibleRecord>& records, std::ostream& os) {
    os << "k,M,d,xi,c_star,mu,deg,mu_over_d,m_total,final_bound,"
          "eq1_lhs,eq1_rhs,eq2_ok,codim_ok\n";
    for (const auto& rec : records) {
        const auto& p = rec.params;
        const auto eq1 = check_main_inequality(p);
        os << p.k << ',' << p.M << ',' << join(p.degrees.entries) << ','
           << join(p.multiplicities.entries) << ',' << p.c_star << ','
           << to_string(p.mu) << ',' << to_string(p.deg_v) << ','
           << to_string(rec.mu_over_d) << ',' << rec.m_total << ','
           << to_string(rec.final_bound) << ',' << to_string(eq1.lhs) << ','
           << to_string(eq1.rhs) << ','
           << (check_dimension_inequality(p).holds ? "true" : "false") << ','
           << (rec.all_codim_ok ? "true" : "false") << '\n';
    }
}

void export_json(const std::vector<AdmissibleRecord>& records, std::ostream& os) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& rec : records) {
        const auto& p = rec.params;
        const auto eq1 = check_main_inequality(p);
        nlohmann::ordered_json row;
        row["k"] = p.k;
        row["M"] = p.M;
        row["d"] = p.degrees.entries;
        row["xi"] = p.multiplicities.entries;
        row["c_star"] = p.c_star;
        row["mu"] = to_string(p.mu);
        row["deg"] = to_string(p.deg_v);
        row["mu_over_d"] = to_string(rec.mu_over_d);
        row["m_total"] = rec.m_total;
        row["final_bound"] = to_string(rec.final_bound);
        row["eq1_lhs"] = to_string(eq1.lhs);
        row["eq1_rhs"] = to_string(eq1.rhs);
        row["eq2_ok"] = check_dimension_inequality(p).holds;
        row["codim_ok"] = rec.all_codim_ok;
        arr.push_back(std::move(row));
    }
    os << arr.dump(2) << '\n';
}

void export_report(const std::vector<AdmissibleRecord>& records,
                   const std::string& format,
                   const std::filesystem::path& destination) {
    if (format != "csv" && format != "json")
        throw ShapeError("unknown report format: " + format);
    std::ofstream os(destination, std::ios::binary);
    if (!os) throw IOError("cannot open " + destination.string() + " for writing");
    if (format == "csv")
        export_csv(records, os);
    else
        export_json(records, os);
    os.flush();
    if (!os) throw IOError("write failed for " + destination.string());
}

}  // namespace rigidity
