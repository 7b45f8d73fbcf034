// rigidity: batch front end for the exact certificate checks.
//
// Subcommands: verify, schedule, codim, explore, ff-check. Reports go to
// stdout or --out; --format selects text or json (csv or json for explore).
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 invalid
// input, 3 resource limit or internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rigidity/codim.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/explorer.hpp"
#include "rigidity/finitefield.hpp"
#include "rigidity/hypertangent.hpp"
#include "rigidity/params.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::ordered_json;
using namespace rigidity;

struct TupleFlags {
    int k = 0;
    int M = 0;
    std::vector<int> d;
    std::vector<int> xi;
};

void add_tuple_flags(CLI::App* cmd, TupleFlags& t) {
    cmd->add_option("--k", t.k, "number of defining equations")->required();
    cmd->add_option("--M", t.M, "dimension of the variety")->required();
    cmd->add_option("--d", t.d, "degrees, comma separated (sorted)")
        ->required()
        ->delimiter(',');
    cmd->add_option("--xi", t.xi, "multiplicities at the point, comma separated")
        ->required()
        ->delimiter(',');
}

std::string join(const std::vector<int>& v, char sep = ';') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

Rat parse_rat(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        const Int num(text.substr(0, slash));
        const Int den(text.substr(slash + 1));
        if (den == 0) throw ShapeError("zero denominator in " + text);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw ShapeError("cannot parse rational: " + text);
    }
}

// RIGIDITY_LAB_CAP overrides the default tuple/point caps when set
std::optional<unsigned long long> env_cap() {
    const char* raw = std::getenv("RIGIDITY_LAB_CAP");
    if (!raw) return std::nullopt;
    try {
        std::size_t used = 0;
        const std::string s(raw);
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ShapeError("RIGIDITY_LAB_CAP is not a whole number");
    }
}

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw IOError("cannot open " + out_path + " for writing");
    os << text;
    os.flush();
    if (!os) throw IOError("write failed for " + out_path);
}

ordered_json report_head(const std::string& command) {
    ordered_json j;
    j["tool"] = "rigidity";
    j["version"] = kVersion;
    j["command"] = command;
    return j;
}

ordered_json input_echo(const RigidityParams& p) {
    ordered_json in;
    in["k"] = p.k;
    in["M"] = p.M;
    in["d"] = p.degrees.entries;
    in["xi"] = p.multiplicities.entries;
    return in;
}

ordered_json check_json(const std::string& name, const Int& value,
                        const Int& threshold, const char* relation, bool holds) {
    ordered_json c;
    c["name"] = name;
    c["value"] = to_string(value);
    c["threshold"] = to_string(threshold);
    c["relation"] = relation;
    c["holds"] = holds;
    return c;
}

std::string check_row(const std::string& name, const Int& value,
                      const Int& threshold, const char* relation, bool holds) {
    return name + " " + to_string(value) + " " + relation + " " +
           to_string(threshold) + (holds ? " PASS" : " FAIL") + "\n";
}

const char* rel_of(Direction d) { return d == Direction::GE ? ">=" : "=="; }

ordered_json chain_json(const HypertangentSchedule& s, const RatioChain& chain,
                        const Certificate& cert) {
    ordered_json c;
    c["m_total"] = s.m_total;
    c["seed"] = to_string(chain.seed);
    c["short_chain"] = chain.short_chain;
    c["final_bound"] = to_string(chain.final_bound);
    c["margin"] = to_string(cert.margin);
    c["exclusion_ok"] = cert.ok;
    return c;
}

int run_verify(const TupleFlags& t, const std::string& format,
               const std::string& out_path) {
    const auto p = validate_shape(t.k, t.M, DegreeVector{t.d},
                                  MultiplicityVector{t.xi});
    const auto eq1 = check_main_inequality(p);
    const auto eq2 = check_dimension_inequality(p);
    const auto sched = build_schedule(p);
    const auto chain = ratio_chain(p, sched);
    const auto cert = certify_exclusion(chain);
    const auto rep = theorem21_assemble(p);
    const bool ok = eq1.holds && eq2.holds && cert.ok && rep.all_ok();

    std::ostringstream os;
    if (format == "json") {
        ordered_json j = report_head("verify");
        j["input"] = input_echo(p);
        ordered_json derived;
        derived["c_star"] = p.c_star;
        derived["sing_type"] = p.sing_type;
        derived["mu"] = to_string(p.mu);
        derived["deg"] = to_string(p.deg_v);
        derived["mu_over_d"] = to_string(mu_over_d(p));
        j["derived"] = derived;
        ordered_json checks = ordered_json::array();
        checks.push_back(check_json("eq1", eq1.lhs, eq1.rhs, ">=", eq1.holds));
        checks.push_back(check_json("eq2", eq2.lhs, eq2.rhs, ">=", eq2.holds));
        for (const auto& v : rep.records)
            checks.push_back(
                check_json(v.name, v.value, v.threshold, rel_of(v.dir), v.holds));
        j["checks"] = checks;
        j["chain"] = chain_json(sched, chain, cert);
        j["verdict"] = ok ? "pass" : "fail";
        os << j.dump(2) << '\n';
    } else {
        os << "tuple k=" << p.k << " M=" << p.M << " d=" << join(t.d)
           << " xi=" << join(t.xi) << " c_star=" << p.c_star
           << " mu=" << to_string(p.mu) << " deg=" << to_string(p.deg_v) << '\n';
        os << check_row("eq1", eq1.lhs, eq1.rhs, ">=", eq1.holds);
        os << check_row("eq2", eq2.lhs, eq2.rhs, ">=", eq2.holds);
        os << "m_total " << sched.m_total << '\n';
        os << "seed_ratio " << to_string(chain.seed) << '\n';
        os << "final_bound " << to_string(chain.final_bound) << '\n';
        os << "exclusion " << (cert.ok ? "PASS" : "FAIL") << " margin "
           << to_string(cert.margin) << '\n';
        for (const auto& v : rep.records)
            os << check_row(v.name, v.value, v.threshold, rel_of(v.dir), v.holds);
        os << "verdict " << (ok ? "PASS" : "FAIL") << '\n';
    }
    write_out(os.str(), out_path);
    return ok ? 0 : 1;
}

int run_schedule(const TupleFlags& t, const std::string& format,
                 const std::string& out_path) {
    const auto p = validate_shape(t.k, t.M, DegreeVector{t.d},
                                  MultiplicityVector{t.xi});
    const auto sched = build_schedule(p);
    const auto chain = ratio_chain(p, sched);
    const auto cert = certify_exclusion(chain);
    const Rat prod = slope_product(sched);
    const bool telescoping = p.mu * prod == Rat(p.deg_v);

    std::ostringstream os;
    if (format == "json") {
        ordered_json j = report_head("schedule");
        j["input"] = input_echo(p);
        ordered_json s;
        s["degenerate"] = sched.degenerate;
        if (sched.first_level)
            s["first_level"] = *sched.first_level;
        else
            s["first_level"] = nullptr;
        s["c_table"] = sched.c_table;
        s["m_table"] = sched.m_table;
        s["levels"] = sched.levels;
        ordered_json slopes = ordered_json::array();
        for (const auto& b : sched.slopes) slopes.push_back(to_string(b));
        s["slopes"] = slopes;
        s["m_total"] = sched.m_total;
        j["schedule"] = s;
        ordered_json tele;
        tele["mu_times_slope_product"] = to_string(Rat(p.mu) * prod);
        tele["deg"] = to_string(p.deg_v);
        tele["holds"] = telescoping;
        j["telescoping"] = tele;
        j["chain"] = chain_json(sched, chain, cert);
        j["verdict"] = cert.ok && telescoping ? "pass" : "fail";
        os << j.dump(2) << '\n';
    } else {
        os << "tuple k=" << p.k << " M=" << p.M << " d=" << join(t.d)
           << " xi=" << join(t.xi) << '\n';
        if (sched.degenerate) {
            os << "degenerate schedule: no hypertangent divisors\n";
        } else {
            os << "first_level " << *sched.first_level << '\n';
            os << "j:";
            for (std::size_t j = 1; j <= sched.c_table.size(); ++j)
                os << ' ' << j;
            os << "\nc:";
            for (int c : sched.c_table) os << ' ' << c;
            os << "\nm:";
            for (int m : sched.m_table) os << ' ' << m;
            os << '\n';
            os << "slopes ";
            for (std::size_t i = 0; i < sched.slopes.size(); ++i)
                os << (i ? ", " : "") << to_string(sched.slopes[i]);
            os << '\n';
        }
        os << "m_total " << sched.m_total << '\n';
        os << "telescoping " << to_string(Rat(p.mu) * prod) << " == "
           << to_string(p.deg_v) << (telescoping ? " PASS" : " FAIL") << '\n';
        os << "seed_ratio " << to_string(chain.seed) << '\n';
        os << "final_bound " << to_string(chain.final_bound) << '\n';
        os << "exclusion " << (cert.ok ? "PASS" : "FAIL") << " margin "
           << to_string(cert.margin) << '\n';
    }
    write_out(os.str(), out_path);
    return cert.ok && telescoping ? 0 : 1;
}

int run_codim(const TupleFlags& t, const std::string& format,
              const std::string& out_path) {
    const auto p = validate_shape(t.k, t.M, DegreeVector{t.d},
                                  MultiplicityVector{t.xi});
    const auto rep = theorem21_assemble(p);

    std::ostringstream os;
    if (format == "json") {
        ordered_json j = report_head("codim");
        j["input"] = input_echo(p);
        ordered_json checks = ordered_json::array();
        for (const auto& v : rep.records)
            checks.push_back(
                check_json(v.name, v.value, v.threshold, rel_of(v.dir), v.holds));
        j["checks"] = checks;
        j["verdict"] = rep.all_ok() ? "pass" : "fail";
        os << j.dump(2) << '\n';
    } else {
        os << "tuple k=" << p.k << " M=" << p.M << " d=" << join(t.d)
           << " xi=" << join(t.xi) << '\n';
        for (const auto& v : rep.records)
            os << check_row(v.name, v.value, v.threshold, rel_of(v.dir), v.holds);
        os << "verdict " << (rep.all_ok() ? "PASS" : "FAIL") << '\n';
    }
    write_out(os.str(), out_path);
    return rep.all_ok() ? 0 : 1;
}

struct ExploreFlags {
    int k = 0;
    int k_min = 0;
    int k_max = 0;
    int m_min = 0;
    int m_max = 0;
    std::string format = "csv";
    std::string out;
    int parallel = 1;
};

int run_explore(const ExploreFlags& f) {
    int k_lo = f.k_min, k_hi = f.k_max;
    if (f.k > 0) k_lo = k_hi = f.k;
    if (k_lo <= 0 || k_hi < k_lo) throw ShapeError("no k range given");
    if (f.m_max < f.m_min) throw ShapeError("empty M range");

    ExploreOptions opts;
    opts.workers = std::max(1, f.parallel);
    if (const auto cap = env_cap()) opts.tuple_cap = *cap;

    std::vector<AdmissibleRecord> records;
    for (int k = k_lo; k <= k_hi; ++k) {
        auto part = enumerate_admissible(k, f.m_min, f.m_max, opts);
        for (auto& r : part) records.push_back(std::move(r));
    }
    const auto summary = survey(k_lo, k_hi, f.m_min, f.m_max, opts);

    std::ostringstream data;
    if (f.format == "csv")
        export_csv(records, data);
    else
        export_json(records, data);

    if (f.out.empty()) {
        std::cout << data.str();
    } else {
        export_report(records, f.format, f.out);
        std::ostringstream os;
        os << "records " << summary.count << '\n';
        if (summary.empty()) {
            os << "empty admissible set\n";
        } else {
            const auto& w = *summary.max_ratio_witness;
            os << "max_ratio " << to_string(summary.max_ratio) << " at k="
               << w.k << " M=" << w.M << " d=" << join(w.degrees.entries)
               << " xi=" << join(w.multiplicities.entries) << '\n';
            const auto& m = *summary.min_m_witness;
            os << "min_m " << summary.min_m << " at k=" << m.k << " M=" << m.M
               << " d=" << join(m.degrees.entries) << " xi="
               << join(m.multiplicities.entries) << '\n';
            for (const auto& tpoint : summary.trend)
                os << "trend M=" << tpoint.M << " max_ratio "
                   << to_string(tpoint.max_ratio) << '\n';
        }
        os << "failures " << summary.failures.size() << '\n';
        std::cout << os.str();
    }
    return summary.failures.empty() ? 0 : 1;
}

struct FfFlags {
    TupleFlags tuple;
    std::uint32_t prime = 5;
    int trials = 1;
    std::uint64_t seed = 0;
    std::string factor = "4";
    std::string min_pass_rate = "0";
    int parallel = 1;
    std::string format = "text";
    std::string out;
};

int run_ffcheck(const FfFlags& f) {
    const auto p = validate_shape(f.tuple.k, f.tuple.M, DegreeVector{f.tuple.d},
                                  MultiplicityVector{f.tuple.xi});
    if (f.trials < 1) throw ShapeError("trials below 1");
    const Rat factor = parse_rat(f.factor);
    const Rat needed = parse_rat(f.min_pass_rate);

    FfOptions opts;
    opts.workers = std::max(1, f.parallel);
    if (const auto cap = env_cap()) opts.point_cap = *cap;

    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < f.trials; ++i) seeds.push_back(f.seed + i);
    const auto stats = check_R02_batch(p, f.prime, seeds, factor, opts);
    const bool ok = stats.pass_rate() >= needed;

    std::ostringstream os;
    if (f.format == "json") {
        ordered_json j = report_head("ff-check");
        ordered_json in = input_echo(p);
        in["prime"] = f.prime;
        in["trials"] = f.trials;
        in["seed"] = f.seed;
        in["threshold_factor"] = to_string(factor);
        in["min_pass_rate"] = to_string(needed);
        j["input"] = in;
        ordered_json per = ordered_json::array();
        for (std::size_t i = 0; i < stats.seeds.size(); ++i) {
            const auto& v = stats.verdicts[i];
            ordered_json row;
            row["seed"] = stats.seeds[i];
            row["pass"] = v.pass;
            row["prefix_counts"] = v.prefix_counts;
            ordered_json th = ordered_json::array();
            for (const auto& lim : v.thresholds) th.push_back(to_string(lim));
            row["thresholds"] = th;
            per.push_back(std::move(row));
        }
        j["seeds"] = per;
        j["n_pass"] = stats.n_pass;
        j["pass_rate"] = to_string(stats.pass_rate());
        j["verdict"] = ok ? "pass" : "fail";
        os << j.dump(2) << '\n';
    } else {
        os << "params k=" << p.k << " M=" << p.M << " d=" << join(f.tuple.d)
           << " xi=" << join(f.tuple.xi) << " prime=" << f.prime << " trials="
           << f.trials << " seed0=" << f.seed << " factor=" << to_string(factor)
           << '\n';
        for (std::size_t i = 0; i < stats.seeds.size(); ++i) {
            const auto& v = stats.verdicts[i];
            os << "seed " << stats.seeds[i] << (v.pass ? " PASS" : " FAIL")
               << " counts";
            for (const auto c : v.prefix_counts) os << ' ' << c;
            os << '\n';
        }
        os << "pass " << stats.n_pass << "/" << f.trials << " rate "
           << to_string(stats.pass_rate()) << '\n';
        os << "verdict " << (ok ? "PASS" : "FAIL") << '\n';
    }
    write_out(os.str(), f.out);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certificate checks for singular Fano complete intersections"};
    app.set_config("--config", "", "key = value config file; flags win");
    app.require_subcommand(1);

    TupleFlags tv, ts, tc;
    std::string fmt_v = "text", fmt_s = "text", fmt_c = "text";
    std::string out_v, out_s, out_c;

    auto* verify = app.add_subcommand("verify", "full certificate for one tuple");
    add_tuple_flags(verify, tv);
    verify->add_option("--format", fmt_v)->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--out", out_v, "write the report here instead of stdout");

    auto* schedule =
        app.add_subcommand("schedule", "hypertangent schedule and ratio chain");
    add_tuple_flags(schedule, ts);
    schedule->add_option("--format", fmt_s)->check(CLI::IsMember({"text", "json"}));
    schedule->add_option("--out", out_s);

    auto* codim = app.add_subcommand("codim", "codimension bound assembly");
    add_tuple_flags(codim, tc);
    codim->add_option("--format", fmt_c)->check(CLI::IsMember({"text", "json"}));
    codim->add_option("--out", out_c);

    ExploreFlags ef;
    auto* explore =
        app.add_subcommand("explore", "enumerate the admissible parameter space");
    explore->add_option("--k", ef.k, "single k value");
    explore->add_option("--k-min", ef.k_min);
    explore->add_option("--k-max", ef.k_max);
    explore->add_option("--m-min", ef.m_min, "lowest M")->required();
    explore->add_option("--m-max", ef.m_max, "highest M")->required();
    explore->add_option("--format", ef.format)
        ->check(CLI::IsMember({"csv", "json"}));
    explore->add_option("--out", ef.out, "record file; summary goes to stdout");
    explore->add_option("--parallel", ef.parallel, "worker threads");

    FfFlags ff;
    auto* ffcheck =
        app.add_subcommand("ff-check", "regular-sequence oracle over a prime field");
    add_tuple_flags(ffcheck, ff.tuple);
    ffcheck->add_option("--prime", ff.prime);
    ffcheck->add_option("--trials", ff.trials);
    ffcheck->add_option("--seed", ff.seed, "first seed; trials use seed, seed+1, ...");
    ffcheck->add_option("--threshold-factor", ff.factor);
    ffcheck->add_option("--min-pass-rate", ff.min_pass_rate,
                        "fail (exit 1) below this rate");
    ffcheck->add_option("--parallel", ff.parallel, "worker threads");
    ffcheck->add_option("--format", ff.format)
        ->check(CLI::IsMember({"text", "json"}));
    ffcheck->add_option("--out", ff.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(tv, fmt_v, out_v);
        if (schedule->parsed()) return run_schedule(ts, fmt_s, out_s);
        if (codim->parsed()) return run_codim(tc, fmt_c, out_c);
        if (explore->parsed()) return run_explore(ef);
        if (ffcheck->parsed()) return run_ffcheck(ff);
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IndexError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const GradingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "resource: " << e.what() << '\n';
        return 3;
    } catch (const ResourceError& e) {
        std::cerr << "resource: " << e.what() << '\n';
        return 3;
    } catch (const IOError& e) {
        std::cerr << "io: " << e.what() << '\n';
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
