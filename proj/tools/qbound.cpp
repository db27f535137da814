// qbound: exact quantum code bounds from the command line.
//
//   qbound bound  --p 2 --n 21 --d 5 --kind strengthened
//   qbound table  --p 2 --nmax 128 --dmax 25 --improved-only --format md
//   qbound family --p 2 --sigma 0 --mmax 3
//   qbound verify --nmax 16 --tmax 3
//   qbound qlp    --p 2 --n 21 --d 5
//
// Exit codes: 0 ok, 1 verification failure, 2 domain error, 64 usage, 74 I/O.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qbound/table.hpp"
#include "report.hpp"

namespace {

using namespace qbound;
using report::Format;
using report::json;

constexpr int kExitVerify = 1;
constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << std::flush;
        if (!std::cout) throw report::IoError("failed writing to stdout");
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw report::IoError("cannot open output file " + out_path);
    out << text;
    out.flush();
    if (!out) throw report::IoError("failed writing output file " + out_path);
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
    long p = 2, n = 0, d = 0;
    std::string kind = "all";
    std::optional<long> e;
    bool impure = false;
    bool assume_conjecture = false;
    std::string format = "text";
};

int run_bound(const BoundArgs& a) {
    CodeQuery q{a.p, a.n, a.d, a.impure ? Purity::impure : Purity::pure, a.assume_conjecture};
    if (a.e && a.kind != "qhsb" && a.kind != "strengthened") throw UsageError("--e applies only to --kind qhsb or strengthened");
    std::vector<BoundReport> reports;
    if (a.kind == "qhb" || a.kind == "all") reports.push_back(qhb(q));
    if (a.kind == "qsb" || a.kind == "all") reports.push_back(qsb(q));
    if (a.kind == "qhsb" || (a.kind == "all" && q.d >= 3)) reports.push_back(a.e ? qhsb(q, *a.e) : qhsb_best(q));
    if (a.kind == "strengthened" || (a.kind == "all" && q.d >= 3)) {
        if (a.e) {
            reports.push_back(strengthened(q, *a.e));
        } else {
            reports.push_back(strengthened_best(q));
        }
    }
    emit(report::format_bounds(reports, report::parse_format(a.format)), "");
    return 0;
}

// ---------------------------------------------------------------- table

struct TableArgs {
    TableOptions opt;
    std::string out, cache, format = "csv";
};

int run_table(TableArgs a) {
    if (const char* env = std::getenv("QBOUND_CACHE"); env && *env) a.cache = env;
    const Format fmt = report::parse_format(a.format);
    report::ResultCache cache;
    if (!a.cache.empty()) cache = report::ResultCache::load(a.cache);
    std::function<std::optional<TableRow>(long, long)> lookup;
    if (cache.size() > 0) lookup = [&](long n, long d) { return cache.find(a.opt.p, n, d); };

    const auto all = generate_table(a.opt, lookup);
    emit(report::format_table(select_rows(all, a.opt), fmt), a.out);
    if (!a.cache.empty()) {
        for (const auto& r : all) cache.put(r);
        cache.save(a.cache);
    }
    return 0;
}

// ---------------------------------------------------------------- family

struct FamilyArgs {
    long p = 2, sigma = 0, mmax = 4, amax = 0;
    std::string format = "text";
};

int run_family(const FamilyArgs& a) {
    if (a.mmax < 2) throw DomainError("--mmax must be >= 2");
    json rows = json::array();
    std::ostringstream text;
    bool all_pass = true;
    const long d = 3 + a.sigma;
    text << "Length family N_{m,sigma}^r, p=" << a.p << " sigma=" << a.sigma << " (d=" << d << ")\n";
    text << "  m   r      N   s   h  s_claim  h_claim  result\n";
    for (long m = 2; m <= a.mmax; ++m)
        for (const auto& row : corollary_family(a.p, a.sigma, m)) {
            const auto sp = stabilizer_projection({a.p, row.n, d});
            const bool pass = sp.s == row.s_claim && sp.h == row.h_claim;
            all_pass = all_pass && pass;
            rows.push_back({{"family", "corollary"}, {"m", m}, {"r", row.r}, {"n", row.n}, {"d", d}, {"s", sp.s},
                            {"h", sp.h}, {"s_claim", row.s_claim}, {"h_claim", row.h_claim}, {"pass", pass}});
            char buf[128];
            std::snprintf(buf, sizeof buf, "%3ld %3ld %6ld %3ld %3ld %8ld %8ld  %s\n", m, row.r, row.n, sp.s, sp.h,
                          row.s_claim, row.h_claim, pass ? "pass" : "FAIL");
            text << buf;
        }
    if (a.amax >= 3) {
        text << "Lengths (4^a - 1)/3 at d=5, p=2\n  a      n   s   h  improvement\n";
        for (const auto& fr : special_families(a.amax, 0)) {
            all_pass = all_pass && fr.improvement;
            rows.push_back({{"family", "n_a"}, {"a", fr.index}, {"n", fr.n}, {"d", fr.d}, {"s", fr.s}, {"h", fr.h},
                            {"improvement", fr.improvement}, {"pass", fr.improvement}});
            char buf[128];
            std::snprintf(buf, sizeof buf, "%3ld %6ld %3ld %3ld  %s\n", fr.index, fr.n, fr.s, fr.h,
                          fr.improvement ? "yes" : "NO");
            text << buf;
        }
    }
    text << (all_pass ? "all claims hold\n" : "some claims FAILED\n");
    emit(a.format == "json" ? rows.dump(2) + "\n" : text.str(), "");
    return all_pass ? 0 : kExitVerify;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    long nmax = 16, tmax = 3;
    std::vector<long> ps{2, 3, 4, 5};
    std::string format = "text";
};

int run_verify(const VerifyArgs& a) {
    if (a.nmax < 2 || a.tmax < 1) throw DomainError("need --nmax >= 2 and --tmax >= 1");
    std::map<std::string, std::pair<long, std::string>> summary;  // name -> (cases, first failure)
    std::vector<std::string> order;
    auto record = [&](const std::string& name, long cases, bool ok, const std::string& where) {
        if (!summary.count(name)) order.push_back(name);
        auto& s = summary[name];
        s.first += cases;
        if (!ok && s.second.empty()) s.second = where.empty() ? "failed" : where;
    };
    for (long p : a.ps)
        for (long n = 2; n <= a.nmax; ++n) {
            const auto rep = check_identities(n, p, std::min(a.tmax, n));
            for (const auto& c : rep.checks)
                record(c.name, c.cases, c.passed, "p=" + std::to_string(p) + " n=" + std::to_string(n) + " " + c.counterexample);
        }
    for (long p : a.ps)
        for (long d = 3; d <= 2 * a.tmax + 2; ++d) {
            const long t = (d - 1) / 2, sigma = d - 1 - 2 * t;
            for (long n = d; n <= a.nmax; ++n)
                for (long e = 0; e < t; ++e) {
                    const LloydParams lp{n, t, sigma, p, e};
                    if (lp.kraw_length() < lp.degree()) continue;
                    const auto mi = master_identity(lloyd_roots(lp));
                    record("master_identity", 1, mi.holds(),
                           "p=" + std::to_string(p) + " n=" + std::to_string(n) + " d=" + std::to_string(d) +
                               " e=" + std::to_string(e));
                }
        }
    bool all_pass = true;
    json out = json::array();
    std::ostringstream text;
    for (const auto& name : order) {
        const auto& [cases, fail] = summary[name];
        const bool ok = fail.empty();
        all_pass = all_pass && ok;
        out.push_back({{"identity", name}, {"cases", cases}, {"pass", ok}, {"counterexample", ok ? json(nullptr) : json(fail)}});
        text << (ok ? "PASS " : "FAIL ") << name << " (" << cases << " cases)" << (ok ? "" : " at " + fail) << "\n";
    }
    text << (all_pass ? "all identities hold\n" : "identity check FAILED\n");
    emit(a.format == "json" ? out.dump(2) + "\n" : text.str(), "");
    return all_pass ? 0 : kExitVerify;
}

// ---------------------------------------------------------------- qlp

struct QlpArgs {
    long p = 2, n = 0, d = 0;
    std::optional<long> k;
    bool impure = false;
    long exact_limit = 40;
    std::string format = "text";
};

int run_qlp(const QlpArgs& a) {
    const Purity purity = a.impure ? Purity::impure : Purity::pure;
    const QlpOptions opt{a.exact_limit};
    json j{{"p", a.p}, {"n", a.n}, {"d", a.d}, {"purity", to_string(purity)}};
    std::ostringstream text;
    if (a.k) {
        if (*a.k < 0) throw DomainError("--k must be >= 0");
        const auto o = qlp_outcome({a.p, a.n, a.d, purity}, *a.k, opt);
        j["k"] = *a.k;
        j["status"] = to_string(o.status);
        j["verification"] = to_string(o.verification);
        json w = json::array();
        for (const auto& v : o.witness) w.push_back(report::rat(v));
        j["witness"] = o.status == LPStatus::feasible ? w : json(nullptr);
        text << "K = " << a.p << "^" << *a.k << ": " << to_string(o.status) << " (" << to_string(o.verification) << ")\n";
        if (o.status == LPStatus::feasible) {
            text << "  A_1..A_n =";
            for (const auto& v : o.witness) text << " " << v;
            text << "\n";
        }
    } else {
        const auto r = qlp_max_k(a.p, a.n, a.d, purity, opt);
        j["max_k"] = report::opt_long(r.k);
        j["verification"] = to_string(r.verification);
        text << "qLP max k = " << (r.k ? std::to_string(*r.k) : "none (infeasible at K = 1)") << " ("
             << to_string(r.verification) << ")\n";
    }
    emit(a.format == "json" ? j.dump(2) + "\n" : text.str(), "");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact upper bounds on quantum code dimensions"};
    app.require_subcommand(1);
    const std::vector<std::string> all_formats{"json", "csv", "md", "text"};
    const std::vector<std::string> plain_formats{"json", "text"};

    BoundArgs ba;
    auto* bound = app.add_subcommand("bound", "Single-query bounds");
    bound->add_option("--p", ba.p, "local dimension")->required()->check(CLI::Range(2L, 1000L));
    bound->add_option("--n", ba.n, "length")->required()->check(CLI::Range(1L, 100000L));
    bound->add_option("--d", ba.d, "distance")->required()->check(CLI::Range(1L, 100000L));
    bound->add_option("--kind", ba.kind, "qhb|qsb|qhsb|strengthened|all")
        ->check(CLI::IsMember({"qhb", "qsb", "qhsb", "strengthened", "all"}));
    bound->add_option("--e", ba.e, "fixed e for qhsb/strengthened");
    bound->add_flag("--impure", ba.impure, "impure (degenerate) code");
    bound->add_flag("--assume-conjecture", ba.assume_conjecture, "allow the strengthened bound for impure codes at d >= 5");
    bound->add_option("--format", ba.format)->check(CLI::IsMember(all_formats));

    TableArgs ta;
    auto* table = app.add_subcommand("table", "Strengthened-bound table over (n, d)");
    table->add_option("--p", ta.opt.p)->check(CLI::Range(2L, 1000L));
    table->add_option("--nmax", ta.opt.nmax)->required()->check(CLI::Range(1L, 100000L));
    table->add_option("--dmax", ta.opt.dmax)->required()->check(CLI::Range(3L, 100000L));
    table->add_option("--dmin", ta.opt.dmin)->check(CLI::Range(3L, 100000L));
    table->add_flag("--improved-only", ta.opt.improved_only, "only rows with s = h + 1");
    table->add_flag("--qlp-check", ta.opt.qlp_check, "fill qlp_k by the linear-programming bound");
    table->add_option("--qlp-nmax", ta.opt.qlp_nmax, "largest n for --qlp-check");
    table->add_option("--exact-limit", ta.opt.qlp.exact_limit, "largest n solved by plain exact simplex");
    table->add_option("--threads", ta.opt.threads, "worker threads (0 = all cores)");
    table->add_option("--out", ta.out, "output file (default stdout)");
    table->add_option("--cache", ta.cache, "result cache file (QBOUND_CACHE overrides)");
    table->add_option("--format", ta.format)->check(CLI::IsMember(all_formats));

    FamilyArgs fa;
    auto* family = app.add_subcommand("family", "Closed-form length families N_{m,sigma}^r and (4^a - 1)/3");
    family->add_option("--p", fa.p)->check(CLI::Range(2L, 1000L));
    family->add_option("--sigma", fa.sigma)->check(CLI::Range(0L, 1L));
    family->add_option("--mmax", fa.mmax);
    family->add_option("--amax", fa.amax, "also check (4^a - 1)/3 for a = 3..amax");
    family->add_option("--format", fa.format)->check(CLI::IsMember(plain_formats));

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Krawtchouk identities and the master rho-average identity");
    verify->add_option("--nmax", va.nmax);
    verify->add_option("--tmax", va.tmax);
    verify->add_option("--p", va.ps, "alphabet parameters")->delimiter(',');
    verify->add_option("--format", va.format)->check(CLI::IsMember(plain_formats));

    QlpArgs qa;
    auto* qlp = app.add_subcommand("qlp", "Linear-programming bound");
    qlp->add_option("--p", qa.p)->check(CLI::Range(2L, 1000L));
    qlp->add_option("--n", qa.n)->required()->check(CLI::Range(1L, 100000L));
    qlp->add_option("--d", qa.d)->required()->check(CLI::Range(1L, 100000L));
    qlp->add_option("--k", qa.k, "test a single K = p^k");
    qlp->add_flag("--impure", qa.impure);
    qlp->add_option("--exact-limit", qa.exact_limit);
    qlp->add_option("--format", qa.format)->check(CLI::IsMember(plain_formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*bound) return run_bound(ba);
        if (*table) return run_table(ta);
        if (*family) return run_family(fa);
        if (*verify) return run_verify(va);
        if (*qlp) return run_qlp(qa);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const report::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const PropertyViolation& e) {
        std::cerr << "property violated: " << e.what() << "\n";
        return kExitVerify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    }
    return kExitUsage;
}
