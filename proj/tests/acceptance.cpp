// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Runtime limits are wall-clock seconds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qbound/qlp.hpp"
#include "support/correction_oracle.hpp"

using namespace qbound;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void fail(const std::string& msg) {
        if (ok) detail << msg;
        ok = false;
    }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& ex) {
        out.fail(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        std::ostringstream m;
        m << "runtime " << secs << " s exceeds " << limit_s << " s";
        out.fail(m.str());
    }
    std::printf("%s criterion %d: %s [%.2f s%s]%s%s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
                limit_s > 0 ? (" / limit " + std::to_string(static_cast<long>(limit_s)) + " s").c_str() : "",
                out.detail.str().empty() ? "" : " -- ", out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.ok) ++failures;
}

CodeQuery pure(long p, long n, long d) { return {p, n, d, Purity::pure, false}; }

std::string where(long p, long n, long d, long e = -1) {
    std::ostringstream os;
    os << "p=" << p << " n=" << n << " d=" << d;
    if (e >= 0) os << " e=" << e;
    return os.str();
}

// Binary table entries n -> s per odd d.
const std::map<long, std::vector<std::pair<long, long>>> kTable = {
    {5, {{21, 12}, {30, 13}, {42, 14}, {60, 15}, {85, 16}, {120, 17}}},
    {7, {{25, 17}, {31, 18}, {39, 19}, {49, 20}, {61, 21}, {62, 21}, {78, 22}, {98, 23}, {123, 24}}},
    {9, {{34, 23}, {40, 24}, {48, 25}, {57, 26}, {67, 27}, {80, 28}, {95, 29}, {113, 30}}},
    {11, {{43, 29}, {50, 30}, {57, 31}, {65, 32}, {75, 33}, {85, 34}, {98, 35}, {112, 36}}},
    {13, {{47, 34}, {52, 35}, {59, 36}, {66, 37}, {73, 38}, {82, 39}, {92, 40}, {103, 41}}},
    {15, {{61, 41}, {67, 42}, {82, 44}, {90, 45}, {99, 46}, {120, 48}}},
    {17, {{70, 47}, {83, 49}, {90, 50}, {98, 51}, {107, 52}, {116, 53}, {127, 54}}},
    {19, {{79, 53}, {85, 54}, {99, 56}, {106, 57}, {115, 58}, {124, 59}}},
    {21, {{88, 59}, {94, 60}, {100, 61}, {107, 62}, {115, 63}, {123, 64}}},
    {23, {{103, 66}, {109, 67}, {116, 68}, {123, 69}}},
    {25, {{118, 73}, {124, 74}}},
};

void check_table_entry(Outcome& out, long n, long d, long s) {
    const auto sp = stabilizer_projection(pure(2, n, d));
    if (sp.s != s || sp.h != s - 1) {
        std::ostringstream m;
        m << where(2, n, d) << ": s=" << sp.s << " h=" << sp.h << ", expected s=" << s << " h=" << s - 1;
        out.fail(m.str());
    }
}

}  // namespace

int main() {
    criterion(1, "d=5 table row s_2(n,5) with h = s - 1", 30, [](Outcome& out) {
        for (auto [n, s] : kTable.at(5)) check_table_entry(out, n, 5, s);
    });

    criterion(2, "all 70 table entries (d = 5..25 odd, n <= 128) with improvement", 600, [](Outcome& out) {
        long count = 0;
        for (const auto& [d, entries] : kTable)
            for (auto [n, s] : entries) {
                check_table_entry(out, n, d, s);
                ++count;
            }
        if (count != 70) out.fail("entry count " + std::to_string(count));
    });

    criterion(3, "corollary lengths, p = 2..5, sigma in {0,1}, m = 2..4", 0, [](Outcome& out) {
        long rows = 0;
        for (long p = 2; p <= 5; ++p)
            for (long sigma : {0L, 1L})
                for (long m = 2; m <= 4; ++m)
                    for (const auto& row : corollary_family(p, sigma, m)) {
                        const auto sp = stabilizer_projection(pure(p, row.n, 3 + sigma));
                        if (sp.s != 2 * (m + 1 + sigma) || sp.h != 2 * (m + sigma) + 1 || row.s_claim != sp.s ||
                            row.h_claim != sp.h) {
                            std::ostringstream msg;
                            msg << where(p, row.n, 3 + sigma) << " r=" << row.r << ": s=" << sp.s << " h=" << sp.h;
                            out.fail(msg.str());
                        }
                        ++rows;
                    }
        out.detail << (out.ok ? std::to_string(rows) + " rows" : "");
    });

    criterion(4, "n_a family s_2(n_a,5) > h_2(n_a,5), a = 3, 4, 5", 0, [](Outcome& out) {
        for (long a : {3L, 4L, 5L}) {
            const long n = Integer((ipow(4, static_cast<unsigned long>(a)) - 1) / 3).get_si();
            const auto sp = stabilizer_projection(pure(2, n, 5));
            if (!(sp.s > sp.h)) out.fail(where(2, n, 5) + ": no improvement");
        }
    });

    criterion(5, "integral Lloyd zeros at n = 66, 67, 226, 227 give S = H", 0, [](Outcome& out) {
        const std::pair<long, long> cases[] = {{66, 0}, {67, 1}, {226, 0}, {227, 1}};
        for (auto [n, sigma] : cases) {
            const auto inst = lloyd_roots(n, 2, sigma, 2, 0);
            const auto q = pure(2, n, 5 + sigma);
            if (!inst.all_roots_integral()) out.fail(where(2, n, 5 + sigma) + ": non-integral zero");
            if (correction_sum(inst) != 0) out.fail(where(2, n, 5 + sigma) + ": nonzero correction");
            if (strengthened(q, 0).factor != qhb(q).factor) out.fail(where(2, n, 5 + sigma) + ": S != H");
        }
    });

    criterion(6, "qLP maximum k, exact certification", 300, [](Outcome& out) {
        struct Case {
            long n, d, k;
        };
        for (const Case c : {Case{5, 3, 1}, Case{10, 3, 4}, Case{11, 4, 3}, Case{21, 5, 9}}) {
            const auto r = qlp_max_k(2, c.n, c.d, Purity::pure);
            if (r.verification != Verification::exact) out.fail(where(2, c.n, c.d) + ": not certified exactly");
            if (r.k != c.k) {
                std::ostringstream msg;
                msg << "DISCREPANCY vs claimed k=" << c.k << " at " << where(2, c.n, c.d) << ": got "
                    << (r.k ? std::to_string(*r.k) : "none");
                out.fail(msg.str());
            }
        }
    });

    criterion(7, "identity suite (n <= 20, p = 2..5, degree <= 5) and master identity", 300, [](Outcome& out) {
        for (long p = 2; p <= 5; ++p)
            for (long n = 1; n <= 20; ++n) {
                const auto rep = check_identities(n, p, std::min(n, 5L));
                for (const auto& c : rep.checks)
                    if (!c.passed) out.fail(c.name + " fails at p=" + std::to_string(p) + " n=" + std::to_string(n));
            }
        long instances = 0;
        for (long p : {2L, 3L})
            for (long d : {5L, 7L})
                for (long n = d; n <= 30; ++n) {
                    const long t = (d - 1) / 2, sigma = d - 1 - 2 * t;
                    for (long e = 0; e < t; ++e) {
                        const LloydParams a{n, t, sigma, p, e};
                        if (a.kraw_length() < a.degree()) continue;
                        if (!master_identity(lloyd_roots(a)).holds()) out.fail("master identity at " + where(p, n, d, e));
                        ++instances;
                    }
                }
        out.detail << (out.ok ? std::to_string(instances) + " master-identity instances" : "");
    });

    criterion(8, "structural properties", 0, [](Outcome& out) {
        for (long p = 2; p <= 5; ++p)
            for (long d = 3; d <= 15; ++d)
                for (long n = d; n <= 80; ++n) {
                    const auto q = pure(p, n, d);
                    if (qhsb(q, 0).factor != qhb(q).factor || qhsb(q, q.t()).factor != qsb(q).factor)
                        out.fail("qHSB boundary at " + where(p, n, d));
                }
        for (long p = 2; p <= 5; ++p)
            for (long d : {3L, 4L})
                for (long n = d + 1; n <= 128; ++n) {
                    const auto q = pure(p, n, d);
                    if (strengthened_d34(q).factor != strengthened(q, 0).factor) out.fail("d34 path at " + where(p, n, d));
                }
        for (long p = 2; p <= 4; ++p)
            for (long t = 1; t <= 4; ++t)
                for (long n = 2 * t + 2; n <= 70; ++n)
                    for (long e = 0; e < t; ++e) {
                        const Rational lhs = p * p * strengthened(pure(p, n, 2 * t + 1), e).factor;
                        if (lhs != strengthened(pure(p, n + 1, 2 * t + 2), e).factor)
                            out.fail("parity linkage at " + where(p, n, 2 * t + 1, e));
                    }
        for (long p = 2; p <= 5; ++p)
            for (long sigma : {0L, 1L})
                for (long n = 4 + 2 * sigma; n <= p * p + 1 + sigma; ++n)
                    if (strengthened(pure(p, n, 3 + sigma), 0).factor !=
                        Rational(ipow(p, static_cast<unsigned long>(2 * (2 + sigma)))))
                        out.fail("Singleton window at " + where(p, n, 3 + sigma));
        long scanned = 0;
        for (long p = 2; p <= 4; ++p)
            for (long d = 3; d <= 11; ++d)
                for (long n = d + 1; n <= 64; ++n) {
                    const auto q = pure(p, n, d);
                    for (long e = 0; e < q.t(); ++e) {
                        if (strengthened(q, e).factor < qhsb(q, e).factor) out.fail("S < H at " + where(p, n, d, e));
                        ++scanned;
                    }
                    if (strengthened_best(q).factor < qhb(q).factor) out.fail("best S < qHB at " + where(p, n, d));
                }
        out.detail << (out.ok ? std::to_string(scanned) + " S >= H instances" : "");
    });

    criterion(9, "correction sum vs certified intervals, width < 1e-30 (d <= 9, n <= 40, p <= 4)", 0, [](Outcome& out) {
        const Rational target = make_rational(Integer(1), ipow(10, 30));
        long checked = 0;
        for (long p = 2; p <= 4; ++p)
            for (long d = 3; d <= 9; ++d) {
                const long t = (d - 1) / 2, sigma = d - 1 - 2 * t;
                for (long e = 0; e < t; ++e)
                    for (long n = d; n <= 40; ++n) {
                        const LloydParams a{n, t, sigma, p, e};
                        if (a.kraw_length() < a.degree()) continue;
                        const Rational exact = correction_sum(lloyd_roots(a));
                        const auto enc = oracle::enclose_correction(n, t, sigma, p, e, target);
                        if (!enc) {
                            out.fail("oracle could not enclose at " + where(p, n, d, e));
                        } else if (!enc->value.contains(exact) || enc->value.width() >= target ||
                                   enc->all_integral != (exact == 0)) {
                            out.fail("mismatch at " + where(p, n, d, e));
                        }
                        ++checked;
                    }
            }
        out.detail << (out.ok ? std::to_string(checked) + " instances" : "");
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
