#pragma once

/**
 * @file table.hpp
 * @brief Strengthened-bound tables over (n, d) cells, computed by a small worker pool.
 *
 * Rows come back in (d asc, n asc) order whatever order the workers finish in.
 * Cells outside a formula domain (n < d, or the e = 0 Lloyd polynomial does not
 * exist) are left out.
 */

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "qbound/qlp.hpp"

namespace qbound {

enum class QlpStatus { exact, unverified, skipped };

inline std::string to_string(QlpStatus s) {
    switch (s) {
        case QlpStatus::exact: return "exact";
        case QlpStatus::unverified: return "unverified";
        case QlpStatus::skipped: return "skipped";
    }
    return "?";
}

struct TableRow {
    long p = 2, n = 0, d = 0;
    long h = 0, s = 0, e_used = 0;
    bool improvement = false;
    Rational factor;      ///< S at e_used
    Rational correction;  ///< Lloyd correction sum at e_used
    std::optional<long> qlp_k;
    QlpStatus qlp_status = QlpStatus::skipped;

    /// qLP maximum k coincides with the stabilizer projection n - s.
    bool qlp_coincides() const { return qlp_k && *qlp_k == n - s; }
};

struct TableOptions {
    long p = 2;
    long nmax = 20;
    long dmin = 3;
    long dmax = 5;
    bool improved_only = false;
    bool qlp_check = false;
    long qlp_nmax = 40;
    QlpOptions qlp;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

struct TableCell {
    long n = 0, d = 0;
};

inline std::vector<TableCell> table_cells(const TableOptions& opt) {
    if (opt.p < 2) throw DomainError("p must be >= 2");
    if (opt.dmin < 3) throw DomainError("table needs d >= 3");
    if (opt.nmax < 1 || opt.dmax < opt.dmin) throw DomainError("empty table range");
    std::vector<TableCell> cells;
    for (long d = opt.dmin; d <= opt.dmax; ++d)
        for (long n = d; n <= opt.nmax; ++n) cells.push_back({n, d});
    return cells;
}

/// Bound part of a row; nullopt when the cell is outside the formula domain.
inline std::optional<TableRow> compute_bound_row(long p, long n, long d) {
    const CodeQuery q{p, n, d, Purity::pure, false};
    if (n - q.sigma() - 1 < q.t()) return std::nullopt;
    BoundReport r;
    try {
        r = strengthened_best(q);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    TableRow row;
    row.p = p;
    row.n = n;
    row.d = d;
    row.h = r.h_proj;
    row.s = *r.s_proj;
    row.e_used = r.e_used;
    row.improvement = r.improvement_1lq;
    row.factor = r.factor;
    row.correction = r.correction;
    return row;
}

inline void fill_qlp(TableRow& row, const TableOptions& opt) {
    if (!opt.qlp_check || row.n > opt.qlp_nmax) {
        row.qlp_k.reset();
        row.qlp_status = QlpStatus::skipped;
        return;
    }
    const QlpResult res = qlp_max_k(row.p, row.n, row.d, Purity::pure, opt.qlp);
    row.qlp_k = res.k;
    row.qlp_status = res.verification == Verification::exact ? QlpStatus::exact : QlpStatus::unverified;
}

/// Runs `work(i)` for i in [0, count) on a pool of threads; the first exception is rethrown.
inline void parallel_for(size_t count, unsigned threads, const std::function<void(size_t)>& work) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(count, 1)));
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
                next = count;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

/// Computes every cell in range, in deterministic order. `lookup` may supply a
/// previously computed row (a cache); it is called concurrently and must be
/// safe for concurrent reads. qLP data is computed only where select_rows will show it.
inline std::vector<TableRow> generate_table(
    const TableOptions& opt,
    const std::function<std::optional<TableRow>(long n, long d)>& lookup = nullptr) {
    const auto cells = table_cells(opt);
    std::vector<std::optional<TableRow>> out(cells.size());
    parallel_for(cells.size(), opt.threads, [&](size_t i) {
        const auto [n, d] = cells[i];
        std::optional<TableRow> row;
        if (lookup) row = lookup(n, d);
        if (!row) row = compute_bound_row(opt.p, n, d);
        if (!row) return;
        const bool shown = !opt.improved_only || row->improvement;
        if (shown && opt.qlp_check && n <= opt.qlp_nmax && row->qlp_status == QlpStatus::skipped) fill_qlp(*row, opt);
        out[i] = std::move(row);
    });
    std::vector<TableRow> rows;
    for (auto& r : out)
        if (r) rows.push_back(std::move(*r));
    return rows;
}

/// The rows a report shows: applies --improved-only and hides qLP data outside the requested range.
inline std::vector<TableRow> select_rows(const std::vector<TableRow>& all, const TableOptions& opt) {
    std::vector<TableRow> rows;
    for (TableRow r : all) {
        if (opt.improved_only && !r.improvement) continue;
        if (!opt.qlp_check || r.n > opt.qlp_nmax) {
            r.qlp_k.reset();
            r.qlp_status = QlpStatus::skipped;
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace qbound
