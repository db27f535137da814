#pragma once

// Report formatting (json/csv/md/text) and the on-disk result cache used by the CLI.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "qbound/table.hpp"

namespace qbound::report {

using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv, md, text };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "md") return Format::md;
    if (s == "text") return Format::text;
    throw std::invalid_argument("unknown format: " + s);
}

inline std::string rat(const Rational& q) { return to_string(q); }

inline json opt_long(const std::optional<long>& v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------- bound reports

inline json to_json(const BoundReport& r) {
    json j;
    j["kind"] = to_string(r.kind);
    j["p"] = r.query.p;
    j["n"] = r.query.n;
    j["d"] = r.query.d;
    j["purity"] = to_string(r.query.purity);
    j["value"] = rat(r.factor);
    j["k_bound"] = rat(r.value);
    j["e_used"] = r.e_used;
    j["e_formula"] = opt_long(r.e_formula);
    j["correction"] = r.kind == BoundKind::strengthened ? json(rat(r.correction)) : json(nullptr);
    j["h"] = r.h_proj;
    j["s"] = opt_long(r.s_proj);
    j["improvement"] = r.improvement_1lq;
    j["singleton_exponent"] = opt_long(r.singleton_exponent);
    return j;
}

inline std::string format_bounds(const std::vector<BoundReport>& reports, Format f) {
    std::ostringstream os;
    switch (f) {
        case Format::json: {
            json arr = json::array();
            for (const auto& r : reports) arr.push_back(to_json(r));
            os << arr.dump(2) << "\n";
            break;
        }
        case Format::csv:
            os << "kind,p,n,d,purity,value,k_bound,e_used,correction,h,s,improvement\n";
            for (const auto& r : reports) {
                os << to_string(r.kind) << ',' << r.query.p << ',' << r.query.n << ',' << r.query.d << ','
                   << to_string(r.query.purity) << ',' << rat(r.factor) << ',' << rat(r.value) << ',' << r.e_used << ','
                   << (r.kind == BoundKind::strengthened ? rat(r.correction) : "") << ',' << r.h_proj << ','
                   << (r.s_proj ? std::to_string(*r.s_proj) : "") << ',' << (r.improvement_1lq ? "true" : "false")
                   << "\n";
            }
            break;
        case Format::md:
            os << "| kind | value | K bound | e | correction | h | s | improvement |\n";
            os << "|---|---|---|---|---|---|---|---|\n";
            for (const auto& r : reports) {
                os << "| " << to_string(r.kind) << " | " << rat(r.factor) << " | " << rat(r.value) << " | " << r.e_used
                   << " | " << (r.kind == BoundKind::strengthened ? rat(r.correction) : "") << " | " << r.h_proj << " | "
                   << (r.s_proj ? std::to_string(*r.s_proj) : "") << " | " << (r.improvement_1lq ? "yes" : "no")
                   << " |\n";
            }
            break;
        case Format::text:
            for (const auto& r : reports) {
                const auto& q = r.query;
                os << to_string(r.kind) << " (p=" << q.p << ", n=" << q.n << ", d=" << q.d << ", "
                   << to_string(q.purity) << ")\n";
                if (r.kind == BoundKind::qsb) {
                    os << "  K <= " << q.p << "^" << *r.singleton_exponent << " = " << rat(r.value) << "\n";
                    continue;
                }
                const char* name = r.kind == BoundKind::strengthened ? "S" : "H";
                os << "  " << name << " = " << rat(r.factor) << "\n";
                os << "  K <= " << rat(r.value) << " (" << floor_of(r.value) << ")\n";
                if (r.kind == BoundKind::qhsb || r.kind == BoundKind::strengthened) {
                    os << "  e = " << r.e_used;
                    if (r.e_formula) os << " (formula/heuristic e = " << *r.e_formula << ")";
                    os << "\n";
                }
                if (r.kind == BoundKind::strengthened) {
                    os << "  correction = " << rat(r.correction) << "\n";
                    os << "  h = " << r.h_proj << ", s = " << *r.s_proj
                       << ", improvement = " << (r.improvement_1lq ? "true" : "false") << "\n";
                } else {
                    os << "  h = " << r.h_proj << "\n";
                }
            }
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------- tables

inline json to_json(const TableRow& r) {
    json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["d"] = r.d;
    j["h"] = r.h;
    j["s"] = r.s;
    j["e_used"] = r.e_used;
    j["improvement"] = r.improvement;
    j["qlp_k"] = opt_long(r.qlp_k);
    j["qlp_status"] = to_string(r.qlp_status);
    return j;
}

/// Markdown grid in the n_{s} style: one line per d, one cell per listed n.
inline std::string table_markdown(const std::vector<TableRow>& rows) {
    std::map<long, std::vector<const TableRow*>> by_d;
    for (const auto& r : rows) by_d[r.d].push_back(&r);
    std::ostringstream os;
    os << "| d | n_{s} |\n|---|---|\n";
    for (const auto& [d, list] : by_d) {
        os << "| " << d << " |";
        for (const auto* r : list) {
            os << " " << r->n << "_{" << r->s << "}";
            if (r->improvement) os << "*";
            if (r->qlp_coincides()) os << "=";
        }
        os << " |\n";
    }
    os << "\n`*` improvement over the Hamming projection (s = h + 1); `=` qLP maximum k equals n - s.\n";
    return os.str();
}

inline std::string format_table(const std::vector<TableRow>& rows, Format f) {
    std::ostringstream os;
    switch (f) {
        case Format::json: {
            json arr = json::array();
            for (const auto& r : rows) arr.push_back(to_json(r));
            os << arr.dump(2) << "\n";
            break;
        }
        case Format::csv:
            os << "p,n,d,h,s,e_used,improvement,qlp_k,qlp_status\n";
            for (const auto& r : rows)
                os << r.p << ',' << r.n << ',' << r.d << ',' << r.h << ',' << r.s << ',' << r.e_used << ','
                   << (r.improvement ? "true" : "false") << ',' << (r.qlp_k ? std::to_string(*r.qlp_k) : "") << ','
                   << to_string(r.qlp_status) << "\n";
            break;
        case Format::md: os << table_markdown(rows); break;
        case Format::text: {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%3s %4s %3s %4s %4s %3s %-5s %6s %s\n", "p", "n", "d", "h", "s", "e", "impr",
                          "qlp_k", "qlp");
            os << buf;
            for (const auto& r : rows) {
                std::snprintf(buf, sizeof buf, "%3ld %4ld %3ld %4ld %4ld %3ld %-5s %6s %s\n", r.p, r.n, r.d, r.h, r.s,
                              r.e_used, r.improvement ? "yes" : "no",
                              r.qlp_k ? std::to_string(*r.qlp_k).c_str() : "-", to_string(r.qlp_status).c_str());
                os << buf;
            }
            break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- cache

/// Line-delimited JSON: a header line {"schema": "qbound-cache", "version": N}
/// followed by one entry per (p, n, d, purity). Any unreadable content discards
/// the whole file (with a warning) and everything is recomputed.
class ResultCache {
public:
    static constexpr int kVersion = 1;
    using Key = std::tuple<long, long, long, std::string>;

    ResultCache() = default;

    /// Loads `path` if it exists; `warn` receives a message when the file is discarded.
    static ResultCache load(const std::string& path, std::ostream& warn = std::cerr) {
        ResultCache c;
        c.path_ = path;
        std::ifstream in(path);
        if (!in) return c;
        std::string line;
        try {
            if (!std::getline(in, line)) return c;
            const json head = json::parse(line);
            if (head.at("schema") != "qbound-cache") throw std::runtime_error("not a qbound cache");
            if (head.at("version").get<int>() != kVersion) {
                warn << "warning: cache " << path << " has version " << head.at("version") << ", expected " << kVersion
                     << "; recomputing\n";
                return c;
            }
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                const json j = json::parse(line);
                TableRow r = row_from_json(j);
                c.rows_[{r.p, r.n, r.d, j.at("purity").get<std::string>()}] = r;
            }
        } catch (const std::exception& ex) {
            warn << "warning: cache " << path << " is corrupt (" << ex.what() << "); recomputing\n";
            c.rows_.clear();
        }
        return c;
    }

    std::optional<TableRow> find(long p, long n, long d) const {
        auto it = rows_.find({p, n, d, "pure"});
        if (it == rows_.end()) return std::nullopt;
        return it->second;
    }

    void put(const TableRow& r) { rows_[{r.p, r.n, r.d, "pure"}] = r; }
    size_t size() const { return rows_.size(); }

    /// Rewrites the whole file, entries in key order.
    void save() const { save(path_); }
    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw IoError("cannot write cache file " + path);
        out << json{{"schema", "qbound-cache"}, {"version", kVersion}}.dump() << "\n";
        for (const auto& [key, r] : rows_) out << entry_json(r, std::get<3>(key)).dump() << "\n";
        if (!out) throw IoError("failed writing cache file " + path);
    }

    static json entry_json(const TableRow& r, const std::string& purity) {
        json j = to_json(r);
        j["purity"] = purity;
        j["factor"] = rat(r.factor);
        j["correction"] = rat(r.correction);
        return j;
    }

    static TableRow row_from_json(const json& j) {
        TableRow r;
        r.p = j.at("p").get<long>();
        r.n = j.at("n").get<long>();
        r.d = j.at("d").get<long>();
        r.h = j.at("h").get<long>();
        r.s = j.at("s").get<long>();
        r.e_used = j.at("e_used").get<long>();
        r.improvement = j.at("improvement").get<bool>();
        r.factor = parse_rational(j.at("factor").get<std::string>());
        r.correction = parse_rational(j.at("correction").get<std::string>());
        if (!j.at("qlp_k").is_null()) r.qlp_k = j.at("qlp_k").get<long>();
        const std::string st = j.at("qlp_status").get<std::string>();
        if (st == "exact") r.qlp_status = QlpStatus::exact;
        else if (st == "unverified") r.qlp_status = QlpStatus::unverified;
        else if (st == "skipped") r.qlp_status = QlpStatus::skipped;
        else throw std::runtime_error("bad qlp_status " + st);
        return r;
    }

private:
    std::string path_;
    std::map<Key, TableRow> rows_;
};

}  // namespace qbound::report
