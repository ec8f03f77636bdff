#pragma once

// Lattice family sweeps: torsion orders b of the cover homology, the
// normalized series (log b)/m, and comparison against a reference growth
// rate.  Per-lattice computations are independent; with a thread budget
// they run on a small pool and are merged back in family order, so output
// never depends on the degree of parallelism.

#include <atomic>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "linkhom/covers.hpp"

namespace linkhom {

struct GrowthRecord {
    std::string lattice_spec;
    long long m = 0;          // index |Z^d / Lambda|
    double min_vec = 0.0;     // shortest nonzero vector length
    int betti = 0;
    BigInt torsion_order = 1;
    double normalized_log = 0.0;  // log(torsion_order) / m
    bool failed = false;
    std::string error;
};

struct FamilySpec {
    enum class Kind { Cyclic, Diag, Explicit };
    Kind kind = Kind::Cyclic;
    int limit = 0;  // cyclic: r = 1..limit; diag: n = 1..limit
    std::vector<Lattice> lattices;  // Kind::Explicit
};

// "cyclic:60" (d = 1 families) or "diag:12" (Lambda = n Z^d)
inline FamilySpec parse_family(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ParseError("family spec needs 'kind:limit': " + spec);
    FamilySpec f;
    const std::string kind = spec.substr(0, colon);
    f.limit = std::stoi(spec.substr(colon + 1));
    if (f.limit < 1) throw ParseError("family limit must be >= 1");
    if (kind == "cyclic")
        f.kind = FamilySpec::Kind::Cyclic;
    else if (kind == "diag")
        f.kind = FamilySpec::Kind::Diag;
    else
        throw ParseError("unknown family kind: " + kind);
    return f;
}

inline std::vector<Lattice> family_lattices(const FamilySpec& fam, int d) {
    if (fam.kind == FamilySpec::Kind::Explicit) return fam.lattices;
    std::vector<Lattice> out;
    for (int n = 1; n <= fam.limit; ++n) {
        if (fam.kind == FamilySpec::Kind::Cyclic) {
            if (d != 1)
                throw DimensionMismatch("cyclic family applies to knots (d = 1)");
            out.push_back(diag_lattice(1, {n}));
        } else {
            out.push_back(diag_lattice(d, std::vector<long long>(d, n)));
        }
    }
    return out;
}

// log of a big positive integer from bit length plus the top 64 bits;
// relative error well under 1e-12, no overflow
inline double log_bigint(const BigInt& x) {
    if (x <= 0) throw Error("log of non-positive integer");
    const auto bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 62) return std::log(static_cast<double>(x));
    BigInt top = x >> (bits - 62);
    return std::log(static_cast<double>(top)) +
           static_cast<double>(bits - 62) * std::log(2.0);
}

inline std::vector<GrowthRecord> run_family(const WirtingerPresentation& pres,
                                            const FamilySpec& fam,
                                            int threads = 1) {
    const std::vector<Lattice> lats = family_lattices(fam, pres.d);
    std::vector<GrowthRecord> records(lats.size());
    auto work = [&](std::size_t k) {
        GrowthRecord& rec = records[k];
        rec.lattice_spec = lats[k].spec;
        try {
            HomologySummary h = homology_relative(pres, lats[k]);
            rec.m = h.index;
            rec.min_vec = h.min_vec;
            rec.betti = h.betti;
            rec.torsion_order = h.torsion_order;
            rec.normalized_log =
                h.torsion_order == 1
                    ? 0.0
                    : log_bigint(h.torsion_order) / static_cast<double>(h.index);
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
            rec.m = lats[k].index();
        }
    };
    if (threads <= 1) {
        for (std::size_t k = 0; k < lats.size(); ++k) work(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int nt = std::min<int>(threads, static_cast<int>(lats.size()));
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t k = next.fetch_add(1);
                    if (k >= lats.size()) return;
                    work(k);
                }
            });
        for (auto& th : pool) th.join();
    }
    return records;
}

struct RateEstimate {
    double last = 0.0;      // final normalized_log
    double tail_max = 0.0;  // max over the last `tail` records
    std::optional<double> reference_log_m;
    std::optional<double> abs_gap;  // |tail_max - reference|
};

inline RateEstimate estimate_rate(const std::vector<GrowthRecord>& series,
                                  int tail,
                                  std::optional<double> reference_log_m) {
    if (series.empty()) throw Error("estimate_rate: empty series");
    if (tail < 1 || tail > static_cast<int>(series.size()))
        throw Error("estimate_rate: tail must be in 1..series length");
    RateEstimate est;
    est.last = series.back().normalized_log;
    est.tail_max = 0.0;
    for (std::size_t k = series.size() - tail; k < series.size(); ++k)
        est.tail_max = std::max(est.tail_max, series[k].normalized_log);
    est.reference_log_m = reference_log_m;
    if (reference_log_m)
        est.abs_gap = std::abs(est.tail_max - *reference_log_m);
    return est;
}

// CSV columns: lattice,m,min_vec,betti,torsion_order,normalized_log
inline void emit_csv(const std::vector<GrowthRecord>& records, std::ostream& out) {
    out << "lattice,m,min_vec,betti,torsion_order,normalized_log\n";
    for (const auto& r : records) {
        out << r.lattice_spec << "," << r.m << "," << r.min_vec << ","
            << r.betti << "," << r.torsion_order.str() << ","
            << r.normalized_log << "\n";
    }
}

// JSON array mirroring GrowthRecord, records in family order, torsion orders
// as decimal strings
inline void emit_json(const std::vector<GrowthRecord>& records, std::ostream& out) {
    auto escape = [](const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '"' || c == '\\') r += '\\';
            r += c;
        }
        return r;
    };
    out << "[";
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        out << (k ? ",\n " : "\n ");
        out << "{\"lattice\":\"" << escape(r.lattice_spec) << "\",\"m\":" << r.m
            << ",\"min_vec\":" << r.min_vec << ",\"betti\":" << r.betti
            << ",\"torsion_order\":\"" << r.torsion_order.str()
            << "\",\"normalized_log\":" << r.normalized_log;
        if (r.failed) out << ",\"error\":\"" << escape(r.error) << "\"";
        out << "}";
    }
    out << "\n]\n";
}

template <typename Emit>
inline void emit_to_file(const std::vector<GrowthRecord>& records,
                         const std::string& path, Emit emit) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    emit(records, out);
}

}  // namespace linkhom
