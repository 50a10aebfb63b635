#pragma once

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "polyenum/convert.hpp"

namespace polyenum {

enum class BenchStatus { Ok, Timeout, Memcap, Overflow };

inline const char* to_string(BenchStatus s) {
    switch (s) {
        case BenchStatus::Ok: return "ok";
        case BenchStatus::Timeout: return "timeout";
        case BenchStatus::Memcap: return "memcap";
        case BenchStatus::Overflow: return "overflow";
    }
    return "?";
}

struct EngineSel {
    Engine engine = Engine::ReverseSearch;
    int workers = 1;

    std::string label() const {
        std::string s = engine == Engine::ReverseSearch ? "rs" : "dd";
        if (workers > 1) s += "x" + std::to_string(workers);
        return s;
    }
};

struct BenchSpec {
    std::vector<std::string> instancePaths;
    std::vector<EngineSel> engines;
    double timeoutSec = 0;                 // per run; 0 disables
    std::uint64_t generatorCap = 0;        // double description cap; 0 disables
    ArithmeticMode arith = ArithmeticMode::Hybrid;
    ParallelParams par{};
};

struct BenchRow {
    std::string instance;
    std::string engine; // EngineSel label
    int workers = 1;
    double seconds = 0;
    std::optional<std::uint64_t> outputs;
    std::optional<std::uint64_t> bases;
    std::optional<std::uint64_t> outputBytes; // serialized size of the output rows
    BenchStatus status = BenchStatus::Ok;
};

/**
 * Run every engine configuration on every instance.  A run ending in
 * timeout, generator cap, or 64-bit overflow produces a status row with
 * empty counters; any other failure aborts the whole matrix, because it
 * indicates a bad instance file rather than a resource limit.
 */
inline std::vector<BenchRow> run_bench(const BenchSpec& spec) {
    std::vector<BenchRow> rows;
    for (const std::string& path : spec.instancePaths) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open instance file '" + path + "'");
        const Representation rep = parse(in);
        const std::string label = rep.name.empty() ? path : rep.name;
        for (const EngineSel& sel : spec.engines) {
            BenchRow row;
            row.instance = label;
            row.engine = sel.label();
            row.workers = sel.workers;
            ConversionOptions opts;
            opts.engine = sel.engine;
            opts.workers = sel.workers;
            opts.par = spec.par;
            opts.arith = spec.arith;
            opts.generatorCap = spec.generatorCap;
            if (spec.timeoutSec > 0)
                opts.deadline = std::chrono::steady_clock::now() +
                                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(spec.timeoutSec));
            std::uint64_t outputs = 0, bytes = 0;
            const RowSink sink = [&](const Vec<BigRat>& r) {
                ++outputs;
                bytes += serialize_row(r).size() + 1;
            };
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const ConversionSummary sum = convert(rep, opts, sink);
                row.seconds = sum.seconds;
                row.outputs = sum.outputs;
                row.bases = sum.bases;
                row.outputBytes = bytes;
                row.status = BenchStatus::Ok;
            } catch (const TimeoutError&) {
                row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                row.status = BenchStatus::Timeout;
            } catch (const ResourceCapError&) {
                row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                row.status = BenchStatus::Memcap;
            } catch (const OverflowError&) {
                row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                row.status = BenchStatus::Overflow;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline std::string to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "instance,engine,workers,seconds,outputs,bases,status\n";
    for (const BenchRow& r : rows) {
        out << r.instance << ',' << r.engine << ',' << r.workers << ','
            << std::fixed << std::setprecision(3) << r.seconds << ',';
        if (r.outputs) out << *r.outputs;
        out << ',';
        if (r.bases) out << *r.bases;
        out << ',' << to_string(r.status) << '\n';
    }
    return out.str();
}

/**
 * Human-readable table with a speedup column relative to the row of the
 * same instance whose engine label equals `baseline`.
 */
inline std::string to_table(const std::vector<BenchRow>& rows, const std::string& baseline = "rs") {
    auto baselineSeconds = [&](const std::string& instance) -> std::optional<double> {
        for (const BenchRow& r : rows)
            if (r.instance == instance && r.engine == baseline && r.status == BenchStatus::Ok)
                return r.seconds;
        return std::nullopt;
    };
    std::vector<std::array<std::string, 8>> cells;
    cells.push_back({"instance", "engine", "workers", "seconds", "outputs", "bases", "bytes", "speedup"});
    for (const BenchRow& r : rows) {
        std::array<std::string, 8> c;
        c[0] = r.instance;
        c[1] = r.engine;
        c[2] = std::to_string(r.workers);
        std::ostringstream sec;
        sec << std::fixed << std::setprecision(3) << r.seconds;
        c[3] = sec.str();
        c[4] = r.outputs ? std::to_string(*r.outputs) : std::string("-");
        c[5] = r.bases ? std::to_string(*r.bases) : std::string("-");
        c[6] = r.outputBytes ? std::to_string(*r.outputBytes) : std::string("-");
        if (r.status != BenchStatus::Ok) {
            c[7] = to_string(r.status);
        } else if (auto base = baselineSeconds(r.instance); base && r.seconds > 0) {
            std::ostringstream sp;
            sp << std::fixed << std::setprecision(2) << (*base / r.seconds) << "x";
            c[7] = sp.str();
        } else {
            c[7] = "-";
        }
        cells.push_back(std::move(c));
    }
    std::array<std::size_t, 8> width{};
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    std::ostringstream out;
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
            out << (i + 1 == row.size() ? "" : "  ");
        }
        out << '\n';
    }
    return out.str();
}

} // namespace polyenum
