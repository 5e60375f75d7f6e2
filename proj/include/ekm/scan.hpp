#ifndef EKM_SCAN_HPP
#define EKM_SCAN_HPP

/* Grid scans over class parameters, embarrassingly parallel with
 * deterministic output: rows land in grid order no matter how the worker
 * pool schedules them, so repeated runs are byte-identical.
 */

#include <atomic>
#include <cstddef>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "ekm/classify.hpp"
#include "ekm/rational.hpp"
#include "ekm/setup.hpp"

namespace ekm {

struct ScanAxis {
    std::size_t factor_index = 0; // whose x is swept
    Rational lo, hi;
    int steps = 1; // number of subintervals; samples at lo + i (hi-lo)/steps, 0 <= i <= steps
};

struct ScanRow {
    std::vector<Rational> xs; // one per axis, grid order
    bool valid = false;       // setup validated (|x| in (0,1), x != 0)
    VerdictKind kind = VerdictKind::NoExtremalSignChange;
    Rational A;
    Rational futaki;
};

inline void run_indexed_parallel(std::size_t count, int threads,
                                 const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
        });
    for (auto& th : pool) th.join();
}

// 1- or 2-axis classification scan; row order is row-major over the axes.
inline std::vector<ScanRow> classification_scan(const AdmissibleSetup& base,
                                                const std::vector<ScanAxis>& axes, int threads) {
    if (axes.empty() || axes.size() > 2) throw OutOfRange("scan needs 1 or 2 axes");
    for (const auto& ax : axes) {
        if (ax.factor_index >= base.factors.size()) throw OutOfRange("scan axis factor index out of range");
        if (ax.steps < 1 || !(ax.lo < ax.hi)) throw OutOfRange("scan axis range invalid");
    }
    std::vector<std::size_t> dims;
    std::size_t count = 1;
    for (const auto& ax : axes) {
        dims.push_back(static_cast<std::size_t>(ax.steps) + 1);
        count *= dims.back();
    }

    std::vector<ScanRow> rows(count);
    run_indexed_parallel(count, threads, [&](std::size_t idx) {
        ScanRow& row = rows[idx];
        AdmissibleSetup setup = base;
        std::size_t rem = idx;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const std::size_t i = rem % dims[a];
            rem /= dims[a];
            const auto& ax = axes[a];
            const Rational x = ax.lo + Rational(static_cast<long>(i)) * (ax.hi - ax.lo) /
                                            Rational(ax.steps);
            setup.factors[ax.factor_index].x = x;
            setup.factors[ax.factor_index].integrality.reset();
        }
        row.xs.resize(axes.size());
        for (std::size_t a = 0; a < axes.size(); ++a)
            row.xs[a] = setup.factors[axes[a].factor_index].x;
        if (!is_valid(setup)) {
            row.valid = false;
            return;
        }
        const Verdict v = classify(setup);
        row.valid = true;
        row.kind = v.kind;
        row.A = v.solution.A;
        row.futaki = v.solution.futaki;
    });
    return rows;
}

inline std::string scan_csv(const std::vector<ScanRow>& rows, std::size_t n_axes) {
    std::string csv;
    for (std::size_t a = 0; a < n_axes; ++a) csv += "x" + std::to_string(a + 1) + ",";
    csv += "kind,A,futaki\n";
    for (const auto& row : rows) {
        if (!row.valid) continue;
        for (const auto& x : row.xs) csv += x.to_string() + ",";
        csv += std::string(to_string(row.kind)) + "," + row.A.to_string() + "," +
               row.futaki.to_string() + "\n";
    }
    return csv;
}

} // namespace ekm

#endif
