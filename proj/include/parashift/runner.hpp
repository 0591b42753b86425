#pragma once

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "parashift/classifier.hpp"
#include "parashift/config.hpp"
#include "parashift/disk.hpp"
#include "parashift/errors.hpp"
#include "parashift/orbit.hpp"
#include "parashift/random_maps.hpp"

namespace parashift {

namespace detail {

// All CSV numbers go through one fixed conversion so identical runs produce
// byte-identical files.
inline std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Shorter form for human-facing report lines.
inline std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string g12(const ExtendedReal& v) { return v.is_finite() ? g12(v.value()) : "inf"; }

inline std::ofstream open_csv(const ExperimentConfig& cfg, const std::string& name,
                              std::string& path_out) {
    std::filesystem::create_directories(cfg.out_dir);
    path_out = (std::filesystem::path(cfg.out_dir) / name).string();
    std::ofstream file(path_out, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file " + path_out);
    return file;
}

inline void print_limit(std::ostream& out, const char* label, const LimitEstimate& e) {
    out << label << " " << g12(e.value) << " (err " << g12(e.error_indicator) << ", "
        << (e.converged ? "converged" : "not converged") << ")\n";
}

inline long record_stride(const ExperimentConfig& cfg) { return cfg.stride < 1 ? 1 : cfg.stride; }

}  // namespace detail

inline void run_classify(const ExperimentConfig& cfg, std::ostream& out) {
    const ParabolicMap map = cfg.make_map();
    const ShiftVerdict verdict = classify_shift(map);
    const MomentReport& r = verdict.report;
    out << "verdict " << to_string(verdict.kind) << "\n";
    out << "abs_neg " << detail::g12(r.abs_neg) << "\n";
    out << "abs_pos " << detail::g12(r.abs_pos) << "\n";
    out << "sq_neg " << detail::g12(r.sq_neg) << "\n";
    out << "sq_pos " << detail::g12(r.sq_pos) << "\n";
    if (r.first)
        out << "first_moment " << detail::g12(*r.first) << "\n";
    else
        out << "first_moment undefined\n";
    if (r.drift)
        out << "drift " << detail::g12(*r.drift) << "\n";
    else
        out << "drift undefined\n";
}

inline void run_orbit(const ExperimentConfig& cfg, std::ostream& out) {
    const ParabolicMap map = cfg.make_map();
    const Orbit orbit = iterate(map, cfg.z0, cfg.horizon);
    const std::size_t steps = orbit.steps();

    // Per-step quantities on the recording grid (dx etc. need index n+1, so
    // rows stop one short of the final point).
    std::string path;
    {
        std::ofstream csv = detail::open_csv(cfg, "orbit.csv", path);
        csv << "n,x,y,dx,rho_step,series_partial\n";
        double running = 0.0;
        const long stride = detail::record_stride(cfg);
        for (std::size_t n = 0; n < steps; ++n) {
            const double dx = orbit.x[n + 1] - orbit.x[n];
            const double rho = pseudo_hyperbolic_distance(orbit.point(n + 1), orbit.point(n));
            running += (orbit.y[n + 1] - orbit.y[n]) / orbit.y[n];
            if (n % static_cast<std::size_t>(stride) == 0 || n + 1 == steps) {
                csv << n << "," << detail::g17(orbit.x[n]) << "," << detail::g17(orbit.y[n]) << ","
                    << detail::g17(dx) << "," << detail::g17(rho) << "," << detail::g17(running)
                    << "\n";
            }
        }
    }
    out << "wrote " << path << "\n";
    out << "points " << orbit.size() << (orbit.y_cap_hit ? " (height cap hit)" : "") << "\n";

    DiagnosticsOptions dopts;
    dopts.aitken_tol = cfg.aitken_tolerance;
    const OrbitDiagnostics diag = pommerenke_quantities(orbit, dopts);
    detail::print_limit(out, "b_hat", diag.b_hat);
    detail::print_limit(out, "Y_hat", diag.Y_hat);
    detail::print_limit(out, "delta_hat", diag.delta_hat);
    detail::print_limit(out, "step_hat", diag.step_hat);
    out << "step_zero " << (indicates_zero_limit(diag.step_hat) ? "true" : "false") << "\n";
    out << "series_partial_final " << detail::g12(diag.series_partial_sums.back()) << "\n";
}

inline void run_rate(const ExperimentConfig& cfg, std::ostream& out) {
    const DiskSetting setting(cfg.tau, cfg.make_map());
    const std::vector<double> gaps = disk_gap_series(setting, cfg.z_disk, cfg.horizon);

    // Scaled gaps n * |g^n - tau| on the recording grid; the extrapolation
    // column re-accelerates the last three recorded values.
    std::vector<long> grid;
    const long stride = detail::record_stride(cfg);
    for (long n = 1; n < static_cast<long>(gaps.size()); ++n)
        if (n % stride == 0 || n == 1 || n + 1 == static_cast<long>(gaps.size())) grid.push_back(n);

    std::string path;
    {
        std::ofstream csv = detail::open_csv(cfg, "rate.csv", path);
        csv << "n,gap,n_times_gap,aitken_estimate\n";
        std::vector<double> recorded;
        for (const long n : grid) {
            const double scaled = static_cast<double>(n) * gaps[static_cast<std::size_t>(n)];
            recorded.push_back(scaled);
            double accel = scaled;
            if (recorded.size() >= 3) {
                const std::size_t i = recorded.size() - 3;
                const double d1 = recorded[i + 1] - recorded[i];
                const double d2 = recorded[i + 2] - recorded[i + 1];
                const double denom = d2 - d1;
                if (std::fabs(denom) > 1e-14 * (std::fabs(d1) + std::fabs(d2)) && denom != 0.0)
                    accel = recorded[i + 2] - d2 * d2 / denom;
            }
            csv << n << "," << detail::g17(gaps[static_cast<std::size_t>(n)]) << ","
                << detail::g17(scaled) << "," << detail::g17(accel) << "\n";
        }
    }
    out << "wrote " << path << "\n";

    std::vector<double> seq;
    for (std::size_t n = 1; n < gaps.size(); ++n)
        seq.push_back(static_cast<double>(n) * gaps[n]);
    const LimitEstimate est = aitken_limit(seq, cfg.aitken_tolerance);
    detail::print_limit(out, "rate_estimate", est);
    try {
        const double constant = rate_constant(setting);
        out << "rate_constant " << detail::g12(constant) << "\n";
        out << "relative_error " << detail::g12(std::fabs(est.value - constant) / constant) << "\n";
    } catch (const NotFiniteShift&) {
        out << "rate_constant undefined (not a finite-shift map)\n";
    }
}

inline void run_drift(const ExperimentConfig& cfg, std::ostream& out) {
    const ParabolicMap map = cfg.make_map();
    const Orbit orbit = iterate(map, cfg.z0, cfg.horizon);
    const LimitEstimate est = drift_limit(orbit);
    detail::print_limit(out, "drift_estimate", est);
    const MomentReport report = moment_report(map);
    if (report.drift) {
        out << "drift_analytic " << detail::g12(*report.drift) << "\n";
        if (*report.drift != 0.0)
            out << "relative_error "
                << detail::g12(std::fabs(est.value - *report.drift) / std::fabs(*report.drift))
                << "\n";
    } else {
        out << "drift_analytic undefined (divergent absolute moment)\n";
    }
    out << "imaginary_residual " << detail::g12(drift_imaginary_residual(orbit)) << "\n";
}

namespace detail {

struct SuiteRow {
    std::uint64_t seed = 0;
    double beta = 0.0;
    double drift = 0.0;
    CrossValidation cv;
    std::exception_ptr error;
};

}  // namespace detail

inline void run_suite(const ExperimentConfig& cfg, std::ostream& out) {
    RandomMapOptions map_opts;
    map_opts.drift_min = cfg.drift_min;

    std::vector<detail::SuiteRow> rows(static_cast<std::size_t>(cfg.suite_count));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= cfg.suite_count) break;
            detail::SuiteRow& row = rows[static_cast<std::size_t>(i)];
            row.seed = cfg.seed + static_cast<std::uint64_t>(i);
            try {
                const ParabolicMap map = random_atom_map(row.seed, map_opts);
                row.beta = map.beta();
                row.drift = drift(map);
                row.cv = cross_validate(map, cfg.z0, cfg.horizon, cfg.oracle_tolerance);
            } catch (...) {
                row.error = std::current_exception();
            }
        }
    };
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned n_threads =
        std::min<unsigned>(hw == 0 ? 4 : hw, static_cast<unsigned>(cfg.suite_count));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i + 1 < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& row : rows)
        if (row.error) std::rethrow_exception(row.error);

    // rows are already seed-ordered: seed = base + index.
    std::string path;
    {
        std::ofstream csv = detail::open_csv(cfg, "suite.csv", path);
        csv << "seed,beta,drift,verdict,oracle,agreement,gamma_hat\n";
        for (const auto& row : rows) {
            csv << row.seed << "," << detail::g17(row.beta) << "," << detail::g17(row.drift) << ","
                << to_string(row.cv.verdict.kind) << "," << to_string(row.cv.oracle.kind) << ","
                << to_string(row.cv.agreement) << "," << detail::g17(row.cv.oracle.gamma_hat)
                << "\n";
        }
    }
    out << "wrote " << path << "\n";

    int agree = 0, disagree = 0, inconclusive = 0;
    for (const auto& row : rows) {
        switch (row.cv.agreement) {
            case AgreementKind::Agree: ++agree; break;
            case AgreementKind::Disagree: ++disagree; break;
            case AgreementKind::OracleInconclusive: ++inconclusive; break;
        }
    }
    out << "agree " << agree << "\n";
    out << "disagree " << disagree << "\n";
    out << "inconclusive " << inconclusive << "\n";
    out << "agreement " << agree << "/" << (agree + disagree) << " (excluding Inconclusive)\n";
}

// Dispatch one experiment; module errors land on `err` with a nonzero status.
inline int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.kind) {
            case ExperimentKind::classify: run_classify(cfg, out); break;
            case ExperimentKind::orbit: run_orbit(cfg, out); break;
            case ExperimentKind::rate: run_rate(cfg, out); break;
            case ExperimentKind::drift: run_drift(cfg, out); break;
            case ExperimentKind::suite: run_suite(cfg, out); break;
        }
        return 0;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace parashift
