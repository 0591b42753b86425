#pragma once

#include <optional>
#include <string>

#include "parashift/halfplane_map.hpp"
#include "parashift/measure.hpp"
#include "parashift/orbit.hpp"

namespace parashift {

// The five moments the finite-shift decision reads, all in closed form.
// `first` and `drift` are present exactly when both absolute moments are
// finite.
struct MomentReport {
    ExtendedReal abs_neg;
    ExtendedReal abs_pos;
    ExtendedReal sq_neg;
    ExtendedReal sq_pos;
    std::optional<double> first;
    std::optional<double> drift;
};

inline MomentReport moment_report(const ParabolicMap& map) {
    MomentReport r;
    r.abs_neg = moment(map.mu(), MomentKind::abs_neg);
    r.abs_pos = moment(map.mu(), MomentKind::abs_pos);
    r.sq_neg = moment(map.mu(), MomentKind::sq_neg);
    r.sq_pos = moment(map.mu(), MomentKind::sq_pos);
    if (r.abs_neg.is_finite() && r.abs_pos.is_finite()) {
        r.first = moment(map.mu(), MomentKind::first).value();
        r.drift = map.beta() - *r.first;
    }
    return r;
}

enum class ShiftKind { FiniteShiftCaseI, FiniteShiftCaseII, InfiniteShift };

inline const char* to_string(ShiftKind kind) {
    switch (kind) {
        case ShiftKind::FiniteShiftCaseI: return "FiniteShiftCaseI";
        case ShiftKind::FiniteShiftCaseII: return "FiniteShiftCaseII";
        case ShiftKind::InfiniteShift: return "InfiniteShift";
    }
    return "?";
}

struct ShiftVerdict {
    ShiftKind kind = ShiftKind::InfiniteShift;
    MomentReport report;

    bool finite_shift() const { return kind != ShiftKind::InfiniteShift; }
};

// Finite shift holds exactly in two moment regimes:
//   case I:  int_(-inf,0) |t| dmu < inf, int_(0,inf) t^2 dmu < inf, beta > int t dmu
//   case II: int_(-inf,0) t^2 dmu < inf, int_(0,inf) |t| dmu < inf, beta < int t dmu
// A divergent absolute moment or an exact tie beta = int t dmu falls through
// to infinite shift (the inequalities are strict).
inline ShiftVerdict classify_shift(const ParabolicMap& map) {
    ShiftVerdict verdict;
    verdict.report = moment_report(map);
    const MomentReport& r = verdict.report;
    if (r.first.has_value()) {
        if (r.abs_neg.is_finite() && r.sq_pos.is_finite() && map.beta() > *r.first)
            verdict.kind = ShiftKind::FiniteShiftCaseI;
        else if (r.sq_neg.is_finite() && r.abs_pos.is_finite() && map.beta() < *r.first)
            verdict.kind = ShiftKind::FiniteShiftCaseII;
    }
    return verdict;
}

enum class AgreementKind { Agree, Disagree, OracleInconclusive };

struct CrossValidation {
    AgreementKind agreement = AgreementKind::OracleInconclusive;
    ShiftVerdict verdict;
    ShiftOracleResult oracle;
};

// Analytic verdict against the orbit simulation.
inline CrossValidation cross_validate(const ParabolicMap& map, const HalfPlanePoint& z0,
                                      long horizon = 100000, double oracle_tolerance = 1e-2) {
    CrossValidation cv;
    cv.verdict = classify_shift(map);
    cv.oracle = shift_oracle(map, z0, horizon, oracle_tolerance);
    if (cv.oracle.kind == ShiftOracleKind::Inconclusive) {
        cv.agreement = AgreementKind::OracleInconclusive;
    } else {
        const bool oracle_bounded = cv.oracle.kind == ShiftOracleKind::BoundedShift;
        cv.agreement = (cv.verdict.finite_shift() == oracle_bounded) ? AgreementKind::Agree
                                                                     : AgreementKind::Disagree;
    }
    return cv;
}

inline const char* to_string(AgreementKind kind) {
    switch (kind) {
        case AgreementKind::Agree: return "Agree";
        case AgreementKind::Disagree: return "Disagree";
        case AgreementKind::OracleInconclusive: return "OracleInconclusive";
    }
    return "?";
}

inline const char* to_string(ShiftOracleKind kind) {
    switch (kind) {
        case ShiftOracleKind::BoundedShift: return "BoundedShift";
        case ShiftOracleKind::UnboundedShift: return "UnboundedShift";
        case ShiftOracleKind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

}  // namespace parashift
