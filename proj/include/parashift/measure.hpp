#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "parashift/errors.hpp"
#include "parashift/extended_real.hpp"
#include "parashift/quadrature.hpp"

namespace parashift {

// Point mass: mass > 0 at a finite position.
struct Atom {
    double t = 0.0;
    double mass = 0.0;
};

// Uniform density `height` on [a, b].
struct HistogramPiece {
    double a = 0.0;
    double b = 0.0;
    double height = 0.0;
};

enum class TailSide { positive, negative };

// Density c * |t|^(-p) on [t0, +inf) or (-inf, -t0]. p > 1 keeps the total
// mass finite; the absolute and square moments diverge for p <= 2 and p <= 3.
struct PowerTail {
    TailSide side = TailSide::positive;
    double t0 = 1.0;
    double c = 0.0;
    double p = 2.0;
};

inline void validate(const Atom& a) {
    if (!std::isfinite(a.t)) throw ValidationError("atom position must be finite");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass))
        throw ValidationError("atom mass must be positive and finite");
}

inline void validate(const HistogramPiece& p) {
    if (!std::isfinite(p.a) || !std::isfinite(p.b) || !(p.a < p.b))
        throw ValidationError("histogram piece requires finite a < b");
    if (!(p.height > 0.0) || !std::isfinite(p.height))
        throw ValidationError("histogram height must be positive and finite");
}

inline void validate(const PowerTail& t) {
    if (!(t.t0 > 0.0) || !std::isfinite(t.t0))
        throw ValidationError("tail cutoff t0 must be positive and finite");
    if (!(t.c > 0.0) || !std::isfinite(t.c))
        throw ValidationError("tail coefficient must be positive and finite");
    if (!(t.p > 1.0) || !std::isfinite(t.p))
        throw ValidationError("tail exponent must satisfy p > 1");
}

// Finite positive measure on the real line: atoms + histogram pieces +
// one-sided power tails. Closed-form moments for every component; immutable
// in spirit (build once, then treat as read-only).
class RealMeasure {
public:
    RealMeasure() = default;
    RealMeasure(std::vector<Atom> atoms, std::vector<HistogramPiece> pieces,
                std::vector<PowerTail> tails)
        : atoms_(std::move(atoms)), pieces_(std::move(pieces)), tails_(std::move(tails)) {
        for (const auto& a : atoms_) validate(a);
        for (const auto& p : pieces_) validate(p);
        for (const auto& t : tails_) validate(t);
    }

    void add(const Atom& a) {
        validate(a);
        atoms_.push_back(a);
    }
    void add(const HistogramPiece& p) {
        validate(p);
        pieces_.push_back(p);
    }
    void add(const PowerTail& t) {
        validate(t);
        tails_.push_back(t);
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<HistogramPiece>& pieces() const { return pieces_; }
    const std::vector<PowerTail>& tails() const { return tails_; }

    bool empty() const { return atoms_.empty() && pieces_.empty() && tails_.empty(); }

private:
    std::vector<Atom> atoms_;
    std::vector<HistogramPiece> pieces_;
    std::vector<PowerTail> tails_;
};

inline double tail_mass(const PowerTail& t) { return t.c * std::pow(t.t0, 1.0 - t.p) / (t.p - 1.0); }

inline double total_mass(const RealMeasure& m) {
    double sum = 0.0;
    for (const auto& a : m.atoms()) sum += a.mass;
    for (const auto& p : m.pieces()) sum += p.height * (p.b - p.a);
    for (const auto& t : m.tails()) sum += tail_mass(t);
    return sum;
}

enum class MomentKind { abs_neg, abs_pos, first, sq_neg, sq_pos };

namespace detail {

// One-sided absolute moment int |t| dmu over (-inf,0) or (0,+inf).
inline ExtendedReal abs_moment(const RealMeasure& m, bool positive_side) {
    ExtendedReal sum = ExtendedReal::finite(0.0);
    for (const auto& a : m.atoms()) {
        if (positive_side ? a.t > 0.0 : a.t < 0.0)
            sum += ExtendedReal::finite(a.mass * std::fabs(a.t));
    }
    for (const auto& p : m.pieces()) {
        if (positive_side) {
            const double lo = std::max(p.a, 0.0);
            if (p.b > lo) sum += ExtendedReal::finite(p.height * (p.b * p.b - lo * lo) / 2.0);
        } else {
            const double hi = std::min(p.b, 0.0);
            if (p.a < hi) sum += ExtendedReal::finite(p.height * (p.a * p.a - hi * hi) / 2.0);
        }
    }
    for (const auto& t : m.tails()) {
        const bool on_side = (t.side == TailSide::positive) == positive_side;
        if (!on_side) continue;
        if (t.p > 2.0)
            sum += ExtendedReal::finite(t.c * std::pow(t.t0, 2.0 - t.p) / (t.p - 2.0));
        else
            sum += ExtendedReal::infinity();
    }
    return sum;
}

// One-sided square moment int t^2 dmu over (-inf,0) or (0,+inf).
inline ExtendedReal square_moment(const RealMeasure& m, bool positive_side) {
    ExtendedReal sum = ExtendedReal::finite(0.0);
    for (const auto& a : m.atoms()) {
        if (positive_side ? a.t > 0.0 : a.t < 0.0) sum += ExtendedReal::finite(a.mass * a.t * a.t);
    }
    for (const auto& p : m.pieces()) {
        if (positive_side) {
            const double lo = std::max(p.a, 0.0);
            if (p.b > lo) sum += ExtendedReal::finite(p.height * (p.b * p.b * p.b - lo * lo * lo) / 3.0);
        } else {
            const double hi = std::min(p.b, 0.0);
            if (p.a < hi) sum += ExtendedReal::finite(p.height * (hi * hi * hi - p.a * p.a * p.a) / 3.0);
        }
    }
    for (const auto& t : m.tails()) {
        const bool on_side = (t.side == TailSide::positive) == positive_side;
        if (!on_side) continue;
        if (t.p > 3.0)
            sum += ExtendedReal::finite(t.c * std::pow(t.t0, 3.0 - t.p) / (t.p - 3.0));
        else
            sum += ExtendedReal::infinity();
    }
    return sum;
}

}  // namespace detail

// Closed-form moments; never touches the quadrature, so the classifier stays
// exact on representable measures. `first` on a measure with a divergent
// absolute moment throws UndefinedMoment.
inline ExtendedReal moment(const RealMeasure& m, MomentKind kind) {
    switch (kind) {
        case MomentKind::abs_neg:
            return detail::abs_moment(m, false);
        case MomentKind::abs_pos:
            return detail::abs_moment(m, true);
        case MomentKind::sq_neg:
            return detail::square_moment(m, false);
        case MomentKind::sq_pos:
            return detail::square_moment(m, true);
        case MomentKind::first: {
            const ExtendedReal neg = detail::abs_moment(m, false);
            const ExtendedReal pos = detail::abs_moment(m, true);
            if (neg.is_infinite() || pos.is_infinite())
                throw UndefinedMoment("first moment requested but int |t| dmu diverges");
            double sum = 0.0;
            for (const auto& a : m.atoms()) sum += a.mass * a.t;
            for (const auto& p : m.pieces()) sum += p.height * (p.b * p.b - p.a * p.a) / 2.0;
            for (const auto& t : m.tails()) {
                const double abs_part = t.c * std::pow(t.t0, 2.0 - t.p) / (t.p - 2.0);
                sum += (t.side == TailSide::positive) ? abs_part : -abs_part;
            }
            return ExtendedReal::finite(sum);
        }
    }
    throw DomainError("unknown moment kind");
}

struct KernelIntegrationOptions {
    QuadratureOptions quad;
    // Kernel feature locations (e.g. the real part of the evaluation point).
    // Panels are split there before refinement.
    std::vector<double> split_points;
    // Rough magnitude of the kernel's feature region; pushes the far-zone
    // cutoff of tail integration past it.
    double scale_radius = 0.0;
};

namespace detail {

inline std::vector<double> panel_edges(double a, double b, const std::vector<double>& splits) {
    std::vector<double> edges{a, b};
    for (double s : splits)
        if (s > a && s < b) edges.push_back(s);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

// Integral of c*s^(-p)*k(sign*s) over [cutoff, +inf) via the substitution
// v = (s/cutoff)^(1-p), which maps to (0,1], absorbs the density exactly and
// keeps bounded kernels bounded:
//   int = c*cutoff^(1-p)/(p-1) * int_0^1 k(sign * cutoff * v^(-1/(p-1))) dv.
template <class K>
std::complex<double> far_tail_integral(const K& k, double sign, double cutoff, double c, double p,
                                       const QuadratureOptions& quad) {
    const double inv_exp = 1.0 / (p - 1.0);
    auto transformed = [&](double v) {
        double s = cutoff * std::pow(v, -inv_exp);
        if (!(s < 1e100)) s = 1e100;  // kernel values saturate long before this
        return k(sign * s);
    };
    // The 1/s expansion of k at infinity turns into fractional powers
    // v^(j/(p-1)) at v = 0, where plain bisection refines too slowly to meet a
    // tight tolerance. A geometric grading toward 0 restores fast convergence:
    // each graded panel keeps the endpoint at a fixed relative distance, so
    // the integrand is analytic on it. The leftover [0, 4^-30] panel
    // contributes below 1e-18 of the total.
    std::vector<double> edges;
    edges.push_back(0.0);
    for (double h = std::pow(4.0, -30); h < 1.0; h *= 4.0) edges.push_back(h);
    edges.push_back(1.0);
    const double weight = c * std::pow(cutoff, 1.0 - p) / (p - 1.0);
    return weight * integrate_adaptive(transformed, edges, quad);
}

template <class K>
std::complex<double> tail_integral(const K& k, const PowerTail& t,
                                   const KernelIntegrationOptions& opts) {
    const double sign = (t.side == TailSide::positive) ? 1.0 : -1.0;
    // Near zone in t-space up to a cutoff beyond the kernel's feature region,
    // far zone by substitution. The near zone is skipped when the cutoff
    // collapses onto t0.
    const double cutoff = std::max(4.0 * t.t0, 2.0 * opts.scale_radius + 4.0);
    std::complex<double> near = 0.0;
    if (cutoff > t.t0) {
        std::vector<double> splits;
        for (double s : opts.split_points) {
            const double mapped = sign * s;  // feature position in s-space
            if (mapped > t.t0 && mapped < cutoff) splits.push_back(mapped);
        }
        auto near_integrand = [&](double s) { return t.c * std::pow(s, -t.p) * k(sign * s); };
        near = integrate_adaptive(near_integrand, panel_edges(t.t0, cutoff, splits), opts.quad);
    }
    return near + far_tail_integral(k, sign, cutoff, t.c, t.p, opts.quad);
}

}  // namespace detail

// int k(t) dmu(t). Atoms are summed exactly; pieces and tails go through the
// adaptive quadrature. k must be continuous on supp(mu) with a finite limit
// along any tail.
template <class K>
std::complex<double> integrate_kernel(const RealMeasure& m, K&& k,
                                      const KernelIntegrationOptions& opts = {}) {
    std::complex<double> sum = 0.0;
    for (const auto& a : m.atoms()) sum += a.mass * k(a.t);
    for (const auto& p : m.pieces()) {
        auto integrand = [&](double t) { return p.height * k(t); };
        sum += integrate_adaptive(integrand, detail::panel_edges(p.a, p.b, opts.split_points),
                                  opts.quad);
    }
    for (const auto& t : m.tails()) sum += detail::tail_integral(k, t, opts);
    return sum;
}

}  // namespace parashift
