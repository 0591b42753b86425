#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "parashift/errors.hpp"

namespace parashift {

// Real number extended with +inf. Infinity is an explicit flag, not a
// floating-point overflow value, so finiteness tests in the classifier are
// exact.
class ExtendedReal {
public:
    ExtendedReal() : value_(0.0), infinite_(false) {}

    static ExtendedReal finite(double v) {
        if (!std::isfinite(v)) throw DomainError("ExtendedReal::finite requires a finite value");
        ExtendedReal r;
        r.value_ = v;
        return r;
    }

    static ExtendedReal infinity() {
        ExtendedReal r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    // Finite value; calling this on infinity is a caller bug.
    double value() const {
        if (infinite_) throw DomainError("value() called on an infinite ExtendedReal");
        return value_;
    }

    ExtendedReal& operator+=(const ExtendedReal& o) {
        if (o.infinite_) infinite_ = true;
        if (!infinite_) value_ += o.value_;
        return *this;
    }

    friend ExtendedReal operator+(ExtendedReal a, const ExtendedReal& b) { return a += b; }

    ExtendedReal scaled(double factor) const {
        if (factor < 0.0) throw DomainError("ExtendedReal::scaled requires a nonnegative factor");
        if (infinite_) return factor == 0.0 ? finite(0.0) : infinity();
        return finite(value_ * factor);
    }

    std::string str() const {
        if (infinite_) return "inf";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", value_);
        return buf;
    }

private:
    double value_;
    bool infinite_;
};

}  // namespace parashift
