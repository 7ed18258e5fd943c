#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace opent {

// Closed-by-default real interval. Open endpoints mark singular boundaries
// (e.g. log at 0). An infinite endpoint is always treated as open.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = false;
    bool hi_open = false;

    constexpr Interval() = default;
    constexpr Interval(double l, double h, bool lopen = false, bool hopen = false)
        : lo(l), hi(h), lo_open(lopen), hi_open(hopen) {}

    static constexpr Interval all() { return {}; }
    static constexpr Interval positive() {
        return {0.0, std::numeric_limits<double>::infinity(), true, true};
    }
    static constexpr Interval nonnegative() {
        return {0.0, std::numeric_limits<double>::infinity(), false, true};
    }
    static constexpr Interval closed(double l, double h) { return {l, h}; }

    bool contains(double t) const {
        if (std::isnan(t)) return false;
        if (lo_open ? !(t > lo) : !(t >= lo)) return false;
        if (hi_open ? !(t < hi) : !(t <= hi)) return false;
        return true;
    }

    // Superset test: every point of `other` lies in *this.
    bool contains(const Interval& other) const {
        bool lo_ok = other.lo > lo || (other.lo == lo && (!lo_open || other.lo_open));
        bool hi_ok = other.hi < hi || (other.hi == hi && (!hi_open || other.hi_open));
        return lo_ok && hi_ok;
    }

    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

    std::string to_string() const {
        std::ostringstream os;
        os << (lo_open ? '(' : '[') << lo << ", " << hi << (hi_open ? ')' : ']');
        return os.str();
    }
};

}  // namespace opent
