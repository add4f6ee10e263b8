#pragma once

#include <compare>
#include <string>

#include "sgmc/graph.hpp"

namespace sgmc {

/// An exact count of quarter-edges. All beta/pt/k arithmetic is done on
/// values scaled by 4 so that comparisons against pt + k/4 stay integral.
struct QuarterValue {
    long long q = 0;

    friend auto operator<=>(const QuarterValue&, const QuarterValue&) = default;
    friend QuarterValue operator+(QuarterValue a, QuarterValue b) { return {a.q + b.q}; }
    friend QuarterValue operator-(QuarterValue a, QuarterValue b) { return {a.q - b.q}; }

    std::string to_string() const {
        if (q % 4 == 0) return std::to_string(q / 4);
        return std::to_string(q) + "/4";
    }
};

inline QuarterValue quarters(long long q) { return QuarterValue{q}; }
inline QuarterValue whole(long long units) { return QuarterValue{4 * units}; }

}  // namespace sgmc
