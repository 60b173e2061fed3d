#pragma once

#include <boost/rational.hpp>
#include <string>

namespace invsat {

// Exact rational exponents/valuations. The dense value group Q is the whole
// point of the bundled rings, so no floating point is allowed anywhere.
using Rat = boost::rational<long long>;

inline std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace invsat
