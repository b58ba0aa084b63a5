#pragma once

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fmdil {

using Complex = std::complex<double>;

// Times and breakpoints are exact rationals so that interval splits never
// round; only vector data is floating point.
using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r);
std::string to_string(const Rational& r);

// Accepts "p", "-p" or "p/q". Throws UsageError otherwise.
Rational parse_rational(std::string_view text);

// Comma-separated list, e.g. "0,1/4,1/2,1".
std::vector<Rational> parse_rational_list(std::string_view text);

} // namespace fmdil
