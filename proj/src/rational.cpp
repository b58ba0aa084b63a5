#include "fmdil/rational.hpp"

#include <charconv>

#include "fmdil/errors.hpp"

namespace fmdil {

double to_double(const Rational& r) {
    return boost::rational_cast<double>(r);
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view s) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw UsageError("invalid integer in rational: '" + std::string(s) + "'");
    return value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw UsageError("empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(parse_int(s));
        std::int64_t num = parse_int(trim(s.substr(0, slash)));
        std::int64_t den = parse_int(trim(s.substr(slash + 1)));
        if (den == 0) throw UsageError("zero denominator in rational: '" + std::string(text) + "'");
        return Rational(num, den);
    } catch (const boost::bad_rational&) {
        throw UsageError("invalid rational: '" + std::string(text) + "'");
    }
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    std::string s(text);
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        std::string_view item = std::string_view(s).substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!trim(item).empty()) out.push_back(parse_rational(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw UsageError("empty rational list: '" + s + "'");
    return out;
}

} // namespace fmdil
