#include "listrec/rational.hpp"

#include <cstdlib>

namespace listrec {

Rat parse_rational(const std::string& s) {
    require(!s.empty(), errc::config_invalid, "empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::int64_t n = std::strtoll(s.substr(0, slash).c_str(), nullptr, 10);
        std::int64_t d = std::strtoll(s.substr(slash + 1).c_str(), nullptr, 10);
        require(d != 0, errc::config_invalid, "rational with zero denominator: " + s);
        return Rat(n, d);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        require(frac_len <= 15, errc::config_invalid, "too many decimal places: " + s);
        std::int64_t n = std::strtoll(digits.c_str(), nullptr, 10);
        std::int64_t d = 1;
        for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
        return Rat(n, d);
    }
    return Rat(std::strtoll(s.c_str(), nullptr, 10));
}

}  // namespace listrec
