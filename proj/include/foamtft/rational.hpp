#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace foamtft {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Serializes as "p/q" with q > 0 and gcd(p,q) = 1 (cpp_rational keeps
/// the canonical form internally).
inline std::string rat_str(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p/q" or a bare integer "p".
inline std::optional<Rat> rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) return std::nullopt;
        return Rat(p, q);
    } catch (...) {
        return std::nullopt;
    }
}

}  // namespace foamtft
