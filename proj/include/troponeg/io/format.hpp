#ifndef TROPONEG_IO_FORMAT_HPP
#define TROPONEG_IO_FORMAT_HPP

// Text renderings: expressions in the input grammar, CSV point clouds.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "troponeg/signomial.hpp"

namespace troponeg::io {

/// x1, x2, ... when no names are given.
inline std::vector<std::string> default_variables(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
    return v;
}

/// Expression that parses back to f under the same variable names.
inline std::string to_expression(const Signomial& f, const std::vector<std::string>& vars) {
    if (vars.size() != f.dimension()) throw DomainError("variable table does not match the dimension");
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        const Rational a = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            std::string fac = vars[i];
            if (e[i] != 1) fac += is_integer(e[i]) ? "^" + to_string(e[i]) : "^(" + to_string(e[i]) + ")";
            factors.push_back(std::move(fac));
        }
        if (factors.empty() || a != 1) factors.insert(factors.begin(), to_string(a));
        for (std::size_t k = 0; k < factors.size(); ++k) out += (k ? "*" : "") + factors[k];
    }
    return out;
}

/// Shortest round-trip decimal for a double.
inline std::string format_double(double x) {
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

/// Header y1..yn, one row per point.
inline std::string to_csv(const std::vector<std::vector<double>>& points, std::size_t n) {
    std::ostringstream os;
    for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << "y" << i + 1;
    os << "\n";
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << format_double(p[i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace troponeg::io

#endif  // TROPONEG_IO_FORMAT_HPP
