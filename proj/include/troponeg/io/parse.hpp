#ifndef TROPONEG_IO_PARSE_HPP
#define TROPONEG_IO_PARSE_HPP

// Text input: ASCII expressions such as "x1^2 - x1 + 1 - x2^2" (one
// signomial per line or ';'-separated) and the JSON signomial schema.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "troponeg/signomial.hpp"

namespace troponeg::io {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// Signomials over a shared, ordered variable table.
struct SignomialSystem {
    std::vector<std::string> variables;
    std::vector<Signomial> signomials;
};

/// "x2" < "x10": digit runs compare numerically.
inline bool natural_less(std::string_view a, std::string_view b) {
    auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    auto run_end = [&](std::string_view s, std::size_t k) {
        while (k < s.size() && digit(s[k])) ++k;
        return k;
    };
    auto trimmed = [](std::string_view s) {
        const auto k = s.find_first_not_of('0');
        return k == std::string_view::npos ? std::string_view{} : s.substr(k);
    };
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (digit(a[i]) && digit(b[j])) {
            const std::size_t i2 = run_end(a, i), j2 = run_end(b, j);
            const auto ta = trimmed(a.substr(i, i2 - i)), tb = trimmed(b.substr(j, j2 - j));
            if (ta.size() != tb.size()) return ta.size() < tb.size();
            if (ta != tb) return ta < tb;
            i = i2;
            j = j2;
            continue;
        }
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
    }
    return a.size() - i < b.size() - j;
}

namespace detail {

/// Sparse signomial over variable names, used while parsing.
using NamedExponent = std::map<std::string, Rational>;
using NamedSignomial = std::map<NamedExponent, Rational>;

inline void add_into(NamedSignomial& acc, const NamedSignomial& s, const Rational& factor) {
    for (const auto& [e, c] : s) {
        Rational& slot = acc[e];
        slot += factor * c;
        if (slot == 0) acc.erase(e);
    }
}

inline NamedSignomial multiply(const NamedSignomial& a, const NamedSignomial& b) {
    NamedSignomial out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            NamedExponent e = ea;
            for (const auto& [v, p] : eb) {
                Rational& slot = e[v];
                slot += p;
                if (slot == 0) e.erase(v);
            }
            Rational& slot = out[e];
            slot += ca * cb;
            if (slot == 0) out.erase(e);
        }
    return out;
}

inline NamedSignomial constant(const Rational& c) {
    NamedSignomial s;
    if (c != 0) s[NamedExponent{}] = c;
    return s;
}

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, std::size_t line, std::size_t column0)
        : text_(text), line_(line), column0_(column0) {}

    NamedSignomial parse() {
        skip_space();
        NamedSignomial s = sum();
        skip_space();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line_, column0_ + pos_ + 1);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    NamedSignomial sum() {
        NamedSignomial acc;
        Rational sign = 1;
        if (accept('-')) sign = -1;
        else accept('+');
        add_into(acc, product(), sign);
        while (true) {
            if (accept('+')) add_into(acc, product(), 1);
            else if (accept('-')) add_into(acc, product(), -1);
            else break;
        }
        return acc;
    }

    bool starts_factor() {
        skip_space();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '(';
    }

    NamedSignomial product() {
        NamedSignomial acc = power();
        while (true) {
            if (accept('*')) {
                acc = multiply(acc, power());
            } else if (peek('/')) {
                const std::size_t at = pos_;
                ++pos_;
                const NamedSignomial d = power();
                if (d.size() != 1 || !d.begin()->first.empty()) {
                    pos_ = at;
                    fail("division is only supported by numeric constants");
                }
                acc = multiply(acc, constant(1 / d.begin()->second));
            } else if (starts_factor()) {
                acc = multiply(acc, power());  // implicit product
            } else {
                return acc;
            }
        }
    }

    NamedSignomial power() {
        NamedSignomial base = atom();
        if (!accept('^')) return base;
        const std::size_t at = pos_;
        const Rational e = exponent();
        if (base.size() == 1 && base.begin()->second == 1) {
            NamedExponent mono = base.begin()->first;
            for (auto& [v, p] : mono) p *= e;
            NamedSignomial out;
            out[mono] = 1;
            return out;
        }
        if (base.size() == 1 && base.begin()->first.empty()) {
            auto value = exact_pow(base.begin()->second > 0 ? base.begin()->second : Rational(1), e);
            if (base.begin()->second > 0 && value) return constant(*value);
            if (is_integer(e) && e >= 0) {
                // fall through to repeated multiplication below
            } else {
                pos_ = at;
                fail("constant power is not rational");
            }
        }
        if (!is_integer(e) || e < 0) {
            pos_ = at;
            fail("only non-negative integer powers of sums are supported");
        }
        if (e > 64) {
            pos_ = at;
            fail("power too large");
        }
        NamedSignomial out = constant(1);
        for (long k = 0; k < e.convert_to<long>(); ++k) out = multiply(out, base);
        return out;
    }

    Rational exponent() {
        if (accept('(')) {
            Rational sign = 1;
            if (accept('-')) sign = -1;
            else accept('+');
            Rational r = number();
            if (accept('/')) {
                const std::size_t at = pos_;
                const Rational d = number();
                if (d == 0) {
                    pos_ = at;
                    fail("zero denominator");
                }
                r /= d;
            }
            if (!accept(')')) fail("expected ')'");
            return sign * r;
        }
        Rational sign = 1;
        if (accept('-')) sign = -1;
        else accept('+');
        return sign * number();
    }

    Rational number() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E') && pos_ > start) {
            std::size_t k = pos_ + 1;
            if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
            if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) {
                pos_ = k;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        if (pos_ == start) fail("expected a number");
        try {
            return parse_rational(text_.substr(start, pos_ - start));
        } catch (const DomainError& e) {
            pos_ = start;
            fail(e.what());
        }
    }

    NamedSignomial atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NamedSignomial inner = sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            // A name is letters followed by digits, so "x1x2" reads as x1 * x2.
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            NamedSignomial s;
            s[NamedExponent{{std::string(text_.substr(start, pos_ - start)), Rational(1)}}] = 1;
            return s;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t line_, column0_;
    std::size_t pos_ = 0;
};

inline SignomialSystem assemble(const std::vector<NamedSignomial>& named, std::vector<std::string> variables) {
    if (variables.empty()) {
        std::set<std::string> seen;
        for (const auto& s : named)
            for (const auto& [e, c] : s)
                for (const auto& [v, p] : e) seen.insert(v);
        variables.assign(seen.begin(), seen.end());
        std::sort(variables.begin(), variables.end(), [](const std::string& a, const std::string& b) {
            return natural_less(a, b);
        });
        if (variables.empty()) variables.push_back("x1");
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < variables.size(); ++i) index[variables[i]] = i;
    SignomialSystem out;
    out.variables = variables;
    for (const auto& s : named) {
        Signomial f(variables.size());
        for (const auto& [e, c] : s) {
            ExponentVector ev(variables.size(), Rational(0));
            for (const auto& [v, p] : e) {
                auto it = index.find(v);
                if (it == index.end()) throw DomainError("undeclared variable '" + v + "'");
                ev[it->second] = p;
            }
            f.add_term(ev, c);
        }
        out.signomials.push_back(std::move(f));
    }
    return out;
}

inline Rational json_rational(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw DomainError("rationals must be given as strings or integers");
}

inline NamedSignomial named_from_json(const nlohmann::json& j, const std::vector<std::string>& vars) {
    if (!j.is_object() || !j.contains("terms")) throw DomainError("signomial JSON needs a \"terms\" array");
    NamedSignomial s;
    for (const auto& t : j.at("terms")) {
        if (!t.contains("c") || !t.contains("e")) throw DomainError("each term needs \"c\" and \"e\"");
        const auto& e = t.at("e");
        if (!e.is_array() || e.size() != vars.size()) throw DomainError("exponent length does not match \"vars\"");
        NamedExponent ne;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const Rational p = json_rational(e[i]);
            if (p != 0) ne[vars[i]] = p;
        }
        NamedSignomial term;
        term[ne] = json_rational(t.at("c"));
        add_into(s, term, 1);
    }
    return s;
}

inline std::vector<std::string> json_vars(const nlohmann::json& j) {
    if (!j.contains("vars")) throw DomainError("signomial JSON needs \"vars\"");
    auto vars = j.at("vars").get<std::vector<std::string>>();
    std::set<std::string> unique(vars.begin(), vars.end());
    if (unique.size() != vars.size() || vars.empty()) throw DomainError("\"vars\" must be nonempty and distinct");
    return vars;
}

}  // namespace detail

/// One or more expressions, separated by newlines or ';'; '#' starts a
/// comment. Variables are ordered naturally (x2 before x10) unless given.
inline SignomialSystem parse_expressions(std::string_view text, std::vector<std::string> variables = {}) {
    std::vector<detail::NamedSignomial> named;
    std::size_t line = 1, line_start = 0;
    std::size_t piece_start = 0;
    auto flush = [&](std::size_t end) {
        std::string_view piece = text.substr(piece_start, end - piece_start);
        if (auto hash = piece.find('#'); hash != std::string_view::npos) piece = piece.substr(0, hash);
        if (piece.find_first_not_of(" \t\r") != std::string_view::npos)
            named.push_back(detail::ExpressionParser(piece, line, piece_start - line_start).parse());
    };
    bool comment = false;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] == '#') comment = true;
        if (i == text.size() || text[i] == '\n' || (text[i] == ';' && !comment)) {
            flush(i);
            piece_start = i + 1;
            if (i < text.size() && text[i] == '\n') {
                ++line;
                line_start = i + 1;
                comment = false;
            }
        }
    }
    if (named.empty()) throw ParseError("no signomial given", line, 1);
    return detail::assemble(named, std::move(variables));
}

inline Signomial parse_signomial(std::string_view text, std::vector<std::string> variables = {}) {
    SignomialSystem s = parse_expressions(text, std::move(variables));
    if (s.signomials.size() != 1) throw DomainError("expected exactly one signomial");
    return s.signomials.front();
}

/// Accepts a single signomial object, {"signomials": [...]}, or an array of
/// signomial objects; all must declare the same variables.
inline SignomialSystem parse_json(const nlohmann::json& j) {
    std::vector<nlohmann::json> items;
    if (j.is_array()) items.assign(j.begin(), j.end());
    else if (j.is_object() && j.contains("signomials")) items.assign(j.at("signomials").begin(), j.at("signomials").end());
    else items.push_back(j);
    if (items.empty()) throw DomainError("no signomial given");
    const std::vector<std::string> vars = detail::json_vars(items.front());
    std::vector<detail::NamedSignomial> named;
    for (const auto& item : items) {
        if (detail::json_vars(item) != vars) throw DomainError("inconsistent variable sets across the system");
        named.push_back(detail::named_from_json(item, vars));
    }
    return detail::assemble(named, vars);
}

/// JSON when the first non-blank character opens an object or array.
inline SignomialSystem parse_input(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (text[first] == '{' || text[first] == '[')) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            // nlohmann reports a byte offset; convert it to line and column.
            std::size_t line = 1, col = 1;
            for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
                if (text[i] == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            throw ParseError("invalid JSON", line, col);
        }
        return parse_json(j);
    }
    return parse_expressions(text);
}

}  // namespace troponeg::io

#endif  // TROPONEG_IO_PARSE_HPP
