#include "tpmc/rational.hpp"

#include "tpmc/error.hpp"

#include <sstream>

namespace tpmc {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(text)) {
            throw ParseError("invalid rational literal: '" + text + "'");
        }
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) {
        throw ParseError("invalid rational literal: '" + text + "'");
    }
    BigInt d(den);
    if (d == 0) {
        throw ParseError("zero denominator in rational literal: '" + text + "'");
    }
    return Rational(BigInt(num), d);
}

std::string to_string(const Rational& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

Rational abs_sum(const std::vector<Rational>& values) {
    Rational total = 0;
    for (const auto& v : values) {
        total += (v < 0) ? Rational(-v) : v;
    }
    return total;
}

int compare_lex(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    if (a.size() < b.size()) return -1;
    if (a.size() > b.size()) return 1;
    return 0;
}

} // namespace tpmc
