#include "pamlab/rational.hpp"

#include "pamlab/errors.hpp"

#include <cctype>
#include <limits>

namespace pamlab {

namespace {

__int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(__int128 v)
{
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den)
{
    if (den == 0) throw ConfigError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits64(num) || !fits64(den)) throw ConfigError("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational Rational::parse(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ConfigError("empty rational");

    auto parse_int = [&](const std::string& part) -> __int128 {
        std::size_t pos = 0;
        bool neg = false;
        if (pos < part.size() && (part[pos] == '+' || part[pos] == '-')) neg = part[pos++] == '-';
        if (pos == part.size()) throw ConfigError("malformed rational '" + text + "'");
        __int128 v = 0;
        for (; pos < part.size(); ++pos) {
            if (!std::isdigit(static_cast<unsigned char>(part[pos])))
                throw ConfigError("malformed rational '" + text + "'");
            v = v * 10 + (part[pos] - '0');
            if (v > std::numeric_limits<std::int64_t>::max()) throw ConfigError("rational overflow");
        }
        return neg ? -v : v;
    };

    auto slash = s.find('/');
    if (slash != std::string::npos) return from_wide(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));

    auto dot = s.find('.');
    if (dot == std::string::npos) return from_wide(parse_int(s), 1);

    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.size() > 17) throw ConfigError("too many decimals in '" + text + "'");
    __int128 den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    __int128 w = parse_int(whole);
    __int128 f = frac.empty() ? 0 : parse_int(frac);
    if (f < 0) throw ConfigError("malformed rational '" + text + "'");
    __int128 num = (w < 0 ? -w : w) * den + f;
    return from_wide(neg ? -num : num, den);
}

std::string Rational::str() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b)
{
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b)
{
    return a + (-b);
}

Rational operator*(const Rational& a, const Rational& b)
{
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0) throw ConfigError("rational division by zero");
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace pamlab
