#include "homdom/rational.hpp"

#include "homdom/error.hpp"

#include <cmath>

namespace homdom {

std::string to_string(const Rat& value)
{
    if (value.get_den() == 1) {
        return value.get_num().get_str();
    }
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

namespace {

bool valid_integer(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            return false;
        }
    }
    return true;
}

} // namespace

Rat parse_rat(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') {
        throw ParseError("malformed rational: '" + std::string(text) + "'");
    }
    std::string n(num[0] == '+' ? num.substr(1) : num);
    BigInt d{std::string(den)};
    if (d == 0) {
        throw ParseError("zero denominator: '" + std::string(text) + "'");
    }
    Rat r(BigInt(n), d);
    r.canonicalize();
    return r;
}

Rat make_rat(long num, long den)
{
    if (den == 0) {
        throw InvalidArgument("zero denominator");
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
}

BigInt pow(const BigInt& base, unsigned long exponent)
{
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Rat pow(const Rat& base, unsigned long exponent)
{
    Rat out(pow(base.get_num(), exponent), pow(base.get_den(), exponent));
    out.canonicalize();
    return out;
}

Rat pow_signed(const Rat& base, long exponent)
{
    if (exponent >= 0) {
        return pow(base, static_cast<unsigned long>(exponent));
    }
    if (base == 0) {
        throw InvalidArgument("zero raised to a negative power");
    }
    Rat inv = 1 / base;
    return pow(inv, static_cast<unsigned long>(-exponent));
}

BigInt ipow(long base, unsigned long exponent) { return pow(BigInt(base), exponent); }

double log_abs(const BigInt& value)
{
    if (value == 0) {
        return -INFINITY;
    }
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_rat(const Rat& value)
{
    if (value <= 0) {
        return value == 0 ? -INFINITY : NAN;
    }
    return log_abs(value.get_num()) - log_abs(value.get_den());
}

double to_double(const Rat& value) { return value.get_d(); }

bool is_integer(const Rat& value) { return value.get_den() == 1; }

BigInt floor_power(const BigInt& base, unsigned long num, unsigned long den)
{
    if (den == 0) {
        throw InvalidArgument("floor_power: zero root");
    }
    BigInt target = pow(base, num);
    BigInt root;
    mpz_root(root.get_mpz_t(), target.get_mpz_t(), den);
    return root;
}

} // namespace homdom
