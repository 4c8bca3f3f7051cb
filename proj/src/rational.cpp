#include "polypack/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace polypack {

namespace {

BigInt parse_digits(std::string_view digits) {
    if (digits.empty()) {
        throw std::invalid_argument("empty number");
    }
    BigInt value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("bad digit in number: " + std::string(digits));
        }
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt den = parse_digits(text.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator");
        }
        result = Rational(parse_digits(text.substr(0, slash)), den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) {
            throw std::invalid_argument("bad decimal");
        }
        BigInt num = whole.empty() ? BigInt(0) : parse_digits(whole);
        BigInt den = 1;
        for (char c : frac) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw std::invalid_argument("bad decimal: " + std::string(text));
            }
            num = num * 10 + (c - '0');
            den *= 10;
        }
        result = Rational(num, den);
    } else {
        result = Rational(parse_digits(text));
    }
    return negative ? Rational(-result) : result;
}

BigInt floor_of(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num % den != 0 && num < 0) {
        q -= 1;
    }
    return q;
}

BigInt round_half_up(const Rational& r) {
    return floor_of(r + Rational(1, 2));
}

std::string to_exact_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) {
        return boost::multiprecision::numerator(r).str();
    }
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

std::string to_fixed_string(const Rational& r, int places) {
    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    BigInt scaled = round_half_up(r * scale);
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits = scaled.str();
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places)) {
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    return negative ? "-" + digits : digits;
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace polypack
