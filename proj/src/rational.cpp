#include "seqig/rational.hpp"

#include <cctype>

#include "seqig/errors.hpp"

namespace seqig {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw InputError("empty rational literal: '" + std::string(text) + "'");

    Rat value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw InputError("malformed rational literal: '" + std::string(text) + "'");
        Int d{std::string(den)};
        if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        value = Rat(Int(std::string(num)), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
            throw InputError("malformed decimal literal: '" + std::string(text) + "'");
        Int scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Int digits = Int(std::string(whole)) * scale + (frac.empty() ? Int(0) : Int(std::string(frac)));
        value = Rat(digits, scale);
    } else {
        if (!all_digits(s)) throw InputError("malformed number: '" + std::string(text) + "'");
        value = Rat(Int(std::string(s)));
    }
    return negative ? Rat(-value) : value;
}

std::string fraction_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string decimal_string(const Rat& r, int significant_digits) {
    if (r == 0) return "0";
    Int num = numerator(r), den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;

    // Scale so the integer part carries `significant_digits` digits of num/den.
    int shift = 0;
    Int n = num, d = den;
    while (n < d) { n *= 10; ++shift; }            // now n/d >= 1
    for (int i = 1; i < significant_digits; ++i) n *= 10;
    Int q = n / d;
    Int rem = n % d;
    if (rem * 2 >= d) ++q;                          // round half up
    std::string digits = q.str();

    // value = digits * 10^-(significant_digits - 1 + shift); rounding overflow
    // (999.5 -> 1000) just lengthens the digit string, the exponent stands.
    int frac_digits = significant_digits - 1 + shift;
    std::string out;
    if (frac_digits <= 0) {
        out = digits + std::string(-frac_digits, '0');
    } else if (frac_digits >= static_cast<int>(digits.size())) {
        out = "0." + std::string(frac_digits - digits.size(), '0') + digits;
    } else {
        out = digits.substr(0, digits.size() - frac_digits) + "." +
              digits.substr(digits.size() - frac_digits);
    }
    // Trim trailing zeros after a decimal point.
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return neg ? "-" + out : out;
}

}  // namespace seqig
