#include "xpl/rational.hpp"

#include <functional>
#include <stdexcept>

namespace xpl {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw std::invalid_argument("bad rational literal '" + s + "'");
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::string den = "1" + std::string(s.size() - dot - 1, '0');
        if (digits.empty() || digits == "-") throw std::invalid_argument("bad rational literal '" + s + "'");
        mpq_class q;
        if (q.get_num().set_str(digits, 10) != 0 || q.get_den().set_str(den, 10) != 0)
            throw std::invalid_argument("bad rational literal '" + s + "'");
        return Rational(q);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("bad rational literal '" + s + "'");
    return Rational(q);
}

std::string Rational::to_string() const { return v_.get_str(); }

Rational& Rational::operator+=(const Rational& o) { v_ += o.v_; return *this; }
Rational& Rational::operator-=(const Rational& o) { v_ -= o.v_; return *this; }
Rational& Rational::operator*=(const Rational& o) { v_ *= o.v_; return *this; }
Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    v_ /= o.v_;
    return *this;
}

std::size_t Rational::hash() const { return std::hash<std::string>{}(v_.get_str()); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace xpl
