#include "twahss/exact_linalg/scalars.hpp"

#include "twahss/errors.hpp"

#include <ostream>
#include <sstream>

namespace twahss {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

Integer mod_nonneg(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0)
        r += m;
    return r;
}

Rational frac(const Rational& q)
{
    Integer n = numerator(q), d = denominator(q);
    return Rational(mod_nonneg(n, d), d);
}

Rational parse_rational(const std::string& s)
{
    if (s.empty())
        throw ParseError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Integer(s));
        Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0)
            throw ParseError("zero denominator in '" + s + "'");
        return Rational(n, d);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const ParseError*>(&e))
            throw;
        throw ParseError("bad rational literal '" + s + "'");
    }
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

FieldScalar FieldScalar::inverse() const
{
    Rational n = norm();
    if (n == 0)
        throw std::domain_error("division by zero in Q(sqrt2)");
    return FieldScalar(a_ / n, -b_ / n);
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& o)
{
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o)
{
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o)
{
    if (b_ == 0 && o.b_ == 0) {
        a_ *= o.a_;
        return *this;
    }
    Rational na = a_ * o.a_ + 2 * b_ * o.b_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = na;
    b_ = nb;
    return *this;
}

FieldScalar& FieldScalar::operator/=(const FieldScalar& o)
{
    if (o.b_ == 0) {
        if (o.a_ == 0)
            throw std::domain_error("division by zero in Q(sqrt2)");
        a_ /= o.a_;
        b_ /= o.a_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string FieldScalar::str() const
{
    if (b_ == 0)
        return to_string(a_);
    std::string irr = (b_ == 1) ? "sqrt2" : (b_ == -1 ? "-sqrt2" : to_string(b_) + "*sqrt2");
    if (a_ == 0)
        return irr;
    if (b_ < 0)
        return to_string(a_) + irr;
    return to_string(a_) + "+" + irr;
}

std::ostream& operator<<(std::ostream& os, const FieldScalar& x) { return os << x.str(); }

}  // namespace twahss
