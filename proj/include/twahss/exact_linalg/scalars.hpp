#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace twahss {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

Integer floor_div(const Integer& a, const Integer& b);
Integer mod_nonneg(const Integer& a, const Integer& m);  // m > 0
Rational frac(const Rational& q);                        // q - floor(q), in [0,1)
Rational parse_rational(const std::string& s);           // "3", "-2/7"
std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

// a + b*sqrt(2)
class FieldScalar
{
  public:
    FieldScalar() = default;
    FieldScalar(long n) : a_(n) {}
    FieldScalar(const Integer& n) : a_(n) {}
    FieldScalar(const Rational& a) : a_(a) {}
    FieldScalar(const Rational& a, const Rational& b) : a_(a), b_(b) {}

    static FieldScalar sqrt2() { return FieldScalar(Rational(0), Rational(1)); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    FieldScalar rational_part() const { return FieldScalar(a_); }
    FieldScalar irrational_part() const { return FieldScalar(Rational(0), b_); }
    Rational norm() const { return a_ * a_ - 2 * b_ * b_; }
    FieldScalar conjugate() const { return FieldScalar(a_, -b_); }
    FieldScalar inverse() const;

    FieldScalar operator-() const { return FieldScalar(-a_, -b_); }
    FieldScalar& operator+=(const FieldScalar& o);
    FieldScalar& operator-=(const FieldScalar& o);
    FieldScalar& operator*=(const FieldScalar& o);
    FieldScalar& operator/=(const FieldScalar& o);

    friend FieldScalar operator+(FieldScalar x, const FieldScalar& y) { return x += y; }
    friend FieldScalar operator-(FieldScalar x, const FieldScalar& y) { return x -= y; }
    friend FieldScalar operator*(FieldScalar x, const FieldScalar& y) { return x *= y; }
    friend FieldScalar operator/(FieldScalar x, const FieldScalar& y) { return x /= y; }
    friend bool operator==(const FieldScalar& x, const FieldScalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const FieldScalar& x, const FieldScalar& y) { return !(x == y); }
    // lexicographic on (a, b); only used for deterministic ordering
    friend bool operator<(const FieldScalar& x, const FieldScalar& y)
    {
        return x.a_ < y.a_ || (x.a_ == y.a_ && x.b_ < y.b_);
    }

    std::string str() const;

  private:
    Rational a_{0};
    Rational b_{0};
};

std::ostream& operator<<(std::ostream& os, const FieldScalar& x);

// Element of Q/Z, stored as its representative in [0,1).
class TorusScalar
{
  public:
    TorusScalar() = default;
    explicit TorusScalar(const Rational& q) : v_(frac(q)) {}

    const Rational& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    Integer order() const { return boost::multiprecision::denominator(v_); }

    TorusScalar operator-() const { return TorusScalar(-v_); }
    TorusScalar& operator+=(const TorusScalar& o)
    {
        v_ = frac(v_ + o.v_);
        return *this;
    }
    TorusScalar& operator-=(const TorusScalar& o)
    {
        v_ = frac(v_ - o.v_);
        return *this;
    }
    friend TorusScalar operator+(TorusScalar x, const TorusScalar& y) { return x += y; }
    friend TorusScalar operator-(TorusScalar x, const TorusScalar& y) { return x -= y; }
    friend TorusScalar operator*(const Integer& n, const TorusScalar& x) { return TorusScalar(Rational(n) * x.v_); }
    friend bool operator==(const TorusScalar& x, const TorusScalar& y) { return x.v_ == y.v_; }
    friend bool operator!=(const TorusScalar& x, const TorusScalar& y) { return !(x == y); }

    std::string str() const { return to_string(v_); }

  private:
    Rational v_{0};
};

class Z2
{
  public:
    Z2() = default;
    Z2(long n) : v_((n % 2) != 0) {}
    explicit Z2(const Integer& n) : v_((n % 2) != 0) {}

    bool bit() const { return v_; }
    Z2 operator-() const { return *this; }
    Z2& operator+=(const Z2& o)
    {
        v_ = v_ != o.v_;
        return *this;
    }
    Z2& operator-=(const Z2& o) { return *this += o; }
    Z2& operator*=(const Z2& o)
    {
        v_ = v_ && o.v_;
        return *this;
    }
    Z2& operator/=(const Z2& o)
    {
        if (!o.v_)
            throw std::domain_error("division by zero in Z/2");
        return *this;
    }
    friend Z2 operator+(Z2 x, const Z2& y) { return x += y; }
    friend Z2 operator-(Z2 x, const Z2& y) { return x -= y; }
    friend Z2 operator*(Z2 x, const Z2& y) { return x *= y; }
    friend Z2 operator/(Z2 x, const Z2& y) { return x /= y; }
    friend bool operator==(const Z2& x, const Z2& y) { return x.v_ == y.v_; }
    friend bool operator!=(const Z2& x, const Z2& y) { return x.v_ != y.v_; }

  private:
    bool v_ = false;
};

// Zero test without building a temporary.
inline bool is_zero_scalar(const Integer& x) { return x.is_zero(); }
inline bool is_zero_scalar(const Rational& x) { return x.is_zero(); }
inline bool is_zero_scalar(const FieldScalar& x) { return x.is_zero(); }
inline bool is_zero_scalar(const TorusScalar& x) { return x.is_zero(); }
inline bool is_zero_scalar(const Z2& x) { return !x.bit(); }

}  // namespace twahss
