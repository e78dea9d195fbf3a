#pragma once

// Exact rational scalars. Everything in this library is computed over Q;
// floating point is never used. Backed by GMP, kept canonical (reduced,
// positive denominator) at all times.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hochlab {

class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den)
    {
        if (den == 0)
            throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class &q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class &z) : v_(z) {}

    // Accepts "p", "-p", "p/q" with optional sign on p.
    static Rational parse(std::string_view s)
    {
        try {
            mpq_class q(std::string(s), 10);
            q.canonicalize();
            return Rational(q);
        } catch (const std::invalid_argument &) {
            throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
        }
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
    Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
    Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero())
            throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational &a, const Rational &b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational &a, const Rational &b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational &a, const Rational &b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational &a, const Rational &b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational &a, const Rational &b) { return a.v_ >= b.v_; }

    // "p" when the denominator is 1, otherwise "p/q".
    std::string str() const
    {
        return v_.get_str();
    }

    const mpq_class &raw() const { return v_; }

    static Rational factorial(unsigned n)
    {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), n);
        return Rational(f);
    }

    static Rational binomial(unsigned long n, unsigned long k)
    {
        if (k > n)
            return Rational();
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), n, k);
        return Rational(b);
    }

  private:
    mpq_class v_;
};

inline int cmp(const Rational &a, const Rational &b)
{
    return ::cmp(a.raw(), b.raw());
}

} // namespace hochlab
