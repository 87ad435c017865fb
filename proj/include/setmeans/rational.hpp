#ifndef SETMEANS_RATIONAL_HPP
#define SETMEANS_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace setmeans {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(static_cast<long>(v)) {}
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p", "-p" or "p/q" (q > 0). Throws std::invalid_argument.
    static Rational parse(std::string_view text);
    static Rational fromInts(const mpz_class& num, const mpz_class& den);

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    std::string numString() const { return q_.get_num().get_str(); }
    std::string denString() const { return q_.get_den().get_str(); }
    std::string str() const;
    double toDouble() const { return q_.get_d(); }

    int sign() const { return sgn(q_); }
    bool isZero() const { return sign() == 0; }
    bool isInteger() const { return q_.get_den() == 1; }

    Rational abs() const { return Rational(::abs(q_)); }
    Rational inverse() const;
    Rational pow(unsigned long e) const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::size_t hash() const;

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplestBetween(const Rational& lo, const Rational& hi);

/// Simplest rational within `tol` of a double value.
Rational approximate(double value, double tol);

/// Exact conversion of a finite double.
Rational fromDouble(double value);

} // namespace setmeans

template <>
struct std::hash<setmeans::Rational> {
    std::size_t operator()(const setmeans::Rational& r) const noexcept { return r.hash(); }
};

#endif
