#include "setmeans/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace setmeans {

Rational::Rational(long num, long den)
{
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::fromInts(const mpz_class& num, const mpz_class& den)
{
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
}

Rational Rational::parse(std::string_view text)
{
    auto digits = [](std::string_view s) {
        if (s.empty()) {
            return false;
        }
        for (char c : s) {
            if (c < '0' || c > '9') {
                return false;
            }
        }
        return true;
    };
    std::string_view body = text;
    bool neg = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view n = body.substr(0, slash);
    std::string_view d = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits(n) || !digits(d)) {
        throw std::invalid_argument("malformed rational: " + std::string(text));
    }
    mpz_class num(std::string(n), 10);
    mpz_class den(std::string(d), 10);
    if (den == 0) {
        throw std::invalid_argument("zero denominator: " + std::string(text));
    }
    if (neg) {
        num = -num;
    }
    return fromInts(num, den);
}

std::string Rational::str() const
{
    if (isInteger()) {
        return numString();
    }
    return numString() + "/" + denString();
}

Rational Rational::inverse() const
{
    if (isZero()) {
        throw std::domain_error("inverse of zero");
    }
    return fromInts(q_.get_den(), q_.get_num());
}

Rational Rational::pow(unsigned long e) const
{
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
    mpq_class r(n, d);
    return Rational(r);
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.isZero()) {
        throw std::domain_error("division by zero");
    }
    q_ /= o.q_;
    return *this;
}

std::size_t Rational::hash() const
{
    std::size_t h = std::hash<std::string>{}(numString());
    return h ^ (std::hash<std::string>{}(denString()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

namespace {

Rational floorOf(const Rational& x)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
    return Rational::fromInts(f, 1);
}

} // namespace

Rational simplestBetween(const Rational& lo, const Rational& hi)
{
    if (hi < lo) {
        return simplestBetween(hi, lo);
    }
    if (lo.sign() <= 0 && hi.sign() >= 0) {
        return Rational(0);
    }
    if (hi.sign() < 0) {
        return -simplestBetween(-hi, -lo);
    }
    Rational fl = floorOf(lo);
    if (fl == lo) {
        return lo;
    }
    if (fl + 1 <= hi) {
        return fl + 1;
    }
    return fl + simplestBetween((hi - fl).inverse(), (lo - fl).inverse()).inverse();
}

Rational fromDouble(double value)
{
    if (!std::isfinite(value)) {
        throw std::domain_error("non-finite value");
    }
    mpq_class q(value);
    return Rational(q);
}

Rational approximate(double value, double tol)
{
    Rational c = fromDouble(value);
    Rational t = fromDouble(std::fabs(tol));
    return simplestBetween(c - t, c + t);
}

} // namespace setmeans
