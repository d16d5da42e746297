#include "ncgeo/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace ncgeo {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr int64_t kSmallMax = std::numeric_limits<int64_t>::max();

bool fits(i128 v) { return v <= kSmallMax && v >= -static_cast<i128>(kSmallMax); }

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

uint64_t gcd64(uint64_t a, uint64_t b) {
    while (b != 0) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

uint64_t abs64(int64_t v) { return v < 0 ? static_cast<uint64_t>(-v) : static_cast<uint64_t>(v); }

mpz_class to_mpz(i128 v) {
    const bool neg = v < 0;
    u128 mag = abs128(v);
    mpz_class hi = static_cast<unsigned long>(static_cast<uint64_t>(mag >> 64));
    mpz_class lo = static_cast<unsigned long>(static_cast<uint64_t>(mag));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
}

// Returns true and fills out if z fits the small range.
bool mpz_to_small(const mpz_class& z, int64_t& out) {
    if (!mpz_fits_slong_p(z.get_mpz_t())) return false;
    long v = z.get_si();
    if (v == std::numeric_limits<long>::min()) return false;
    out = v;
    return true;
}

}  // namespace

Rational::Rational(int64_t value) {
    if (value == std::numeric_limits<int64_t>::min()) {
        assign_big(mpq_class(mpz_class(to_mpz(value))));
    } else {
        num_ = value;
    }
}

Rational::Rational(int64_t num, int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    i128 n = num;
    i128 d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(abs128(n), static_cast<u128>(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    if (fits(n) && fits(d)) {
        num_ = static_cast<int64_t>(n);
        den_ = static_cast<int64_t>(d);
    } else {
        mpq_class q(to_mpz(n), to_mpz(d));
        q.canonicalize();
        assign_big(std::move(q));
    }
}

Rational::Rational(const mpq_class& value) {
    mpq_class q(value);
    q.canonicalize();
    assign_big(std::move(q));
}

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
    if (this != &other) {
        num_ = other.num_;
        den_ = other.den_;
        big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
}

void Rational::assign_big(mpq_class value) {
    int64_t n = 0;
    int64_t d = 1;
    if (mpz_to_small(value.get_num(), n) && mpz_to_small(value.get_den(), d)) {
        num_ = n;
        den_ = d;
        big_.reset();
        return;
    }
    num_ = 0;
    den_ = 1;
    if (big_) {
        *big_ = std::move(value);
    } else {
        big_ = std::make_unique<mpq_class>(std::move(value));
    }
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    Rational r;
    r.assign_big(std::move(q));
    return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const {
    return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
    return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

std::string Rational::to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.assign_big(mpq_class(-*big_));
    } else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (den_ == 1 && rhs.den_ == 1) {
            i128 s = static_cast<i128>(num_) + rhs.num_;
            if (fits(s)) {
                num_ = static_cast<int64_t>(s);
                return *this;
            }
        } else {
            i128 n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
            i128 d = static_cast<i128>(den_) * rhs.den_;
            u128 g = gcd128(abs128(n), static_cast<u128>(d));
            if (g > 1) {
                n /= static_cast<i128>(g);
                d /= static_cast<i128>(g);
            }
            if (n == 0) {
                num_ = 0;
                den_ = 1;
                return *this;
            }
            if (fits(n) && fits(d)) {
                num_ = static_cast<int64_t>(n);
                den_ = static_cast<int64_t>(d);
                return *this;
            }
        }
    }
    assign_big(to_mpq() + rhs.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    if (!rhs.big_) {
        if (rhs.num_ == 0) return *this;
        Rational neg;
        neg.num_ = -rhs.num_;
        neg.den_ = rhs.den_;
        return *this += neg;
    }
    assign_big(to_mpq() - rhs.to_mpq());
    return *this;
}

Rational operator*(const Rational& lhs, const Rational& rhs) {
    Rational r;
    if (!lhs.big_ && !rhs.big_) {
        if (lhs.num_ == 0 || rhs.num_ == 0) return r;
        uint64_t g1 = gcd64(abs64(lhs.num_), static_cast<uint64_t>(rhs.den_));
        uint64_t g2 = gcd64(abs64(rhs.num_), static_cast<uint64_t>(lhs.den_));
        i128 n = static_cast<i128>(lhs.num_ / static_cast<int64_t>(g1)) *
                 (rhs.num_ / static_cast<int64_t>(g2));
        i128 d = static_cast<i128>(lhs.den_ / static_cast<int64_t>(g2)) *
                 (rhs.den_ / static_cast<int64_t>(g1));
        if (fits(n) && fits(d)) {
            r.num_ = static_cast<int64_t>(n);
            r.den_ = static_cast<int64_t>(d);
            return r;
        }
    }
    r.assign_big(lhs.to_mpq() * rhs.to_mpq());
    return r;
}

Rational operator/(const Rational& lhs, const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
    Rational inv;
    if (!rhs.big_) {
        inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
        inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
    } else {
        inv.assign_big(mpq_class(1) / *rhs.big_);
    }
    return lhs * inv;
}

Rational& Rational::operator*=(const Rational& rhs) { return *this = *this * rhs; }
Rational& Rational::operator/=(const Rational& rhs) { return *this = *this / rhs; }

bool operator==(const Rational& lhs, const Rational& rhs) {
    if (!lhs.big_ && !rhs.big_) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
    if (lhs.big_ && rhs.big_) return *lhs.big_ == *rhs.big_;
    return false;  // canonical forms differ in size class
}

bool operator<(const Rational& lhs, const Rational& rhs) {
    if (!lhs.big_ && !rhs.big_) {
        return static_cast<i128>(lhs.num_) * rhs.den_ < static_cast<i128>(rhs.num_) * lhs.den_;
    }
    return lhs.to_mpq() < rhs.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

}  // namespace ncgeo
