#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ncgeo {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in a signed 64-bit word are held
/// inline; anything larger spills to a GMP rational. The two representations
/// are canonical: a value that fits is never stored in the GMP form, so
/// equality can compare representations directly.
class Rational {
public:
    Rational() = default;
    Rational(int64_t value);  // NOLINT(google-explicit-constructor)
    Rational(int64_t num, int64_t den);
    explicit Rational(const mpq_class& value);

    Rational(const Rational& other);
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& other);
    Rational& operator=(Rational&&) noexcept = default;
    ~Rational() = default;

    /// Parses "a", "-a", or "a/b" (any sign placement GMP accepts).
    static Rational parse(std::string_view text);

    [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
    [[nodiscard]] bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] bool is_small() const { return !big_; }
    [[nodiscard]] int sign() const;

    [[nodiscard]] mpq_class to_mpq() const;
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] mpz_class numerator() const;
    [[nodiscard]] mpz_class denominator() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(const Rational& lhs, const Rational& rhs);
    friend Rational operator/(const Rational& lhs, const Rational& rhs);

    friend bool operator==(const Rational& lhs, const Rational& rhs);
    friend bool operator<(const Rational& lhs, const Rational& rhs);

private:
    void assign_big(mpq_class value);

    int64_t num_ = 0;
    int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace ncgeo
