#pragma once

#include <iosfwd>
#include <string>

#include "ncgeo/rational.hpp"

namespace ncgeo {

/// An element a + b·i of the Gaussian rationals Q(i). This is the coefficient
/// field for every computation in the library; nothing is ever rounded.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int64_t re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    [[nodiscard]] const Rational& real() const { return re_; }
    [[nodiscard]] const Rational& imag() const { return im_; }

    [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    [[nodiscard]] bool is_one() const { return re_.is_one() && im_.is_zero(); }
    /// True for the four units ±1, ±i.
    [[nodiscard]] bool is_unit() const;
    [[nodiscard]] bool is_gaussian_integer() const { return re_.is_integer() && im_.is_integer(); }

    [[nodiscard]] GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2 = a^2 + b^2.
    [[nodiscard]] Rational norm() const { return re_ * re_ + im_ * im_; }
    [[nodiscard]] GaussianRational inverse() const;

    [[nodiscard]] std::string to_string() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& rhs) {
        re_ += rhs.re_;
        im_ += rhs.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& rhs) {
        re_ -= rhs.re_;
        im_ -= rhs.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& rhs) { return *this = *this * rhs; }
    GaussianRational& operator/=(const GaussianRational& rhs) { return *this = *this / rhs; }

    friend GaussianRational operator+(GaussianRational lhs, const GaussianRational& rhs) { return lhs += rhs; }
    friend GaussianRational operator-(GaussianRational lhs, const GaussianRational& rhs) { return lhs -= rhs; }
    friend GaussianRational operator*(const GaussianRational& lhs, const GaussianRational& rhs);
    friend GaussianRational operator/(const GaussianRational& lhs, const GaussianRational& rhs) {
        return lhs * rhs.inverse();
    }
    friend bool operator==(const GaussianRational& lhs, const GaussianRational& rhs) {
        return lhs.re_ == rhs.re_ && lhs.im_ == rhs.im_;
    }

private:
    Rational re_;
    Rational im_;
};

using GR = GaussianRational;

std::ostream& operator<<(std::ostream& os, const GaussianRational& value);

}  // namespace ncgeo
