#include "ncgeo/gaussian_rational.hpp"

#include <ostream>
#include <stdexcept>

namespace ncgeo {

bool GaussianRational::is_unit() const {
    if (im_.is_zero()) return re_.is_one() || (-re_).is_one();
    if (re_.is_zero()) return im_.is_one() || (-im_).is_one();
    return false;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
    if (im_.is_zero()) return {Rational(1) / re_, Rational(0)};
    Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational operator*(const GaussianRational& lhs, const GaussianRational& rhs) {
    if (lhs.im_.is_zero() && rhs.im_.is_zero()) return {lhs.re_ * rhs.re_, Rational(0)};
    if (lhs.im_.is_zero()) return {lhs.re_ * rhs.re_, lhs.re_ * rhs.im_};
    if (rhs.im_.is_zero()) return {lhs.re_ * rhs.re_, lhs.im_ * rhs.re_};
    return {lhs.re_ * rhs.re_ - lhs.im_ * rhs.im_, lhs.re_ * rhs.im_ + lhs.im_ * rhs.re_};
}

std::string GaussianRational::to_string() const {
    if (im_.is_zero()) return re_.to_string();
    if (re_.is_zero()) return im_.to_string() + "i";
    std::string im = im_.to_string();
    if (im.front() != '-') im = "+" + im;
    return re_.to_string() + im + "i";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& value) { return os << value.to_string(); }

}  // namespace ncgeo
