#include "mouldnf/scalar.hpp"

#include <stdexcept>

namespace mouldnf {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational den = o.re_ * o.re_ + o.im_ * o.im_;
  if (den == 0) throw std::domain_error("division by zero in Q(i)");
  Rational r = (re_ * o.re_ + im_ * o.im_) / den;
  Rational i = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Complex GaussianRational::to_complex() const {
  return {static_cast<double>(re_), static_cast<double>(im_)};
}

std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

}  // namespace mouldnf
