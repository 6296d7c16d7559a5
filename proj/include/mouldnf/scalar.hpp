#ifndef MOULDNF_SCALAR_HPP
#define MOULDNF_SCALAR_HPP

#include <complex>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mouldnf {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

/// Element a + b·i of Q(i). Used for exact mould arithmetic when the
/// frequency vector is rational (letters are then purely imaginary
/// rationals and every recursion stays inside Q(i)).
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long long v) : re_(v), im_(0) {}

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  Complex to_complex() const;

private:
  Rational re_{0};
  Rational im_{0};
};

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// Arithmetic glue so that mould and solver templates run over either
/// double-precision complex numbers or exact Gaussian rationals.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex ratio(long long num, long long den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  static double magnitude(const Complex& z) { return std::abs(z); }
  static Complex to_complex(const Complex& z) { return z; }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational ratio(long long num, long long den) { return {Rational(num, den), Rational(0)}; }
  static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
  static double magnitude(const GaussianRational& z) { return std::abs(z.to_complex()); }
  static Complex to_complex(const GaussianRational& z) { return z.to_complex(); }
};

}  // namespace mouldnf

#endif  // MOULDNF_SCALAR_HPP
