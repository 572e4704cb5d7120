#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace wqed {

/// Complex value stored as mantissa * 2^exponent with |mantissa| in [1,2)
/// (or exactly 0). Keeps the N!-scale intermediates of the closed-form sums
/// inside the representable range while addition stays floating-point exact
/// in the mantissa.
template <class R>
class BasicScaledComplex {
 public:
  using real_type = R;
  using complex_type = std::complex<R>;

  constexpr BasicScaledComplex() = default;
  BasicScaledComplex(complex_type v) : m_(v), e_(0) { normalize(); }
  BasicScaledComplex(R v) : m_(v, R(0)), e_(0) { normalize(); }

  static BasicScaledComplex from_parts(complex_type mantissa, std::int64_t e2) {
    BasicScaledComplex s;
    s.m_ = mantissa;
    s.e_ = e2;
    s.normalize();
    return s;
  }

  bool is_zero() const { return m_ == complex_type{}; }
  complex_type mantissa() const { return m_; }
  std::int64_t exponent2() const { return e_; }

  /// Overflows to inf / underflows to 0 outside the double range.
  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    const double sc = std::ldexp(1.0, static_cast<int>(clamp_exp()));
    return {static_cast<double>(m_.real()) * sc, static_cast<double>(m_.imag()) * sc};
  }

  /// ln|value|; -inf for zero.
  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(static_cast<double>(std::abs(m_))) +
           static_cast<double>(e_) * 0.6931471805599453094;
  }

  friend BasicScaledComplex operator*(const BasicScaledComplex& a, const BasicScaledComplex& b) {
    if (a.is_zero() || b.is_zero()) return {};
    BasicScaledComplex r;
    r.m_ = a.m_ * b.m_;
    r.e_ = a.e_ + b.e_;
    r.normalize();
    return r;
  }

  friend BasicScaledComplex operator*(const BasicScaledComplex& a, complex_type c) {
    return a * BasicScaledComplex(c);
  }
  friend BasicScaledComplex operator*(complex_type c, const BasicScaledComplex& a) {
    return a * BasicScaledComplex(c);
  }
  friend BasicScaledComplex operator*(const BasicScaledComplex& a, R c) {
    return a * BasicScaledComplex(c);
  }
  friend BasicScaledComplex operator*(R c, const BasicScaledComplex& a) {
    return a * BasicScaledComplex(c);
  }

  BasicScaledComplex& operator*=(const BasicScaledComplex& b) { return *this = *this * b; }

  friend BasicScaledComplex operator+(const BasicScaledComplex& a, const BasicScaledComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const BasicScaledComplex& hi = (a.e_ >= b.e_) ? a : b;
    const BasicScaledComplex& lo = (a.e_ >= b.e_) ? b : a;
    const std::int64_t shift = lo.e_ - hi.e_;
    if (shift < -kAlignLimit) return hi;
    BasicScaledComplex r;
    r.m_ = hi.m_ + complex_type(std::ldexp(lo.m_.real(), static_cast<int>(shift)),
                                std::ldexp(lo.m_.imag(), static_cast<int>(shift)));
    r.e_ = hi.e_;
    r.normalize();
    return r;
  }

  friend BasicScaledComplex operator-(const BasicScaledComplex& a, const BasicScaledComplex& b) {
    return a + (-b);
  }
  BasicScaledComplex operator-() const {
    BasicScaledComplex r(*this);
    r.m_ = -r.m_;
    return r;
  }
  BasicScaledComplex& operator+=(const BasicScaledComplex& b) { return *this = *this + b; }
  BasicScaledComplex& operator-=(const BasicScaledComplex& b) { return *this = *this - b; }

  BasicScaledComplex reciprocal() const {
    BasicScaledComplex r;
    r.m_ = complex_type(R(1)) / m_;
    r.e_ = -e_;
    r.normalize();
    return r;
  }

  /// Shift by a power of two (exact).
  BasicScaledComplex ldexp2(std::int64_t k) const {
    if (is_zero()) return {};
    BasicScaledComplex r(*this);
    r.e_ += k;
    return r;
  }

  /// e^z for complex z with arbitrarily large |Re z|.
  static BasicScaledComplex exp(std::complex<double> z) {
    // Cody-Waite split of ln 2 keeps the reduced argument accurate even for
    // exponents of several thousand.
    constexpr double kLn2Hi = 0x1.62e42fee00000p-1;
    constexpr double kLn2Lo = 0x1.a39ef35793c76p-33;
    const double k = std::floor(z.real() * 1.4426950408889634074);
    const double r = (z.real() - k * kLn2Hi) - k * kLn2Lo;
    BasicScaledComplex s;
    const R er = std::exp(static_cast<R>(r));
    s.m_ = complex_type(er * std::cos(static_cast<R>(z.imag())),
                        er * std::sin(static_cast<R>(z.imag())));
    s.e_ = static_cast<std::int64_t>(k);
    s.normalize();
    return s;
  }

  /// b^n by binary powering, n of either sign.
  static BasicScaledComplex pow_int(const BasicScaledComplex& b, std::int64_t n) {
    if (n == 0) return BasicScaledComplex(R(1));
    BasicScaledComplex base = (n > 0) ? b : b.reciprocal();
    std::uint64_t k = static_cast<std::uint64_t>(n > 0 ? n : -n);
    BasicScaledComplex acc(R(1));
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }
  static BasicScaledComplex pow_int(complex_type b, std::int64_t n) {
    return pow_int(BasicScaledComplex(b), n);
  }

  /// n! as a scaled value.
  static BasicScaledComplex factorial(int n) {
    BasicScaledComplex acc(R(1));
    for (int i = 2; i <= n; ++i) acc *= BasicScaledComplex(R(i));
    return acc;
  }

 private:
  static constexpr std::int64_t kAlignLimit = 1100;

  std::int64_t clamp_exp() const {
    if (e_ > 1100) return 1100;   // ldexp saturates to inf anyway
    if (e_ < -1200) return -1200; // underflow to 0
    return e_;
  }

  void normalize() {
    if (m_ == complex_type{}) {
      e_ = 0;
      return;
    }
    const R am = std::abs(m_);
    if (!(am > R(0)) || !std::isfinite(static_cast<double>(am))) return;
    const int sh = std::ilogb(am);
    if (sh != 0) {
      m_ = complex_type(std::ldexp(m_.real(), -sh), std::ldexp(m_.imag(), -sh));
      e_ += sh;
    }
  }

  complex_type m_{};
  std::int64_t e_ = 0;
};

using ScaledComplex = BasicScaledComplex<double>;
using ScaledComplexL = BasicScaledComplex<long double>;

/// Ordered sum with pairwise rescaling to the largest exponent. Bitwise
/// deterministic for a fixed input order.
template <class R>
BasicScaledComplex<R> scaled_combine(std::span<const BasicScaledComplex<R>> terms) {
  BasicScaledComplex<R> acc;
  for (const auto& t : terms) acc += t;
  return acc;
}

inline ScaledComplex scaled_combine(const std::vector<ScaledComplex>& terms) {
  return scaled_combine(std::span<const ScaledComplex>(terms));
}

}  // namespace wqed
