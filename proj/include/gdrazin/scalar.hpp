#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <string>
#include <string_view>

namespace gdrazin {

/// Complex number with arbitrary-precision rational real and imaginary parts.
/// Arithmetic is exact; equality is decidable.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRational i() { return {0, 1}; }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  double abs() const { return std::abs(to_complex()); }

  GaussRational conj() const { return {re_, -im_}; }
  GaussRational inverse() const;

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o) { return *this *= o.inverse(); }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Parses "p/q+r/si" and the usual shorthands: "2", "-1/2", "2i", "-i", "1-3/4i".
  static GaussRational parse(std::string_view text);

  /// Canonical interchange form "p/q+r/si"; the imaginary part is dropped when zero.
  std::string to_canonical() const;
  /// Short human form: "2i", "1/2-3i", "0".
  std::string to_compact() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using ApproxScalar = std::complex<double>;
using ExactScalar = GaussRational;

enum class Backend { exact, approx };

std::string to_string(Backend b);
Backend backend_from_string(std::string_view s);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussRational> {
  static constexpr bool exact = true;
  static constexpr Backend backend = Backend::exact;
  static GaussRational zero() { return {}; }
  static GaussRational one() { return GaussRational{1}; }
  static double magnitude(const GaussRational& s) { return s.abs(); }
  static bool is_zero(const GaussRational& s, double /*eps*/) { return s.is_zero(); }
  static bool is_finite(const GaussRational&) { return true; }
  static GaussRational from_exact(const GaussRational& s) { return s; }
  static std::complex<double> to_complex(const GaussRational& s) { return s.to_complex(); }
};

template <>
struct ScalarTraits<ApproxScalar> {
  static constexpr bool exact = false;
  static constexpr Backend backend = Backend::approx;
  static ApproxScalar zero() { return {0.0, 0.0}; }
  static ApproxScalar one() { return {1.0, 0.0}; }
  static double magnitude(const ApproxScalar& s) { return std::abs(s); }
  static bool is_zero(const ApproxScalar& s, double eps) { return std::abs(s) <= eps; }
  static bool is_finite(const ApproxScalar& s) {
    return std::isfinite(s.real()) && std::isfinite(s.imag());
  }
  static ApproxScalar from_exact(const GaussRational& s) { return s.to_complex(); }
  static std::complex<double> to_complex(const ApproxScalar& s) { return s; }
};

template <class S>
concept Scalar = requires { ScalarTraits<S>::exact; };

template <Scalar S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

}  // namespace gdrazin
