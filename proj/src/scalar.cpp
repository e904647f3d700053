#include "gdrazin/scalar.hpp"

#include <cctype>

#include "gdrazin/errors.hpp"

namespace gdrazin {

GaussRational GaussRational::inverse() const {
  mpq_class norm = re_ * re_ + im_ * im_;
  if (sgn(norm) == 0) throw ValueError("division by zero Gaussian rational");
  return {re_ / norm, -im_ / norm};
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

namespace {

// Parses an optionally signed rational "p", "p/q" at the front of `s`.
bool parse_rational(std::string_view& s, mpq_class& out, bool allow_empty_as_one) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::string& dst) {
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) dst += s[pos++];
  };
  std::string num;
  digits(num);
  std::string den;
  if (pos < s.size() && s[pos] == '/') {
    if (num.empty()) return false;
    ++pos;
    digits(den);
    if (den.empty()) return false;
  }
  if (num.empty()) {
    if (!allow_empty_as_one) return false;
    num = "1";
  }
  mpz_class n(num), d(den.empty() ? std::string("1") : den);
  if (d == 0) throw ParseError("zero denominator in scalar");
  out = mpq_class(n, d);
  out.canonicalize();
  if (neg) out = -out;
  s.remove_prefix(pos);
  return true;
}

}  // namespace

GaussRational GaussRational::parse(std::string_view text) {
  std::string cleaned;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) cleaned += ch;
  // "p/q+-r/si" is legal in the interchange format; fold doubled signs.
  for (std::size_t k = 0; k + 1 < cleaned.size();) {
    char a = cleaned[k], b = cleaned[k + 1];
    if ((a == '+' || a == '-') && (b == '+' || b == '-')) {
      cleaned.replace(k, 2, 1, a == b ? '+' : '-');
    } else {
      ++k;
    }
  }
  std::string_view s = cleaned;
  if (s.empty()) throw ParseError("empty scalar");
  auto fail = [&] { return ParseError("malformed scalar '" + std::string(text) + "'"); };

  // A trailing 'i' means the last term is imaginary.
  if (s.back() == 'i') {
    std::string_view body = s.substr(0, s.size() - 1);
    // Find the sign that starts the imaginary term (not at position 0, not after '/').
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if (body[k] == '+' || body[k] == '-') {
        split = k;
        break;
      }
    }
    mpq_class re = 0, im = 0;
    std::string_view im_part = body;
    if (split != std::string_view::npos) {
      std::string_view re_part = body.substr(0, split);
      im_part = body.substr(split);
      if (!parse_rational(re_part, re, false) || !re_part.empty()) throw fail();
    }
    if (!parse_rational(im_part, im, true) || !im_part.empty()) throw fail();
    return {re, im};
  }
  mpq_class re;
  if (!parse_rational(s, re, false) || !s.empty()) throw fail();
  return {re, 0};
}

std::string GaussRational::to_canonical() const {
  auto frac = [](const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  };
  std::string out = frac(re_);
  if (sgn(im_) != 0) {
    out += sgn(im_) < 0 ? "-" : "+";
    out += frac(::abs(im_)) + "i";
  }
  return out;
}

std::string GaussRational::to_compact() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_mag = ::abs(im_) == 1 ? std::string() : mpq_class(::abs(im_)).get_str();
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + im_mag + "i";
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + im_mag + "i";
}

std::string to_string(Backend b) { return b == Backend::exact ? "exact" : "approx"; }

Backend backend_from_string(std::string_view s) {
  if (s == "exact") return Backend::exact;
  if (s == "approx") return Backend::approx;
  throw ParseError("unknown backend '" + std::string(s) + "'");
}

}  // namespace gdrazin
