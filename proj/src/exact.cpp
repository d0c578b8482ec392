#include "hkt/exact.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace hkt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  mpz_class num = parse_integer(trim(s.substr(0, slash)));
  mpz_class den = parse_integer(trim(s.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  const bool ar = a.is_real();
  const bool br = b.is_real();
  if (ar && br) return Scalar(a.re_ * b.re_);
  if (ar) return Scalar(a.re_ * b.re_, a.re_ * b.im_);
  if (br) return Scalar(a.re_ * b.re_, a.im_ * b.re_);
  return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
  if (o.is_real()) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  Rational d = o.norm2();
  *this = *this * o.conj();
  re_ /= d;
  im_ /= d;
  return *this;
}

std::string Scalar::to_string() const {
  if (is_real()) return format_rational(re_);
  std::string imag_part;
  if (im_ == 1)
    imag_part = "i";
  else if (im_ == -1)
    imag_part = "-i";
  else
    imag_part = format_rational(im_) + "*i";
  if (sgn(re_) == 0) return imag_part;
  if (sgn(im_) > 0) return format_rational(re_) + "+" + imag_part;
  return format_rational(re_) + imag_part;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar parse_scalar(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty scalar");
  if (s.back() != 'i') return Scalar(parse_rational(s));
  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();
  std::size_t split = 0;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  const std::string re = s.substr(0, split), im = s.substr(split);
  Rational imag;
  if (im.empty() || im == "+")
    imag = 1;
  else if (im == "-")
    imag = -1;
  else
    imag = parse_rational(im);
  return Scalar(re.empty() ? Rational(0) : parse_rational(re), imag);
}

ExactMatrix identity(Eigen::Index n) {
  ExactMatrix m = ExactMatrix::Constant(n, n, Scalar(0));
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

ExactMatrix zeros(Eigen::Index rows, Eigen::Index cols) {
  return ExactMatrix::Constant(rows, cols, Scalar(0));
}

ExactVector zero_vector(Eigen::Index n) { return ExactVector::Constant(n, Scalar(0)); }

ExactVector unit_vector(Eigen::Index n, Eigen::Index k) {
  ExactVector v = zero_vector(n);
  v(k) = Scalar(1);
  return v;
}

std::string to_string(const ExactVector& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ")";
  return os.str();
}

}  // namespace hkt
