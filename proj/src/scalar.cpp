#include "scalar.hpp"

#include <ostream>

#include "errors.hpp"

namespace vfl {

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar& Scalar::operator*=(const Scalar& o) {
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  mpq_class n = re_ * re_ + im_ * im_;
  return Scalar(re_ / n, -im_ / n);
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Scalar::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_part;
  mpq_class mag = abs(im_);
  if (mag == 1)
    im_part = "i";
  else
    im_part = mag.get_str() + "*i";
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + im_part;
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + im_part;
}

namespace {

mpq_class parse_rational(std::string_view t) {
  if (t.empty()) throw DomainError("empty rational");
  mpq_class q;
  if (q.set_str(std::string(t), 10) != 0) throw DomainError("bad rational '" + std::string(t) + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator");
  q.canonicalize();
  return q;
}

// "i", "3*i", "3/4*i" (without sign)
mpq_class parse_imag_magnitude(std::string_view t) {
  if (t == "i") return 1;
  if (t.size() > 2 && t.substr(t.size() - 2) == "*i") return parse_rational(t.substr(0, t.size() - 2));
  throw DomainError("bad imaginary part '" + std::string(t) + "'");
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw DomainError("empty scalar");
  if (s.back() != 'i') return Scalar(parse_rational(s));
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    bool neg = s[0] == '-';
    std::string_view mag = std::string_view(s).substr((s[0] == '-' || s[0] == '+') ? 1 : 0);
    mpq_class im = parse_imag_magnitude(mag);
    return Scalar(mpq_class(0), neg ? mpq_class(-im) : im);
  }
  mpq_class re = parse_rational(std::string_view(s).substr(0, split));
  mpq_class im = parse_imag_magnitude(std::string_view(s).substr(split + 1));
  if (s[split] == '-') im = -im;
  return Scalar(re, im);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace vfl
