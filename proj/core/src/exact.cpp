#include "whittaker/exact.hpp"

#include <cctype>

#include "whittaker/errors.hpp"

namespace whittaker {

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  canonicalize();
}

namespace {

mpq_class parse_rational(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InvalidArgument("malformed exact number '" + std::string(whole) + "'");
  std::string t(s);
  if (t.front() == '+') t.erase(0, 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char c = t[i];
    const bool ok = std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && i == 0) ||
                    (c == '/' && i > 0 && i + 1 < t.size());
    if (!ok) throw InvalidArgument("malformed exact number '" + std::string(whole) + "'");
  }
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw InvalidArgument("malformed exact number '" + std::string(whole) + "'");
  if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + std::string(whole) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InvalidArgument("empty exact number");
  if (s.back() != 'i') return {parse_rational(s, text), 0};
  s.pop_back();
  // Split at the last sign that is not the leading one.
  std::size_t cut = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      cut = i;
      break;
    }
  }
  const std::string re_part = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im_part = cut == std::string::npos ? s : s.substr(cut);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  return {re_part.empty() ? mpq_class(0) : parse_rational(re_part, text), parse_rational(im_part, text)};
}

std::string GaussianRational::str() const {
  if (is_real()) return re_.get_str();
  std::string out = re_ == 0 ? "" : re_.get_str();
  if (im_ > 0 && !out.empty()) out += "+";
  return out + im_.get_str() + "i";
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DomainError("division by zero in exact arithmetic");
  const mpq_class n = re_ * re_ + im_ * im_;
  return {re_ / n, -im_ / n};
}

GaussianRational GaussianRational::pow(long k) const {
  GaussianRational base = k < 0 ? inverse() : *this;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  GaussianRational result(1);
  while (e) {
    if (e & 1ul) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_ == 0 && o.im_ == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (im_ == 0 && o.im_ == 0) {
    if (o.re_ == 0) throw DomainError("division by zero in exact arithmetic");
    re_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

}  // namespace whittaker
