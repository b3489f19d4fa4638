#include "traceq/rational.hpp"

#include <charconv>
#include <numeric>

namespace traceq {

namespace {

std::int64_t parse_int(std::string_view text, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument(std::string("bad ") + what + ": '" + std::string(text) + "'");
  return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), "numerator"),
                    parse_int(text.substr(slash + 1), "denominator"));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty()) throw std::invalid_argument("bad decimal: '" + std::string(text) + "'");
    if (frac.size() > 15) throw std::invalid_argument("decimal too precise for exact parse");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::int64_t w = whole.empty() ? 0 : parse_int(whole, "integer part");
    std::int64_t f = parse_int(frac, "fractional part");
    if (f < 0) throw std::invalid_argument("bad decimal: '" + std::string(text) + "'");
    bool neg = !whole.empty() && whole[0] == '-';
    std::int64_t num = w * scale + (neg ? -f : f);
    return Rational(num, scale);
  }
  return Rational(parse_int(text, "integer"));
}

}  // namespace traceq
