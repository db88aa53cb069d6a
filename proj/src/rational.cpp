#include "snn/rational.hpp"

#include <cctype>

namespace snn {

Int floor_rat(const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  Int d = num / den;
  if (num < 0 && d * den != num) --d;
  return d;
}

std::optional<Rat> parse_decimal(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  std::string digits;
  std::size_t frac_digits = 0;
  bool saw_digit = false, saw_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      saw_digit = true;
      if (saw_point) ++frac_digits;
    } else if (c == '.' && !saw_point) {
      saw_point = true;
    } else {
      return std::nullopt;
    }
  }
  if (!saw_digit) return std::nullopt;
  // A leading zero would make the bigint constructor read the rest as octal.
  std::size_t nz = digits.find_first_not_of('0');
  Int num(nz == std::string::npos ? "0" : digits.substr(nz));
  Int den = 1;
  for (std::size_t k = 0; k < frac_digits; ++k) den *= 10;
  if (neg) num = -num;
  return Rat(num, den);
}

std::optional<std::string> to_exact_decimal(const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  // Scale den up to a power of 10; fails if den has other prime factors.
  unsigned twos = 0, fives = 0;
  Int d = den;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::nullopt;
  unsigned digits = std::max(twos, fives);
  Int scale = 1;
  for (unsigned k = twos; k < digits; ++k) scale *= 2;
  for (unsigned k = fives; k < digits; ++k) scale *= 5;
  Int scaled = num * scale;  // q == scaled / 10^digits
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.str();
  std::string out;
  if (digits == 0) {
    out = s;
  } else {
    while (s.size() <= digits) s.insert(s.begin(), '0');
    out = s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
  }
  if (neg) out.insert(out.begin(), '-');
  return out;
}

double to_double(const Rat& q) { return q.convert_to<double>(); }

}  // namespace snn
