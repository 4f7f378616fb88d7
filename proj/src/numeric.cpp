#include "invariety/numeric.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "invariety/error.hpp"

namespace invariety {

Precision precision_from_bits(int bits) {
  if (bits <= 53) return Precision::Double;
  if (bits <= 166) return Precision::Digits50;
  if (bits <= 332) return Precision::Digits100;
  throw UsageError("precision above 332 bits is not supported");
}

std::string to_string(Precision p) {
  switch (p) {
    case Precision::Double:
      return "double";
    case Precision::Digits50:
      return "50-digit";
    case Precision::Digits100:
      return "100-digit";
  }
  return "?";
}

namespace {

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  }
  if (text.empty()) throw ParseError("empty complex number");
  if (text.back() != 'i' && text.back() != 'j') {
    double re = 0;
    if (!parse_real(text, re)) throw ParseError("bad complex number '" + raw + "'");
    return {re, 0.0};
  }
  text.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : text.substr(0, split);
  std::string im_part = split == std::string::npos ? text : text.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  double re = 0, im = 0;
  if (!re_part.empty() && !parse_real(re_part, re)) throw ParseError("bad complex number '" + raw + "'");
  if (!parse_real(im_part, im)) throw ParseError("bad complex number '" + raw + "'");
  return {re, im};
}

std::string format_complex(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace invariety
