#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_complex.hpp>

namespace invariety {

using cplx = std::complex<double>;
// Extended-precision complex types (50 and 100 significant decimal digits).
using cplx50 = boost::multiprecision::cpp_complex_50;
using cplx100 = boost::multiprecision::cpp_complex_100;

enum class Precision { Double, Digits50, Digits100 };

Precision precision_from_bits(int bits);
std::string to_string(Precision p);

template <class C>
struct complex_traits {
  using real = typename C::value_type;
};
template <class B, boost::multiprecision::expression_template_option E>
struct complex_traits<boost::multiprecision::number<B, E>> {
  using real = typename boost::multiprecision::component_type<boost::multiprecision::number<B, E>>::type;
};

template <class C>
using real_t = typename complex_traits<C>::real;

template <class C>
C from_cplx(cplx z) {
  return C(z.real(), z.imag());
}

template <class C>
cplx to_cplx(const C& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class C>
double mag(const C& z) {
  using std::abs;
  return static_cast<double>(abs(z));
}

// Parses "re+imi" forms such as "0.5-0.25i", "2", "-1.5i", "i".
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

}  // namespace invariety
