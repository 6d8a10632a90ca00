#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace freecat {

using Rat = boost::multiprecision::cpp_rational;

// Exact complex-rational scalar. All model comparisons are exact; no
// floating point anywhere.
struct CRat {
  Rat re{0};
  Rat im{0};

  CRat() = default;
  CRat(Rat r) : re(std::move(r)) {}
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  CRat(long r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }
  CRat conj() const { return CRat(re, -im); }

  friend CRat operator+(const CRat& a, const CRat& b) {
    return CRat(a.re + b.re, a.im + b.im);
  }
  friend CRat operator-(const CRat& a, const CRat& b) {
    return CRat(a.re - b.re, a.im - b.im);
  }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  CRat& operator+=(const CRat& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  friend bool operator==(const CRat& a, const CRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }
};

// Canonical "p/q" with q > 0, gcd(p,q) = 1 (cpp_rational keeps this form).
std::string rat_to_string(const Rat& r);
// Strict parse of "p/q" (or a bare integer "p"): rejects q <= 0 and
// non-coprime p/q.
Rat rat_from_string(const std::string& s);

// "a/b" or "a/b+c/d i" / "a/b-c/d i".
std::string crat_to_string(const CRat& c);

} // namespace freecat
