#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hkt {

using Rational = boost::multiprecision::cpp_rational;

// Exact element of Q(i).
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRational i() { return {0, 1}; }
    static GaussRational frac(long long num, long long den);

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }

    GaussRational conj() const { return {re_, -im_}; }
    GaussRational inverse() const;

    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    std::complex<double> to_complex() const;
    // "3/2", "-i", "(1/2+3i)"
    std::string str() const;

private:
    Rational re_, im_;
};

}  // namespace hkt
