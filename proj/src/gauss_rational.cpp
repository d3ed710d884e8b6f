#include "hkt/gauss_rational.hpp"

#include "hkt/errors.hpp"

namespace hkt {

GaussRational GaussRational::frac(long long num, long long den)
{
    require(den != 0, "zero denominator");
    return {Rational(num, den)};
}

GaussRational GaussRational::inverse() const
{
    require(!is_zero(), "division by zero in GaussRational");
    const Rational n = re_ * re_ + im_ * im_;
    return {re_ / n, -im_ / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o)
{
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) { return *this *= o.inverse(); }

std::complex<double> GaussRational::to_complex() const
{
    return {re_.convert_to<double>(), im_.convert_to<double>()};
}

namespace {

std::string rat_str(const Rational& r) { return r.str(); }

}  // namespace

std::string GaussRational::str() const
{
    if (im_ == 0) return rat_str(re_);
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = rat_str(im_) + "i";
    if (re_ == 0) return imag;
    return "(" + rat_str(re_) + (im_ > 0 ? "+" : "") + imag + ")";
}

}  // namespace hkt
