#include "hermlag/rational.hpp"

#include <cctype>

namespace hermlag {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto bad = [&] { return std::invalid_argument("not a rational: '" + std::string(text) + "'"); };

    Rational q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw bad();
        const mpz_class d{std::string(den), 10};
        if (d == 0) throw bad();
        q = Rational(mpz_class{std::string(num), 10}, d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw bad();
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) throw bad();
        std::string digits = std::string(whole) + std::string(frac);
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        q = Rational(mpz_class(digits, 10), den);
    } else {
        if (!all_digits(s)) throw bad();
        q = Rational(mpz_class{std::string(s), 10});
    }
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    if (o.is_zero()) throw std::domain_error("GaussRational division by zero");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
    Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
    Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string to_string(const GaussRational& z) {
    if (z.is_real()) return to_string(z.re());
    if (sgn(z.re()) == 0) return to_string(z.im()) + "i";
    std::string im = to_string(z.im());
    if (im.front() != '-') im = "+" + im;
    return to_string(z.re()) + im + "i";
}

}  // namespace hermlag
