#include "cubei/rational.hpp"

#include <cctype>

namespace cubei {

std::optional<Rational> rat_parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    const auto is_int = [](std::string_view t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    const auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpz_class p(std::string(num), 10), q(std::string(den), 10);
    if (q == 0) return std::nullopt;
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational half_pow(unsigned e) {
    mpz_class den = 1;
    den <<= e;
    Rational r(1, den);
    r.canonicalize();
    return r;
}

Rational neg_half_pow(unsigned e) {
    Rational r = half_pow(e);
    if (e & 1u) r = -r;
    return r;
}

Rational binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

}  // namespace cubei
