#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "cubei/rational.hpp"

namespace cubei {

// Unary variable transforms phi_i used by pseudo-multilinear and
// multiplicative function classes.
struct Identity {
    friend bool operator==(const Identity&, const Identity&) = default;
};

// t^c with c >= 0 (c = 0 is the constant 1).
struct Power {
    Rational exponent;
    friend bool operator==(const Power&, const Power&) = default;
};

// p*t + q.
struct Affine {
    Rational slope;
    Rational intercept;
    friend bool operator==(const Affine&, const Affine&) = default;
};

// Piecewise-linear with explicit knots (t, phi(t)); t strictly increasing,
// first knot at 0 and last at 1. Moments are exact per segment.
struct Tabulated {
    std::vector<std::pair<Rational, Rational>> knots;
    friend bool operator==(const Tabulated&, const Tabulated&) = default;
};

using UnaryTransform = std::variant<Identity, Power, Affine, Tabulated>;

inline void validate_unary(const UnaryTransform& u) {
    if (const auto* p = std::get_if<Power>(&u)) {
        if (p->exponent < 0) throw std::invalid_argument("Power transform requires exponent >= 0");
    } else if (const auto* t = std::get_if<Tabulated>(&u)) {
        if (t->knots.size() < 2) throw std::invalid_argument("Tabulated transform needs at least two knots");
        if (t->knots.front().first != 0 || t->knots.back().first != 1)
            throw std::invalid_argument("Tabulated transform must cover [0,1]");
        for (std::size_t i = 1; i < t->knots.size(); ++i)
            if (!(t->knots[i - 1].first < t->knots[i].first))
                throw std::invalid_argument("Tabulated knots must be strictly increasing");
    }
}

double unary_eval(const UnaryTransform& u, double t);

// True when phi is constant on [0,1]; such a variable is ineffective.
bool unary_is_constant(const UnaryTransform& u);

// True for transforms with continuous derivatives on ]0,1[ (Tabulated is
// kinked at interior knots).
bool unary_is_smooth(const UnaryTransform& u);

}  // namespace cubei
